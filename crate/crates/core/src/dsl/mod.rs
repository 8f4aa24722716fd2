//! The stroke-program language.
//!
//! Scripts are line-oriented: declare regions, bind paint states, build
//! words with `(x)`, apply strokes and braids, then `render`, `print` or
//! `check laws`. Lexing, parsing and evaluation are separate phases, so a
//! script with an undeclared region parses fine and fails when run.

pub mod ast;
mod eval;
mod lexer;
mod parser;
mod pretty;

use std::fmt;

use thiserror::Error;

pub use ast::{GenExpr, Script, Span, Statement, Stmt, WordExpr};
pub use eval::{eval_script, EvalOptions, Execution, Output};
pub use lexer::{tokenize, Keyword, Token, TokenKind};
pub use parser::{parse, MAX_ERRORS};
pub use pretty::pretty_print;

/// The bundled quickstart script.
pub const QUICKSTART: &str = include_str!("../../examples/quickstart.paint");

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct LexError {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
}

/// All errors from one parse, in source order.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseErrors(pub Vec<ParseError>);

impl fmt::Display for ParseErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct EvalError {
    pub message: String,
    pub line: usize,
    pub column: usize,
    /// Range of the statement that failed.
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("lexical error at {0}")]
    Lex(#[from] LexError),
    #[error("{0}")]
    Parse(#[from] ParseErrors),
    #[error("evaluation error at {0}")]
    Eval(#[from] EvalError),
}

/// Tokenizes and parses source text.
pub fn parse_source(text: &str) -> Result<Script, DslError> {
    let tokens = tokenize(text)?;
    Ok(parse(&tokens)?)
}

/// Parses and runs source text.
pub fn run_source(text: &str, opts: &EvalOptions) -> Result<Execution, DslError> {
    let script = parse_source(text)?;
    Ok(eval_script(&script, opts)?)
}
