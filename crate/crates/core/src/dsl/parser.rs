use std::str::FromStr;

use super::ast::{GenExpr, Script, Span, Statement, Stmt, WordExpr};
use super::lexer::{Keyword, Token, TokenKind};
use super::{ParseError, ParseErrors};
use crate::color::{Color, Texture};

/// Parsing stops collecting after this many errors.
pub const MAX_ERRORS: usize = 10;

const STATEMENT_STARTS: [&str; 9] = ["region", "state", "word", "stroke", "apply", "braid", "check", "render", "print"];
const TEXTURE_NAMES: [&str; 4] = ["smooth", "stippled", "impasto", "transparent"];

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'t> Parser<'t> {
    fn peek(&self) -> &'t Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn advance(&mut self) -> &'t Token {
        let tok = self.peek();
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        tok
    }

    fn error_here(&self, what: &str, expected: &[&str]) -> ParseError {
        let tok = self.peek();
        ParseError {
            message: format!("expected {what}, found {}", tok.kind),
            line: tok.line,
            column: tok.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn keyword(&mut self, kw: Keyword) -> PResult<&'t Token> {
        if self.peek().kind == TokenKind::Keyword(kw) {
            Ok(self.advance())
        } else {
            Err(self.error_here(&format!("`{}`", kw.as_str()), &[kw.as_str()]))
        }
    }

    fn eat_keyword(&mut self, kw: Keyword) -> bool {
        let hit = self.peek().kind == TokenKind::Keyword(kw);
        if hit {
            self.advance();
        }
        hit
    }

    fn ident(&mut self) -> PResult<String> {
        match &self.peek().kind {
            TokenKind::Ident(name) => {
                self.advance();
                Ok(name.clone())
            }
            _ => Err(self.error_here("an identifier", &["identifier"])),
        }
    }

    fn int(&mut self) -> PResult<u64> {
        match self.peek().kind {
            TokenKind::Int(n) => {
                self.advance();
                Ok(n)
            }
            _ => Err(self.error_here("an integer", &["integer"])),
        }
    }

    fn punct(&mut self, kind: TokenKind, expected: &str) -> PResult<()> {
        if self.peek().kind == kind {
            self.advance();
            Ok(())
        } else {
            Err(self.error_here(&format!("`{expected}`"), &[expected]))
        }
    }

    fn color(&mut self) -> PResult<Color> {
        match &self.peek().kind {
            TokenKind::HexColor(hex) => {
                let color = Color::parse_hex(hex).map_err(|_| self.error_here("a hex color", &["hex color"]))?;
                self.advance();
                Ok(color)
            }
            _ => Err(self.error_here("a hex color", &["hex color"])),
        }
    }

    fn texture(&mut self) -> PResult<Texture> {
        if let TokenKind::Ident(name) = &self.peek().kind {
            if TEXTURE_NAMES.contains(&name.as_str()) {
                self.advance();
                return Ok(Texture::from_str(name).expect("listed texture name"));
            }
        }
        Err(self.error_here("a texture name", &TEXTURE_NAMES))
    }

    fn end_of_statement(&mut self) -> PResult<()> {
        match self.peek().kind {
            TokenKind::Newline => {
                self.advance();
                Ok(())
            }
            TokenKind::Eof => Ok(()),
            _ => Err(self.error_here("end of line", &["newline"])),
        }
    }

    fn statement(&mut self) -> PResult<Stmt> {
        let tok = self.peek();
        let TokenKind::Keyword(kw) = tok.kind else {
            return Err(self.error_here("a statement", &STATEMENT_STARTS));
        };
        match kw {
            Keyword::Region => {
                self.advance();
                let name = self.ident()?;
                self.keyword(Keyword::Rect)?;
                let (x, y, width, height) = (self.int()?, self.int()?, self.int()?, self.int()?);
                Ok(Stmt::Region { name, x, y, width, height })
            }
            Keyword::State => {
                self.advance();
                let name = self.ident()?;
                self.punct(TokenKind::Eq, "=")?;
                self.keyword(Keyword::Paint)?;
                let region = self.ident()?;
                self.keyword(Keyword::Color)?;
                let color = self.color()?;
                self.keyword(Keyword::Texture)?;
                let texture = self.texture()?;
                self.keyword(Keyword::Load)?;
                let load = self.int()?;
                Ok(Stmt::State { name, region, color, texture, load })
            }
            Keyword::Word => {
                self.advance();
                let name = self.ident()?;
                self.punct(TokenKind::Eq, "=")?;
                let expr = self.word_expr()?;
                Ok(Stmt::Word { name, expr })
            }
            Keyword::Stroke => {
                self.advance();
                let name = self.ident()?;
                self.punct(TokenKind::Eq, "=")?;
                let generator = self.generator()?;
                Ok(Stmt::Stroke { name, generator })
            }
            Keyword::Apply => {
                self.advance();
                let stroke = self.ident()?;
                self.keyword(Keyword::To)?;
                let word = self.ident()?;
                self.keyword(Keyword::At)?;
                let position = self.int()?;
                Ok(Stmt::Apply { stroke, word, position })
            }
            Keyword::Braid => {
                self.advance();
                let word = self.ident()?;
                self.keyword(Keyword::At)?;
                let position = self.int()?;
                Ok(Stmt::Braid { word, position })
            }
            Keyword::Check => {
                self.advance();
                self.keyword(Keyword::Laws)?;
                let seed = if self.eat_keyword(Keyword::Seed) { Some(self.int()?) } else { None };
                let samples = if self.eat_keyword(Keyword::Samples) { Some(self.int()?) } else { None };
                Ok(Stmt::Check { seed, samples })
            }
            Keyword::Render => {
                self.advance();
                let word = self.ident()?;
                let path = match &self.peek().kind {
                    TokenKind::Str(s) => {
                        self.advance();
                        s.clone()
                    }
                    _ => return Err(self.error_here("an output path string", &["string"])),
                };
                let size = if self.eat_keyword(Keyword::Size) { Some((self.int()?, self.int()?)) } else { None };
                Ok(Stmt::Render { word, path, size })
            }
            Keyword::Print => {
                self.advance();
                Ok(Stmt::Print { name: self.ident()? })
            }
            _ => Err(self.error_here("a statement", &STATEMENT_STARTS)),
        }
    }

    fn generator(&mut self) -> PResult<GenExpr> {
        const GENS: [&str; 5] = ["set_color", "add_color", "set_texture", "scale_load", "do_nothing"];
        let TokenKind::Keyword(kw) = self.peek().kind else {
            return Err(self.error_here("a stroke generator", &GENS));
        };
        match kw {
            Keyword::SetColor => {
                self.advance();
                Ok(GenExpr::SetColor(self.color()?))
            }
            Keyword::AddColor => {
                self.advance();
                let color = self.color()?;
                Ok(GenExpr::AddColor(color, self.int()?))
            }
            Keyword::SetTexture => {
                self.advance();
                Ok(GenExpr::SetTexture(self.texture()?))
            }
            Keyword::ScaleLoad => {
                self.advance();
                let num = self.int()?;
                self.punct(TokenKind::Slash, "/")?;
                Ok(GenExpr::ScaleLoad(num, self.int()?))
            }
            Keyword::DoNothing => {
                self.advance();
                Ok(GenExpr::DoNothing)
            }
            _ => Err(self.error_here("a stroke generator", &GENS)),
        }
    }

    /// `wterm { (x) wterm }`, folded to the left.
    fn word_expr(&mut self) -> PResult<WordExpr> {
        let mut expr = self.word_term()?;
        while self.peek().kind == TokenKind::Tensor {
            self.advance();
            let rhs = self.word_term()?;
            expr = WordExpr::Tensor(Box::new(expr), Box::new(rhs));
        }
        Ok(expr)
    }

    fn word_term(&mut self) -> PResult<WordExpr> {
        match &self.peek().kind {
            TokenKind::Ident(name) => {
                self.advance();
                Ok(WordExpr::Name(name.clone()))
            }
            TokenKind::Keyword(Keyword::Unit) => {
                self.advance();
                Ok(WordExpr::Unit)
            }
            TokenKind::LParen => {
                self.advance();
                let inner = self.word_expr()?;
                self.punct(TokenKind::RParen, ")")?;
                Ok(inner)
            }
            _ => Err(self.error_here("expression", &["identifier", "I", "("])),
        }
    }

    fn skip_line(&mut self) {
        while !matches!(self.peek().kind, TokenKind::Newline | TokenKind::Eof) {
            self.advance();
        }
        if self.peek().kind == TokenKind::Newline {
            self.advance();
        }
    }
}

/// Recursive-descent parse of a token stream. On failure returns every error
/// found (up to [`MAX_ERRORS`]), resuming at the next line after each one.
pub fn parse(tokens: &[Token]) -> Result<Script, ParseErrors> {
    assert!(tokens.last().is_some_and(|t| t.kind == TokenKind::Eof), "token stream must end with Eof");
    let mut p = Parser { tokens, pos: 0 };
    let mut statements = Vec::new();
    let mut errors = Vec::new();
    loop {
        while p.peek().kind == TokenKind::Newline {
            p.advance();
        }
        if p.peek().kind == TokenKind::Eof {
            break;
        }
        let first = p.peek();
        let parsed = p.statement().and_then(|stmt| {
            let last = &tokens[p.pos - 1];
            let span =
                Span { line: first.line, column: first.column, end_line: last.line, end_column: last.end_column() };
            p.end_of_statement()?;
            Ok(Statement { stmt, span })
        });
        match parsed {
            Ok(statement) => statements.push(statement),
            Err(e) => {
                errors.push(e);
                if errors.len() >= MAX_ERRORS {
                    break;
                }
                p.skip_line();
            }
        }
    }
    if errors.is_empty() {
        Ok(Script { statements })
    } else {
        Err(ParseErrors(errors))
    }
}
