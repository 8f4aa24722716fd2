use crate::color::{Color, Texture};

/// Source range of a statement, 1-based, end column exclusive.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
    pub end_line: usize,
    pub end_column: usize,
}

impl Span {
    pub fn contains(&self, line: usize, column: usize) -> bool {
        (line, column) >= (self.line, self.column) && (line, column) < (self.end_line, self.end_column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordExpr {
    Name(String),
    Unit,
    Tensor(Box<WordExpr>, Box<WordExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenExpr {
    SetColor(Color),
    AddColor(Color, u64),
    SetTexture(Texture),
    ScaleLoad(u64, u64),
    DoNothing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Region { name: String, x: u64, y: u64, width: u64, height: u64 },
    State { name: String, region: String, color: Color, texture: Texture, load: u64 },
    Word { name: String, expr: WordExpr },
    Stroke { name: String, generator: GenExpr },
    Apply { stroke: String, word: String, position: u64 },
    Braid { word: String, position: u64 },
    Check { seed: Option<u64>, samples: Option<u64> },
    Render { word: String, path: String, size: Option<(u64, u64)> },
    Print { name: String },
}

/// A statement with its source range. Equality ignores the range, so two
/// scripts are equal when their syntax trees are.
#[derive(Clone, Debug, Eq)]
pub struct Statement {
    pub stmt: Stmt,
    pub span: Span,
}

impl PartialEq for Statement {
    fn eq(&self, other: &Self) -> bool {
        self.stmt == other.stmt
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

impl Script {
    pub fn len(&self) -> usize {
        self.statements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }
}
