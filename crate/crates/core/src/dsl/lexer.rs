use std::fmt;

use super::LexError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Keyword {
    Region,
    Rect,
    State,
    Paint,
    Color,
    Texture,
    Load,
    Word,
    Stroke,
    SetColor,
    AddColor,
    SetTexture,
    ScaleLoad,
    DoNothing,
    Apply,
    To,
    At,
    Braid,
    Check,
    Laws,
    Seed,
    Samples,
    Render,
    Size,
    Print,
    /// `I`, the unit word.
    Unit,
}

impl Keyword {
    const ALL: [(&'static str, Keyword); 26] = [
        ("region", Keyword::Region),
        ("rect", Keyword::Rect),
        ("state", Keyword::State),
        ("paint", Keyword::Paint),
        ("color", Keyword::Color),
        ("texture", Keyword::Texture),
        ("load", Keyword::Load),
        ("word", Keyword::Word),
        ("stroke", Keyword::Stroke),
        ("set_color", Keyword::SetColor),
        ("add_color", Keyword::AddColor),
        ("set_texture", Keyword::SetTexture),
        ("scale_load", Keyword::ScaleLoad),
        ("do_nothing", Keyword::DoNothing),
        ("apply", Keyword::Apply),
        ("to", Keyword::To),
        ("at", Keyword::At),
        ("braid", Keyword::Braid),
        ("check", Keyword::Check),
        ("laws", Keyword::Laws),
        ("seed", Keyword::Seed),
        ("samples", Keyword::Samples),
        ("render", Keyword::Render),
        ("size", Keyword::Size),
        ("print", Keyword::Print),
        ("I", Keyword::Unit),
    ];

    pub fn lookup(word: &str) -> Option<Keyword> {
        Self::ALL.iter().find(|(k, _)| *k == word).map(|(_, kw)| *kw)
    }

    pub fn as_str(self) -> &'static str {
        Self::ALL.iter().find(|(_, kw)| *kw == self).map(|(k, _)| *k).expect("every keyword is listed")
    }

    /// Keywords after which `#` starts a hex color rather than a comment.
    fn takes_color(self) -> bool {
        matches!(self, Keyword::Color | Keyword::SetColor | Keyword::AddColor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Keyword(Keyword),
    Ident(String),
    Int(u64),
    /// Hex digits without the leading `#`.
    HexColor(String),
    Str(String),
    Eq,
    /// `(x)` or `⊗`.
    Tensor,
    LParen,
    RParen,
    Slash,
    Newline,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Keyword(k) => write!(f, "`{}`", k.as_str()),
            TokenKind::Ident(s) => write!(f, "identifier `{s}`"),
            TokenKind::Int(n) => write!(f, "integer {n}"),
            TokenKind::HexColor(h) => write!(f, "color #{h}"),
            TokenKind::Str(s) => write!(f, "string {s:?}"),
            TokenKind::Eq => f.write_str("`=`"),
            TokenKind::Tensor => f.write_str("`(x)`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::Slash => f.write_str("`/`"),
            TokenKind::Newline => f.write_str("end of line"),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub line: usize,
    pub column: usize,
}

impl Token {
    /// Column just past the token's last character.
    pub fn end_column(&self) -> usize {
        self.column + self.lexeme.chars().count()
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
    line: usize,
    column: usize,
    tokens: Vec<Token>,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl<'a> Lexer<'a> {
    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn offset(&mut self) -> usize {
        self.chars.peek().map_or(self.src.len(), |&(i, _)| i)
    }

    fn push(&mut self, kind: TokenKind, start: usize, line: usize, column: usize) {
        let end = self.offset();
        self.tokens.push(Token { kind, lexeme: self.src[start..end].to_string(), line, column });
    }

    fn error(&self, message: impl Into<String>, line: usize, column: usize) -> LexError {
        LexError { message: message.into(), line, column }
    }

    fn color_context(&self) -> bool {
        matches!(self.tokens.last(), Some(Token { kind: TokenKind::Keyword(k), .. }) if k.takes_color())
    }

    fn run(mut self) -> Result<Vec<Token>, LexError> {
        while let Some(c) = self.peek() {
            let (start, line, column) = (self.offset(), self.line, self.column);
            match c {
                '\n' => {
                    self.bump();
                    self.push(TokenKind::Newline, start, line, column);
                }
                c if c.is_whitespace() => {
                    self.bump();
                }
                '#' if self.color_context() => {
                    self.bump();
                    let mut digits = String::new();
                    while let Some(d) = self.peek().filter(char::is_ascii_hexdigit) {
                        digits.push(d);
                        self.bump();
                    }
                    let trailing = self.peek().is_some_and(is_ident_char);
                    if trailing || !(digits.len() == 6 || digits.len() == 12) {
                        return Err(self.error(
                            "unterminated hex color: expected #RRGGBB or #RRRRGGGGBBBB",
                            line,
                            column,
                        ));
                    }
                    self.push(TokenKind::HexColor(digits), start, line, column);
                }
                '#' => {
                    while self.peek().is_some_and(|c| c != '\n') {
                        self.bump();
                    }
                }
                '"' => {
                    self.bump();
                    let mut text = String::new();
                    loop {
                        match self.bump() {
                            None | Some('\n') => return Err(self.error("unterminated string", line, column)),
                            Some('"') => break,
                            Some('\\') => match self.bump() {
                                Some('"') => text.push('"'),
                                Some('\\') => text.push('\\'),
                                Some('n') => text.push('\n'),
                                Some('t') => text.push('\t'),
                                _ => return Err(self.error("unknown escape in string", self.line, self.column - 1)),
                            },
                            Some(other) => text.push(other),
                        }
                    }
                    self.push(TokenKind::Str(text), start, line, column);
                }
                '(' => {
                    let rest = &self.src[start..];
                    if rest.starts_with("(x)") {
                        for _ in 0..3 {
                            self.bump();
                        }
                        self.push(TokenKind::Tensor, start, line, column);
                    } else {
                        self.bump();
                        self.push(TokenKind::LParen, start, line, column);
                    }
                }
                '⊗' => {
                    self.bump();
                    self.push(TokenKind::Tensor, start, line, column);
                }
                ')' | '=' | '/' => {
                    self.bump();
                    let kind = match c {
                        ')' => TokenKind::RParen,
                        '=' => TokenKind::Eq,
                        _ => TokenKind::Slash,
                    };
                    self.push(kind, start, line, column);
                }
                c if c.is_ascii_digit() => {
                    while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        self.bump();
                    }
                    if self.peek().is_some_and(is_ident_start) {
                        return Err(self.error("malformed number", line, column));
                    }
                    let end = self.offset();
                    let value = self.src[start..end]
                        .parse()
                        .map_err(|_| self.error("integer literal too large", line, column))?;
                    self.push(TokenKind::Int(value), start, line, column);
                }
                c if is_ident_start(c) => {
                    while self.peek().is_some_and(is_ident_char) {
                        self.bump();
                    }
                    let end = self.offset();
                    let text = &self.src[start..end];
                    let kind =
                        Keyword::lookup(text).map_or_else(|| TokenKind::Ident(text.to_string()), TokenKind::Keyword);
                    self.push(kind, start, line, column);
                }
                other => return Err(self.error(format!("unexpected character {other:?}"), line, column)),
            }
        }
        let (line, column) = (self.line, self.column);
        self.tokens.push(Token { kind: TokenKind::Eof, lexeme: String::new(), line, column });
        Ok(self.tokens)
    }
}

/// Splits source text into tokens. Comments run from `#` to end of line,
/// except directly after `color`, `set_color` or `add_color`, where `#`
/// introduces a hex color. The final token is always [`TokenKind::Eof`].
pub fn tokenize(text: &str) -> Result<Vec<Token>, LexError> {
    Lexer { chars: text.char_indices().peekable(), src: text, line: 1, column: 1, tokens: Vec::new() }.run()
}
