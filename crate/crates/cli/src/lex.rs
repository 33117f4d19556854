//! Tokens and diagnostics shared by the workspace parser and the proof
//! s-expression reader.

use std::fmt;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub pos: Pos,
    pub message: String,
    pub hint: String,
}

impl Diagnostic {
    pub fn new(pos: Pos, message: impl Into<String>, hint: impl Into<String>) -> Self {
        Diagnostic { pos, message: message.into(), hint: hint.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.pos.line, self.pos.col, self.message)?;
        if !self.hint.is_empty() {
            write!(f, "\n  hint: {}", self.hint)?;
        }
        Ok(())
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Colon,
    Comma,
    Less,
    Arrow,
    MapsTo,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Less => f.write_str("`<`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::MapsTo => f.write_str("`|->`"),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '.')
}

/// Splits `src` into tokens. `#` starts a comment running to the end of
/// the line.
pub fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, Diagnostic> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let mut pos = Pos { line: 1, col: 1 };
    let advance = |pos: &mut Pos, c: char| {
        if c == '\n' {
            pos.line += 1;
            pos.col = 1;
        } else {
            pos.col += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let start = pos;
        if c.is_whitespace() {
            chars.next();
            advance(&mut pos, c);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                advance(&mut pos, c);
            }
            continue;
        }
        if is_ident_char(c) {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if !is_ident_char(c) {
                    break;
                }
                s.push(c);
                chars.next();
                advance(&mut pos, c);
            }
            out.push((Tok::Ident(s), start));
            continue;
        }
        chars.next();
        advance(&mut pos, c);
        let tok = match c {
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ';' => Tok::Semi,
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            '<' => Tok::Less,
            '-' if chars.peek() == Some(&'>') => {
                chars.next();
                advance(&mut pos, '>');
                Tok::Arrow
            }
            '|' if chars.peek() == Some(&'-') => {
                chars.next();
                advance(&mut pos, '-');
                if chars.peek() != Some(&'>') {
                    return Err(Diagnostic::new(start, "unexpected `|-`", "write `|->` between a node and its image"));
                }
                chars.next();
                advance(&mut pos, '>');
                Tok::MapsTo
            }
            '-' => return Err(Diagnostic::new(start, "unexpected `-`", "edges and morphisms use `->`")),
            other => {
                return Err(Diagnostic::new(
                    start,
                    format!("unexpected character `{other}`"),
                    "names may contain letters, digits, `_`, `'` and `.`",
                ))
            }
        };
        out.push((tok, start));
    }
    Ok(out)
}

/// A cursor over a token list, reporting errors against the last position
/// of the source when input runs out.
pub struct Cursor {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Cursor {
    pub fn new(toks: Vec<(Tok, Pos)>, end: Pos) -> Self {
        Cursor { toks, at: 0, end }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    pub fn pos(&self) -> Pos {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    pub fn at_end(&self) -> bool {
        self.at >= self.toks.len()
    }

    pub fn bump(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    pub fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == Some(want) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, want: &Tok, hint: &str) -> Result<Pos, Diagnostic> {
        let pos = self.pos();
        match self.bump() {
            Some((t, p)) if t == *want => Ok(p),
            Some((t, _)) => Err(Diagnostic::new(pos, format!("expected {want}, found {t}"), hint)),
            None => Err(Diagnostic::new(pos, format!("expected {want}, found end of input"), hint)),
        }
    }

    pub fn ident(&mut self, what: &str) -> Result<(String, Pos), Diagnostic> {
        let pos = self.pos();
        match self.bump() {
            Some((Tok::Ident(s), p)) => Ok((s, p)),
            Some((t, _)) => Err(Diagnostic::new(pos, format!("expected {what}, found {t}"), format!("write {what} here"))),
            None => Err(Diagnostic::new(pos, format!("expected {what}, found end of input"), format!("write {what} here"))),
        }
    }
}

/// Position one past the last character of `src`.
pub fn end_pos(src: &str) -> Pos {
    let mut pos = Pos { line: 1, col: 1 };
    for c in src.chars() {
        if c == '\n' {
            pos.line += 1;
            pos.col = 1;
        } else {
            pos.col += 1;
        }
    }
    pos
}
