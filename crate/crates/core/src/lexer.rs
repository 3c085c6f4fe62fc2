//! Tokenizer shared by the formula and proof-term parsers.

use std::fmt;

use thiserror::Error;

/// A location in the source text, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub offset: usize,
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Colon,
    Arrow,
    FatArrow,
    Or,
    And,
    Tilde,
    Lambda,
    BigLambda,
    Lt,
    Gt,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Bar,
    Eq,
    At,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Comma => "`,`",
            Tok::Dot => "`.`",
            Tok::Colon => "`:`",
            Tok::Arrow => "`->`",
            Tok::FatArrow => "`=>`",
            Tok::Or => "`\\/`",
            Tok::And => "`/\\`",
            Tok::Tilde => "`~`",
            Tok::Lambda => "`\\`",
            Tok::BigLambda => "`\\\\`",
            Tok::Lt => "`<`",
            Tok::Gt => "`>`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Bar => "`|`",
            Tok::Eq => "`=`",
            Tok::At => "`@`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos}: unexpected character {ch:?}")]
pub struct LexError {
    pub pos: Pos,
    pub ch: char,
}

pub fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, LexError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = src.char_indices().peekable();
    while let Some(&(offset, c)) = chars.peek() {
        let pos = Pos { offset, line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut ident = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                    ident.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(ident), pos));
            continue;
        }
        chars.next();
        col += 1;
        let next = chars.peek().map(|&(_, c)| c);
        let mut two = |tok: Tok, out: &mut Vec<(Tok, Pos)>| {
            chars.next();
            col += 1;
            out.push((tok, pos));
        };
        match (c, next) {
            ('-', Some('>')) => two(Tok::Arrow, &mut out),
            ('=', Some('>')) => two(Tok::FatArrow, &mut out),
            ('\\', Some('/')) => two(Tok::Or, &mut out),
            ('\\', Some('\\')) => two(Tok::BigLambda, &mut out),
            ('/', Some('\\')) => two(Tok::And, &mut out),
            ('\\', _) => out.push((Tok::Lambda, pos)),
            ('(', _) => out.push((Tok::LParen, pos)),
            (')', _) => out.push((Tok::RParen, pos)),
            (',', _) => out.push((Tok::Comma, pos)),
            ('.', _) => out.push((Tok::Dot, pos)),
            (':', _) => out.push((Tok::Colon, pos)),
            ('~', _) => out.push((Tok::Tilde, pos)),
            ('<', _) => out.push((Tok::Lt, pos)),
            ('>', _) => out.push((Tok::Gt, pos)),
            ('[', _) => out.push((Tok::LBracket, pos)),
            (']', _) => out.push((Tok::RBracket, pos)),
            ('{', _) => out.push((Tok::LBrace, pos)),
            ('}', _) => out.push((Tok::RBrace, pos)),
            ('|', _) => out.push((Tok::Bar, pos)),
            ('=', _) => out.push((Tok::Eq, pos)),
            ('@', _) => out.push((Tok::At, pos)),
            _ => return Err(LexError { pos, ch: c }),
        }
    }
    out.push((
        Tok::Eof,
        Pos {
            offset: src.len(),
            line,
            col,
        },
    ));
    Ok(out)
}

/// Cursor over a token vector, used by both parsers.
pub(crate) struct Cursor {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Cursor {
    pub fn new(toks: Vec<(Tok, Pos)>) -> Self {
        Cursor { toks, at: 0 }
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    pub fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }
}
