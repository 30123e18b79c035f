use std::fmt;

use crate::ast::{Location, Span};
use crate::error::{ErrorKind, ParseError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// Digits, optionally followed by `/` and more digits.
    Number(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Semi,
    Comma,
    Arrow,
    Star,
    Plus,
    Minus,
    Eq,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Number(s) => write!(f, "number `{s}`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

struct Cursor<'a> {
    src: &'a str,
    loc: Location,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.loc.byte..].chars().next()
    }

    fn peek2(&self) -> Option<char> {
        self.src[self.loc.byte..].chars().nth(1)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.loc.byte += c.len_utf8();
        if c == '\n' {
            self.loc.line += 1;
            self.loc.column = 1;
        } else {
            self.loc.column += 1;
        }
        Some(c)
    }
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut cur = Cursor {
        src,
        loc: Location {
            line: 1,
            column: 1,
            byte: 0,
        },
    };
    let mut out = Vec::new();
    loop {
        while let Some(c) = cur.peek() {
            if c.is_whitespace() {
                cur.bump();
            } else if c == '#' {
                while cur.peek().is_some_and(|c| c != '\n') {
                    cur.bump();
                }
            } else {
                break;
            }
        }
        let start = cur.loc;
        let Some(c) = cur.bump() else {
            out.push(Token {
                tok: Tok::Eof,
                span: Span { start, end: start },
            });
            return Ok(out);
        };
        let tok = match c {
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ':' => Tok::Colon,
            ';' => Tok::Semi,
            ',' => Tok::Comma,
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '=' => Tok::Eq,
            '-' if cur.peek() == Some('>') => {
                cur.bump();
                Tok::Arrow
            }
            '-' => Tok::Minus,
            c if c.is_ascii_digit() => {
                let mut text = c.to_string();
                while let Some(d) = cur.peek().filter(char::is_ascii_digit) {
                    text.push(d);
                    cur.bump();
                }
                if cur.peek() == Some('/') {
                    if !cur.peek2().is_some_and(|d| d.is_ascii_digit()) {
                        cur.bump();
                        return Err(ParseError::new(
                            ErrorKind::Lexical,
                            "a fraction needs a denominator",
                            Span { start, end: cur.loc },
                            vec!["digit".into()],
                        ));
                    }
                    text.push('/');
                    cur.bump();
                    let mut denominator = String::new();
                    while let Some(d) = cur.peek().filter(char::is_ascii_digit) {
                        denominator.push(d);
                        cur.bump();
                    }
                    if denominator.chars().all(|d| d == '0') {
                        return Err(ParseError::new(
                            ErrorKind::Lexical,
                            "zero denominator",
                            Span { start, end: cur.loc },
                            vec![],
                        ));
                    }
                    text.push_str(&denominator);
                }
                if cur.peek().is_some_and(ident_start) {
                    let at = cur.loc;
                    cur.bump();
                    return Err(ParseError::new(
                        ErrorKind::Lexical,
                        "identifiers must not start with a digit",
                        Span {
                            start: at,
                            end: cur.loc,
                        },
                        vec![],
                    ));
                }
                Tok::Number(text)
            }
            c if ident_start(c) => {
                let mut text = c.to_string();
                while let Some(d) = cur.peek().filter(|d| ident_continue(*d)) {
                    text.push(d);
                    cur.bump();
                }
                Tok::Ident(text)
            }
            other => {
                return Err(ParseError::new(
                    ErrorKind::Lexical,
                    format!("unexpected character `{other}`"),
                    Span { start, end: cur.loc },
                    vec![],
                ))
            }
        };
        out.push(Token {
            tok,
            span: Span { start, end: cur.loc },
        });
    }
}
