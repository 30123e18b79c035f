use std::fmt;

use thiserror::Error;

use crate::ast::Span;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Lexical,
    Syntax,
    Resolution,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Lexical => "lexical error",
            ErrorKind::Syntax => "syntax error",
            ErrorKind::Resolution => "resolution error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ErrorKind,
    pub message: String,
    pub span: Span,
    /// Tokens that would have been accepted at `span`.
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(kind: ErrorKind, message: impl Into<String>, span: Span, expected: Vec<String>) -> Self {
        ParseError {
            kind,
            message: message.into(),
            span,
            expected,
        }
    }

    pub fn line(&self) -> usize {
        self.span.start.line
    }

    pub fn column(&self) -> usize {
        self.span.start.column
    }

    /// Diagnostic with the offending line and a caret under the span.
    pub fn render(&self, src: &str, origin: &str) -> String {
        let line_no = self.line();
        let text = src.lines().nth(line_no.saturating_sub(1)).unwrap_or("");
        let width = if self.span.end.line == self.span.start.line {
            self.span.end.column.saturating_sub(self.span.start.column).max(1)
        } else {
            1
        };
        let gutter = " ".repeat(line_no.to_string().len());
        let mut out = format!(
            "{}: {}\n{gutter}--> {origin}:{line_no}:{}\n",
            self.kind,
            self.message,
            self.column()
        );
        out.push_str(&format!("{gutter} |\n{line_no} | {text}\n{gutter} | "));
        out.push_str(&" ".repeat(self.column().saturating_sub(1)));
        out.push_str(&"^".repeat(width));
        if !self.expected.is_empty() {
            out.push_str(&format!(" expected {}", self.expected.join(" or ")));
        }
        out.push('\n');
        out
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {}:{}: {}",
            self.kind,
            self.line(),
            self.column(),
            self.message
        )?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] quivrel_core::Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}
