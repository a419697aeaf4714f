//! Lexing and parsing of the subject language subset.

pub mod ast;
pub(crate) mod cursor;
pub mod decl;
pub mod lexer;

pub use lexer::{lex, Token, TokenKind};

/// Position of a syntax error, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at {line}:{column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}
