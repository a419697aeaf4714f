use super::lexer::{lex, Token, TokenKind};
use super::SyntaxError;

/// A non-comment token together with the comments lexed right before it.
#[derive(Debug, Clone)]
pub struct CodeToken {
    pub token: Token,
    pub leading_comments: Vec<Token>,
    /// Directly continues the previous token (pieces of a split `>>`).
    pub glued: bool,
}

pub struct Cursor {
    toks: Vec<CodeToken>,
    pos: usize,
    eof_line: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Self {
        let mut toks = Vec::new();
        let mut pending = Vec::new();
        let mut eof_line = 1;
        for t in lex(text) {
            eof_line = t.end_line;
            if t.kind.is_comment() {
                pending.push(t);
            } else if t.kind == TokenKind::Operator && t.text.len() > 1 && t.text.starts_with(">>") {
                // Shift operators are split into `>` pieces so that nested type
                // argument lists close without rewriting tokens; the expression
                // parser glues them back together.
                for (i, ch) in t.text.chars().enumerate() {
                    let piece = Token { text: ch.to_string(), column: t.column + i, ..t.clone() };
                    let leading = if i == 0 { std::mem::take(&mut pending) } else { Vec::new() };
                    toks.push(CodeToken { token: piece, leading_comments: leading, glued: i > 0 });
                }
            } else {
                toks.push(CodeToken { token: t, leading_comments: std::mem::take(&mut pending), glued: false });
            }
        }
        Cursor { toks, pos: 0, eof_line }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn reset(&mut self, pos: usize) {
        self.pos = pos;
    }

    pub fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos).map(|t| &t.token)
    }

    pub fn peek_at(&self, ahead: usize) -> Option<&Token> {
        self.toks.get(self.pos + ahead).map(|t| &t.token)
    }

    pub fn peek_code(&self) -> Option<&CodeToken> {
        self.toks.get(self.pos)
    }

    pub fn previous(&self) -> Option<&Token> {
        self.pos.checked_sub(1).and_then(|p| self.toks.get(p)).map(|t| &t.token)
    }

    pub fn is(&self, text: &str) -> bool {
        self.peek().is_some_and(|t| t.text == text && t.kind != TokenKind::Literal)
    }

    pub fn is_at(&self, ahead: usize, text: &str) -> bool {
        self.peek_at(ahead).is_some_and(|t| t.text == text && t.kind != TokenKind::Literal)
    }

    pub fn is_kind(&self, kind: TokenKind) -> bool {
        self.peek().is_some_and(|t| t.kind == kind)
    }

    pub fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).map(|t| t.token.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, text: &str) -> bool {
        if self.is(text) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn error(&self, message: impl Into<String>) -> SyntaxError {
        let (line, column) = match self.peek() {
            Some(t) => (t.line, t.column),
            None => (self.eof_line, 1),
        };
        SyntaxError { line, column, message: message.into() }
    }

    pub fn expect(&mut self, text: &str) -> Result<Token, SyntaxError> {
        if self.is(text) {
            Ok(self.bump().unwrap())
        } else {
            let found = self.peek().map(|t| t.text.clone()).unwrap_or_else(|| "end of input".into());
            Err(self.error(format!("expected `{text}`, found `{found}`")))
        }
    }

    pub fn expect_ident(&mut self) -> Result<Token, SyntaxError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier => Ok(self.bump().unwrap()),
            Some(t) => {
                let msg = format!("expected identifier, found `{}`", t.text);
                Err(self.error(msg))
            }
            None => Err(self.error("expected identifier, found end of input")),
        }
    }

    /// Consume a closing `>` of a type argument list.
    pub fn eat_close_angle(&mut self) -> bool {
        self.eat(">")
    }

    pub fn is_glued_at(&self, ahead: usize) -> bool {
        self.toks.get(self.pos + ahead).is_some_and(|t| t.glued)
    }

    /// The operator at the cursor with split shift pieces re-joined, and the
    /// number of tokens it spans.
    pub fn peek_operator(&self) -> Option<(String, usize)> {
        let first = self.peek()?;
        if first.kind != TokenKind::Operator {
            return None;
        }
        let mut text = first.text.clone();
        let mut n = 1;
        if text == ">" {
            while self.is_glued_at(n) {
                text.push_str(&self.peek_at(n).unwrap().text);
                n += 1;
            }
        }
        Some((text, n))
    }

    pub fn advance(&mut self, n: usize) {
        self.pos = (self.pos + n).min(self.toks.len());
    }

    /// Skip a balanced group starting at the current open token.
    pub fn skip_balanced(&mut self, open: &str, close: &str) -> Result<(), SyntaxError> {
        let start = self.error("unbalanced group");
        self.expect(open)?;
        let mut depth = 1usize;
        while let Some(t) = self.bump() {
            if t.kind == TokenKind::Literal {
                continue;
            }
            if t.text == open {
                depth += 1;
            } else if t.text == close {
                depth -= 1;
                if depth == 0 {
                    return Ok(());
                }
            }
        }
        Err(start)
    }
}
