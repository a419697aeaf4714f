//! Maximal-munch lexer for the JVM-family subject language.
//!
//! The same lexer feeds the declaration parser (which keeps comments so they
//! can be attached to fields) and the metric tokenizer (which drops them).

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenKind {
    Identifier,
    Keyword,
    Literal,
    Operator,
    Punctuation,
    LineComment,
    BlockComment,
}

impl TokenKind {
    pub fn is_comment(self) -> bool {
        matches!(self, TokenKind::LineComment | TokenKind::BlockComment)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    /// 1-based line of the first character.
    pub line: usize,
    /// 1-based column (in chars) of the first character.
    pub column: usize,
    /// Line of the last character; differs from `line` for block comments and text blocks.
    pub end_line: usize,
}

pub const KEYWORDS: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const",
    "continue", "default", "do", "double", "else", "enum", "extends", "final", "finally", "float",
    "for", "goto", "if", "implements", "import", "instanceof", "int", "interface", "long",
    "native", "new", "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws", "transient", "try",
    "void", "volatile", "while",
];

const LITERAL_WORDS: &[&str] = &["true", "false", "null"];

// Longest first so maximal munch is a prefix scan.
const OPERATORS: &[&str] = &[
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
    ">=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "=", "<", ">", "!", "~",
    "?", ":", "+", "-", "*", "/", "&", "|", "^", "%",
];

const PUNCTUATION: &[char] = &['(', ')', '{', '}', '[', ']', ';', ',', '.', '@'];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.binary_search(&word).is_ok()
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_part(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn peek(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.pos + ahead).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(i, c)| self.peek(i) == Some(c))
    }

    fn slice(&self, from: usize) -> String {
        self.chars[from..self.pos].iter().collect()
    }
}

/// Lex `text` into tokens, comments included.
///
/// Never fails: unterminated strings and comments run to end of input, and
/// unknown characters become single-character operator tokens.
pub fn lex(text: &str) -> Vec<Token> {
    let mut cur = Cursor { chars: text.chars().collect(), pos: 0, line: 1, column: 1, _src: text };
    let mut out = Vec::new();

    while let Some(c) = cur.peek(0) {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        let (start, line, column) = (cur.pos, cur.line, cur.column);
        let kind = if cur.starts_with("//") {
            while let Some(c) = cur.peek(0) {
                if c == '\n' {
                    break;
                }
                cur.bump();
            }
            TokenKind::LineComment
        } else if cur.starts_with("/*") {
            cur.bump();
            cur.bump();
            while cur.peek(0).is_some() && !cur.starts_with("*/") {
                cur.bump();
            }
            cur.bump();
            cur.bump();
            TokenKind::BlockComment
        } else if cur.starts_with("\"\"\"") {
            for _ in 0..3 {
                cur.bump();
            }
            while cur.peek(0).is_some() && !cur.starts_with("\"\"\"") {
                if cur.peek(0) == Some('\\') {
                    cur.bump();
                }
                cur.bump();
            }
            for _ in 0..3 {
                cur.bump();
            }
            TokenKind::Literal
        } else if c == '"' || c == '\'' {
            cur.bump();
            while let Some(n) = cur.peek(0) {
                if n == '\n' {
                    break;
                }
                cur.bump();
                if n == '\\' {
                    cur.bump();
                } else if n == c {
                    break;
                }
            }
            TokenKind::Literal
        } else if c.is_ascii_digit() || (c == '.' && cur.peek(1).is_some_and(|d| d.is_ascii_digit())) {
            lex_number(&mut cur);
            TokenKind::Literal
        } else if is_ident_start(c) {
            while cur.peek(0).is_some_and(is_ident_part) {
                cur.bump();
            }
            let word = cur.slice(start);
            if is_keyword(&word) {
                TokenKind::Keyword
            } else if LITERAL_WORDS.contains(&word.as_str()) {
                TokenKind::Literal
            } else {
                TokenKind::Identifier
            }
        } else if let Some(op) = OPERATORS.iter().find(|op| cur.starts_with(op)) {
            for _ in 0..op.chars().count() {
                cur.bump();
            }
            if *op == "..." {
                TokenKind::Punctuation
            } else {
                TokenKind::Operator
            }
        } else if PUNCTUATION.contains(&c) {
            cur.bump();
            TokenKind::Punctuation
        } else {
            cur.bump();
            TokenKind::Operator
        };
        let end_line = if cur.column == 1 && cur.line > line { cur.line - 1 } else { cur.line };
        out.push(Token { kind, text: cur.slice(start), line, column, end_line });
    }
    out
}

fn lex_number(cur: &mut Cursor<'_>) {
    if cur.starts_with("0x") || cur.starts_with("0X") || cur.starts_with("0b") || cur.starts_with("0B") {
        cur.bump();
        cur.bump();
        while cur.peek(0).is_some_and(|c| c.is_ascii_hexdigit() || c == '_') {
            cur.bump();
        }
    } else {
        while cur.peek(0).is_some_and(|c| c.is_ascii_digit() || c == '_') {
            cur.bump();
        }
        if cur.peek(0) == Some('.') && cur.peek(1).is_some_and(|c| c.is_ascii_digit()) {
            cur.bump();
            while cur.peek(0).is_some_and(|c| c.is_ascii_digit() || c == '_') {
                cur.bump();
            }
        } else if cur.peek(0) == Some('.') && !cur.peek(1).is_some_and(|c| is_ident_start(c) || c == '.') {
            // `1.` is a double literal; `1.foo` / `1..` are not part of the number.
            cur.bump();
        }
        if matches!(cur.peek(0), Some('e' | 'E')) {
            let sign = usize::from(matches!(cur.peek(1), Some('+' | '-')));
            if cur.peek(1 + sign).is_some_and(|c| c.is_ascii_digit()) {
                for _ in 0..=sign {
                    cur.bump();
                }
                while cur.peek(0).is_some_and(|c| c.is_ascii_digit()) {
                    cur.bump();
                }
            }
        }
    }
    if matches!(cur.peek(0), Some('l' | 'L' | 'f' | 'F' | 'd' | 'D')) {
        cur.bump();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<(TokenKind, String)> {
        lex(src).into_iter().map(|t| (t.kind, t.text)).collect()
    }

    #[test]
    fn keyword_table_is_sorted() {
        let mut sorted = KEYWORDS.to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted, KEYWORDS);
    }

    #[test]
    fn simple_declaration() {
        use TokenKind::*;
        assert_eq!(
            kinds("int a = 1;"),
            vec![
                (Keyword, "int".into()),
                (Identifier, "a".into()),
                (Operator, "=".into()),
                (Literal, "1".into()),
                (Punctuation, ";".into()),
            ]
        );
    }

    #[test]
    fn comments_and_positions() {
        let toks = lex("// head\nclass A { /* x\n y */ int b; }");
        assert_eq!(toks[0].kind, TokenKind::LineComment);
        assert_eq!(toks[0].text, "// head");
        assert_eq!((toks[1].line, toks[1].column), (2, 1));
        let block = toks.iter().find(|t| t.kind == TokenKind::BlockComment).unwrap();
        assert_eq!((block.line, block.end_line), (2, 3));
    }

    #[test]
    fn literals() {
        let toks = kinds(r#"s = "a \" b"; c = 'x'; d = 1.5e-3f; h = 0xFFL; t = true; n = .5;"#);
        let lits: Vec<_> = toks.iter().filter(|t| t.0 == TokenKind::Literal).map(|t| t.1.as_str()).collect();
        assert_eq!(lits, vec![r#""a \" b""#, "'x'", "1.5e-3f", "0xFFL", "true", ".5"]);
    }

    #[test]
    fn maximal_munch_operators() {
        let ops: Vec<_> = kinds("a >>>= b -> c :: d ... e")
            .into_iter()
            .filter(|t| t.0 != TokenKind::Identifier)
            .map(|t| t.1)
            .collect();
        assert_eq!(ops, vec![">>>=", "->", "::", "..."]);
    }

    #[test]
    fn unknown_bytes_become_operators() {
        assert_eq!(kinds("#"), vec![(TokenKind::Operator, "#".into())]);
    }

    #[test]
    fn method_call_on_int_literal_is_not_a_float() {
        let toks = kinds("1.toString");
        assert_eq!(toks[0].1, "1");
        assert_eq!(toks[1].1, ".");
    }
}
