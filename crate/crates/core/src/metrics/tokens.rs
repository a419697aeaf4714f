use serde::{Deserialize, Serialize};

use crate::syntax::{lex, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeToken {
    pub lexeme: String,
    pub kind: TokenKind,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenStream {
    pub tokens: Vec<CodeToken>,
}

impl TokenStream {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Lexemes joined by single spaces.
    pub fn canonical(&self) -> String {
        self.tokens.iter().map(|t| t.lexeme.as_str()).collect::<Vec<_>>().join(" ")
    }
}

/// Comments dropped, everything else as lexed.
pub fn tokenize_code(text: &str) -> TokenStream {
    TokenStream { tokens: lex(text).into_iter().filter(|t| !t.kind.is_comment()).map(|t| CodeToken { lexeme: t.text, kind: t.kind }).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds() {
        let kinds: Vec<TokenKind> = tokenize_code("int a = 1;").tokens.iter().map(|t| t.kind).collect();
        assert_eq!(kinds, [TokenKind::Keyword, TokenKind::Identifier, TokenKind::Operator, TokenKind::Literal, TokenKind::Punctuation]);
        assert!(tokenize_code("").is_empty());
        assert!(tokenize_code("  // only a comment\n/* and this */").is_empty());
        let s = tokenize_code("s = \"a b // c\";");
        assert_eq!(s.tokens[2].lexeme, "\"a b // c\"");
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn canonical_round_trip() {
        let t = tokenize_code("if(a>=b){x+=1;}// done\nreturn x;");
        assert_eq!(t.canonical(), "if ( a >= b ) { x += 1 ; } return x ;");
        assert_eq!(tokenize_code(&t.canonical()), t);
    }
}
