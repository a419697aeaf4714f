//! Statement and expression parser for code snippets.
//!
//! A snippet is a sequence of items: statements, method declarations, or
//! class declarations whose members are in turn methods and fields. This
//! covers both bare generated scripts and small complete classes.

use super::cursor::Cursor;
use super::decl::{parse_type, type_arguments};
use super::lexer::TokenKind;
use super::SyntaxError;
use crate::model::{TypeRef, PRIMITIVES};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LitKind {
    Int,
    Float,
    Str,
    Char,
    Bool,
    Null,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Literal { kind: LitKind, text: String },
    Name(String),
    This,
    Super,
    Field { target: Box<Expr>, name: String },
    Call { target: Option<Box<Expr>>, name: String, args: Vec<Expr> },
    New { ty: TypeRef, args: Vec<Expr>, anonymous_body: bool },
    NewArray { ty: TypeRef, dims: Vec<Expr>, init: Option<Vec<Expr>> },
    ArrayInit(Vec<Expr>),
    Index { target: Box<Expr>, index: Box<Expr> },
    Unary { op: String, expr: Box<Expr>, postfix: bool },
    Binary { op: String, lhs: Box<Expr>, rhs: Box<Expr> },
    Assign { op: String, target: Box<Expr>, value: Box<Expr> },
    Conditional { cond: Box<Expr>, then: Box<Expr>, otherwise: Box<Expr> },
    Cast { ty: TypeRef, expr: Box<Expr> },
    InstanceOf { expr: Box<Expr>, ty: TypeRef, binding: Option<String> },
    Lambda { params: Vec<Param>, body: LambdaBody },
    MethodRef { target: Box<Expr>, name: String },
    ClassLit(TypeRef),
    /// A type used in expression position, e.g. the receiver of `String[]::new`.
    TypeExpr(TypeRef),
}

#[derive(Debug, Clone, PartialEq)]
pub enum LambdaBody {
    Expr(Box<Expr>),
    Block(Vec<Stmt>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Param {
    pub ty: Option<TypeRef>,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Declarator {
    pub name: String,
    pub dims: u8,
    pub init: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwitchCase {
    /// Empty for `default`.
    pub labels: Vec<Expr>,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatchClause {
    pub types: Vec<TypeRef>,
    pub name: String,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    LocalVar { ty: TypeRef, declarators: Vec<Declarator> },
    Expr(Expr),
    Return(Option<Expr>),
    If { cond: Expr, then: Box<Stmt>, otherwise: Option<Box<Stmt>> },
    While { cond: Expr, body: Box<Stmt> },
    DoWhile { body: Box<Stmt>, cond: Expr },
    For { init: Vec<Stmt>, cond: Option<Expr>, update: Vec<Expr>, body: Box<Stmt> },
    ForEach { ty: TypeRef, name: String, iterable: Expr, body: Box<Stmt> },
    Block(Vec<Stmt>),
    Switch { selector: Expr, cases: Vec<SwitchCase> },
    Try { resources: Vec<Stmt>, body: Vec<Stmt>, catches: Vec<CatchClause>, finally: Option<Vec<Stmt>> },
    Throw(Expr),
    Break(Option<String>),
    Continue(Option<String>),
    Labeled { label: String, body: Box<Stmt> },
    Yield(Expr),
    Empty,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodDecl {
    pub name: String,
    pub return_type: Option<TypeRef>,
    pub params: Vec<Param>,
    pub body: Option<Vec<Stmt>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Stmt(Stmt),
    Method(MethodDecl),
    Class { name: String, items: Vec<Item> },
    Import(String),
    Package(String),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Snippet {
    pub items: Vec<Item>,
}

impl Snippet {
    /// Top-level statements in order, ignoring declarations.
    pub fn statements(&self) -> impl Iterator<Item = &Stmt> {
        self.items.iter().filter_map(|i| match i {
            Item::Stmt(s) => Some(s),
            _ => None,
        })
    }
}

pub fn parse_snippet(text: &str) -> Result<Snippet, SyntaxError> {
    let mut p = Parser { cur: Cursor::new(text) };
    let mut items = Vec::new();
    while !p.cur.at_end() {
        items.push(p.item(true)?);
    }
    Ok(Snippet { items })
}

const MODIFIERS: &[&str] = &[
    "public", "private", "protected", "static", "final", "abstract", "synchronized", "native",
    "strictfp", "transient", "volatile", "default",
];

struct Parser {
    cur: Cursor,
}

impl Parser {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SyntaxError> {
        Err(self.cur.error(msg))
    }

    fn found(&self) -> String {
        self.cur.peek().map(|t| t.text.clone()).unwrap_or_else(|| "end of input".into())
    }

    fn skip_annotation(&mut self) -> Result<(), SyntaxError> {
        self.cur.expect("@")?;
        self.cur.expect_ident()?;
        while self.cur.is(".") && self.cur.peek_at(1).is_some_and(|t| t.kind == TokenKind::Identifier) {
            self.cur.advance(2);
        }
        if self.cur.is("(") {
            self.cur.skip_balanced("(", ")")?;
        }
        Ok(())
    }

    fn skip_modifiers(&mut self) -> Result<bool, SyntaxError> {
        let mut any = false;
        loop {
            if self.cur.is("@") && !self.cur.is_at(1, "interface") {
                self.skip_annotation()?;
            } else if self.cur.peek().is_some_and(|t| t.kind == TokenKind::Keyword && MODIFIERS.contains(&t.text.as_str())) {
                self.cur.bump();
            } else {
                return Ok(any);
            }
            any = true;
        }
    }

    fn item(&mut self, top_level: bool) -> Result<Item, SyntaxError> {
        if top_level && self.cur.eat("package") {
            let name = self.dotted()?;
            self.cur.expect(";")?;
            return Ok(Item::Package(name));
        }
        if top_level && self.cur.eat("import") {
            self.cur.eat("static");
            let mut name = self.cur.expect_ident()?.text;
            while self.cur.eat(".") {
                name.push('.');
                if self.cur.eat("*") {
                    name.push('*');
                    break;
                }
                name.push_str(&self.cur.expect_ident()?.text);
            }
            self.cur.expect(";")?;
            return Ok(Item::Import(name));
        }
        let start = self.cur.position();
        self.skip_modifiers()?;
        if self.cur.eat("class") || self.cur.eat("interface") || self.cur.eat("enum") {
            let name = self.cur.expect_ident()?.text;
            if self.cur.is("<") {
                self.type_params()?;
            }
            while !self.cur.is("{") {
                if self.cur.bump().is_none() {
                    return self.err("unterminated class header");
                }
            }
            self.cur.expect("{")?;
            let mut items = Vec::new();
            while !self.cur.eat("}") {
                if self.cur.at_end() {
                    return self.err(format!("unterminated body of `{name}`"));
                }
                if self.cur.eat(";") {
                    continue;
                }
                items.push(self.member(&name)?);
            }
            return Ok(Item::Class { name, items });
        }
        if let Some(m) = self.try_method(None)? {
            return Ok(Item::Method(m));
        }
        self.cur.reset(start);
        Ok(Item::Stmt(self.statement()?))
    }

    fn member(&mut self, class_name: &str) -> Result<Item, SyntaxError> {
        let start = self.cur.position();
        self.skip_modifiers()?;
        if self.cur.is("{") {
            return Ok(Item::Stmt(Stmt::Block(self.block()?)));
        }
        if self.cur.is("class") || self.cur.is("interface") || self.cur.is("enum") {
            self.cur.reset(start);
            return self.item(false);
        }
        if let Some(m) = self.try_method(Some(class_name))? {
            return Ok(Item::Method(m));
        }
        self.cur.reset(start);
        self.skip_modifiers()?;
        let stmt = self.local_var_decl()?.ok_or_else(|| self.cur.error(format!("unexpected `{}` in class body", self.found())))?;
        self.cur.expect(";")?;
        Ok(Item::Stmt(stmt))
    }

    fn type_params(&mut self) -> Result<(), SyntaxError> {
        self.cur.expect("<")?;
        let mut depth = 1;
        while depth > 0 {
            match self.cur.bump() {
                Some(t) if t.text == "<" => depth += 1,
                Some(t) if t.text == ">" => depth -= 1,
                Some(_) => {}
                None => return self.err("unterminated type parameters"),
            }
        }
        Ok(())
    }

    /// `[<T>] (Type | void) name (params) [throws ..] (block | ;)`, or a
    /// constructor when `class_name` matches. Leaves the cursor untouched
    /// and returns None if the tokens do not form a method header.
    fn try_method(&mut self, class_name: Option<&str>) -> Result<Option<MethodDecl>, SyntaxError> {
        let start = self.cur.position();
        if self.cur.is("<") {
            if self.type_params().is_err() {
                self.cur.reset(start);
                return Ok(None);
            }
        }
        let (return_type, name) = if class_name.is_some_and(|c| self.cur.is(c)) && self.cur.is_at(1, "(") {
            (None, self.cur.bump().unwrap().text)
        } else {
            let ty = if self.cur.eat("void") {
                TypeRef::named("void")
            } else {
                match parse_type(&mut self.cur) {
                    Ok(t) => t,
                    Err(_) => {
                        self.cur.reset(start);
                        return Ok(None);
                    }
                }
            };
            match self.cur.peek() {
                Some(t) if t.kind == TokenKind::Identifier && self.cur.is_at(1, "(") => {}
                _ => {
                    self.cur.reset(start);
                    return Ok(None);
                }
            }
            (Some(ty), self.cur.bump().unwrap().text)
        };
        // Distinguish `foo(a, b) {` from a call statement `foo(a, b);` by
        // requiring declared parameters to parse.
        let after_name = self.cur.position();
        let params = match self.formal_params() {
            Ok(p) => p,
            Err(_) => {
                self.cur.reset(start);
                return Ok(None);
            }
        };
        if self.cur.eat("throws") {
            parse_type(&mut self.cur)?;
            while self.cur.eat(",") {
                parse_type(&mut self.cur)?;
            }
        }
        if self.cur.eat(";") {
            return Ok(Some(MethodDecl { name, return_type, params, body: None }));
        }
        if !self.cur.is("{") {
            let _ = after_name;
            self.cur.reset(start);
            return Ok(None);
        }
        let body = self.block()?;
        Ok(Some(MethodDecl { name, return_type, params, body: Some(body) }))
    }

    fn formal_params(&mut self) -> Result<Vec<Param>, SyntaxError> {
        self.cur.expect("(")?;
        let mut params = Vec::new();
        while !self.cur.eat(")") {
            self.skip_modifiers()?;
            let mut ty = parse_type(&mut self.cur)?;
            if self.cur.eat("...") {
                ty.array_dims += 1;
            }
            let name = self.cur.expect_ident()?.text;
            while self.cur.is("[") && self.cur.is_at(1, "]") {
                self.cur.advance(2);
                ty.array_dims += 1;
            }
            params.push(Param { ty: Some(ty), name });
            if !self.cur.is(")") {
                self.cur.expect(",")?;
            }
        }
        Ok(params)
    }

    fn dotted(&mut self) -> Result<String, SyntaxError> {
        let mut name = self.cur.expect_ident()?.text;
        while self.cur.eat(".") {
            name.push('.');
            name.push_str(&self.cur.expect_ident()?.text);
        }
        Ok(name)
    }

    fn block(&mut self) -> Result<Vec<Stmt>, SyntaxError> {
        self.cur.expect("{")?;
        let mut out = Vec::new();
        while !self.cur.eat("}") {
            if self.cur.at_end() {
                return self.err("unterminated block");
            }
            out.push(self.statement()?);
        }
        Ok(out)
    }

    /// Speculatively parse `Type name [= init], ...` (without the `;`).
    fn local_var_decl(&mut self) -> Result<Option<Stmt>, SyntaxError> {
        let start = self.cur.position();
        let explicit = self.skip_modifiers()?;
        let ty = match parse_type(&mut self.cur) {
            Ok(t) => t,
            Err(e) => {
                if explicit {
                    return Err(e);
                }
                self.cur.reset(start);
                return Ok(None);
            }
        };
        let is_decl = self.cur.peek().is_some_and(|t| t.kind == TokenKind::Identifier)
            && (self.cur.is_at(1, "=") || self.cur.is_at(1, ";") || self.cur.is_at(1, ",") || self.cur.is_at(1, "[") || self.cur.is_at(1, ":") || self.cur.is_at(1, ")"));
        if !is_decl {
            if explicit {
                return self.err(format!("expected a variable name, found `{}`", self.found()));
            }
            self.cur.reset(start);
            return Ok(None);
        }
        let mut declarators = Vec::new();
        loop {
            let name = self.cur.expect_ident()?.text;
            let mut dims = 0;
            while self.cur.is("[") && self.cur.is_at(1, "]") {
                self.cur.advance(2);
                dims += 1;
            }
            let init = if self.cur.eat("=") {
                Some(if self.cur.is("{") { self.array_init()? } else { self.expr()? })
            } else {
                None
            };
            declarators.push(Declarator { name, dims, init });
            if !self.cur.eat(",") {
                break;
            }
        }
        Ok(Some(Stmt::LocalVar { ty, declarators }))
    }

    fn array_init(&mut self) -> Result<Expr, SyntaxError> {
        self.cur.expect("{")?;
        let mut items = Vec::new();
        while !self.cur.eat("}") {
            items.push(if self.cur.is("{") { self.array_init()? } else { self.expr()? });
            if !self.cur.is("}") {
                self.cur.expect(",")?;
            }
        }
        Ok(Expr::ArrayInit(items))
    }

    fn statement(&mut self) -> Result<Stmt, SyntaxError> {
        let Some(tok) = self.cur.peek().cloned() else {
            return self.err("expected a statement");
        };
        if tok.kind == TokenKind::Keyword || tok.kind == TokenKind::Punctuation {
            match tok.text.as_str() {
                "{" => return Ok(Stmt::Block(self.block()?)),
                ";" => {
                    self.cur.bump();
                    return Ok(Stmt::Empty);
                }
                "return" => {
                    self.cur.bump();
                    let value = if self.cur.is(";") { None } else { Some(self.expr()?) };
                    self.cur.expect(";")?;
                    return Ok(Stmt::Return(value));
                }
                "if" => {
                    self.cur.bump();
                    let cond = self.paren_expr()?;
                    let then = Box::new(self.statement()?);
                    let otherwise = if self.cur.eat("else") { Some(Box::new(self.statement()?)) } else { None };
                    return Ok(Stmt::If { cond, then, otherwise });
                }
                "while" => {
                    self.cur.bump();
                    let cond = self.paren_expr()?;
                    return Ok(Stmt::While { cond, body: Box::new(self.statement()?) });
                }
                "do" => {
                    self.cur.bump();
                    let body = Box::new(self.statement()?);
                    self.cur.expect("while")?;
                    let cond = self.paren_expr()?;
                    self.cur.expect(";")?;
                    return Ok(Stmt::DoWhile { body, cond });
                }
                "for" => return self.for_statement(),
                "switch" => {
                    self.cur.bump();
                    let selector = self.paren_expr()?;
                    let cases = self.switch_body()?;
                    return Ok(Stmt::Switch { selector, cases });
                }
                "try" => return self.try_statement(),
                "throw" => {
                    self.cur.bump();
                    let e = self.expr()?;
                    self.cur.expect(";")?;
                    return Ok(Stmt::Throw(e));
                }
                "break" | "continue" => {
                    self.cur.bump();
                    let label = if self.cur.is_kind(TokenKind::Identifier) { Some(self.cur.bump().unwrap().text) } else { None };
                    self.cur.expect(";")?;
                    return Ok(if tok.text == "break" { Stmt::Break(label) } else { Stmt::Continue(label) });
                }
                _ => {}
            }
        }
        if tok.kind == TokenKind::Identifier && tok.text == "yield" && !self.cur.is_at(1, "=") && !self.cur.is_at(1, "(") {
            self.cur.bump();
            let e = self.expr()?;
            self.cur.expect(";")?;
            return Ok(Stmt::Yield(e));
        }
        if tok.kind == TokenKind::Identifier && self.cur.is_at(1, ":") && !self.cur.is_at(1, "::") {
            self.cur.advance(2);
            return Ok(Stmt::Labeled { label: tok.text, body: Box::new(self.statement()?) });
        }
        if let Some(decl) = self.local_var_decl()? {
            self.cur.expect(";")?;
            return Ok(decl);
        }
        let e = self.expr()?;
        self.cur.expect(";")?;
        Ok(Stmt::Expr(e))
    }

    fn paren_expr(&mut self) -> Result<Expr, SyntaxError> {
        self.cur.expect("(")?;
        let e = self.expr()?;
        self.cur.expect(")")?;
        Ok(e)
    }

    fn for_statement(&mut self) -> Result<Stmt, SyntaxError> {
        self.cur.expect("for")?;
        self.cur.expect("(")?;
        let start = self.cur.position();
        self.skip_modifiers()?;
        if let Ok(ty) = parse_type(&mut self.cur) {
            if self.cur.is_kind(TokenKind::Identifier) && self.cur.is_at(1, ":") {
                let name = self.cur.bump().unwrap().text;
                self.cur.expect(":")?;
                let iterable = self.expr()?;
                self.cur.expect(")")?;
                let body = Box::new(self.statement()?);
                return Ok(Stmt::ForEach { ty, name, iterable, body });
            }
        }
        self.cur.reset(start);
        let mut init = Vec::new();
        if !self.cur.is(";") {
            if let Some(d) = self.local_var_decl()? {
                init.push(d);
            } else {
                init.push(Stmt::Expr(self.expr()?));
                while self.cur.eat(",") {
                    init.push(Stmt::Expr(self.expr()?));
                }
            }
        }
        self.cur.expect(";")?;
        let cond = if self.cur.is(";") { None } else { Some(self.expr()?) };
        self.cur.expect(";")?;
        let mut update = Vec::new();
        if !self.cur.is(")") {
            update.push(self.expr()?);
            while self.cur.eat(",") {
                update.push(self.expr()?);
            }
        }
        self.cur.expect(")")?;
        let body = Box::new(self.statement()?);
        Ok(Stmt::For { init, cond, update, body })
    }

    fn switch_body(&mut self) -> Result<Vec<SwitchCase>, SyntaxError> {
        self.cur.expect("{")?;
        let mut cases = Vec::new();
        while !self.cur.eat("}") {
            let mut labels = Vec::new();
            if self.cur.eat("default") {
            } else if self.cur.eat("case") {
                labels.push(self.ternary()?);
                while self.cur.eat(",") {
                    labels.push(self.ternary()?);
                }
            } else {
                return self.err(format!("expected `case` or `default`, found `{}`", self.found()));
            }
            let mut body = Vec::new();
            if self.cur.eat("->") {
                if self.cur.is("{") {
                    body.push(Stmt::Block(self.block()?));
                } else if self.cur.is("throw") {
                    body.push(self.statement()?);
                } else {
                    let e = self.expr()?;
                    self.cur.expect(";")?;
                    body.push(Stmt::Expr(e));
                }
            } else {
                self.cur.expect(":")?;
                while !self.cur.is("case") && !self.cur.is("default") && !self.cur.is("}") {
                    if self.cur.at_end() {
                        return self.err("unterminated switch");
                    }
                    body.push(self.statement()?);
                }
            }
            cases.push(SwitchCase { labels, body });
        }
        Ok(cases)
    }

    fn try_statement(&mut self) -> Result<Stmt, SyntaxError> {
        self.cur.expect("try")?;
        let mut resources = Vec::new();
        if self.cur.eat("(") {
            while !self.cur.eat(")") {
                match self.local_var_decl()? {
                    Some(d) => resources.push(d),
                    None => resources.push(Stmt::Expr(self.expr()?)),
                }
                self.cur.eat(";");
            }
        }
        let body = self.block()?;
        let mut catches = Vec::new();
        while self.cur.eat("catch") {
            self.cur.expect("(")?;
            self.skip_modifiers()?;
            let mut types = vec![parse_type(&mut self.cur)?];
            while self.cur.eat("|") {
                types.push(parse_type(&mut self.cur)?);
            }
            let name = self.cur.expect_ident()?.text;
            self.cur.expect(")")?;
            catches.push(CatchClause { types, name, body: self.block()? });
        }
        let finally = if self.cur.eat("finally") { Some(self.block()?) } else { None };
        if catches.is_empty() && finally.is_none() && resources.is_empty() {
            return self.err("`try` without `catch` or `finally`");
        }
        Ok(Stmt::Try { resources, body, catches, finally })
    }

    // ---- expressions ----

    pub fn expr(&mut self) -> Result<Expr, SyntaxError> {
        if let Some(lambda) = self.try_lambda()? {
            return Ok(lambda);
        }
        let lhs = self.ternary()?;
        if let Some((op, n)) = self.cur.peek_operator() {
            if matches!(op.as_str(), "=" | "+=" | "-=" | "*=" | "/=" | "%=" | "&=" | "|=" | "^=" | "<<=" | ">>=" | ">>>=") {
                if !matches!(lhs, Expr::Name(_) | Expr::Field { .. } | Expr::Index { .. }) {
                    return self.err("invalid assignment target");
                }
                self.cur.advance(n);
                let value = if self.cur.is("{") { self.array_init()? } else { self.expr()? };
                return Ok(Expr::Assign { op, target: Box::new(lhs), value: Box::new(value) });
            }
        }
        Ok(lhs)
    }

    fn try_lambda(&mut self) -> Result<Option<Expr>, SyntaxError> {
        let start = self.cur.position();
        let params = if self.cur.is_kind(TokenKind::Identifier) && self.cur.is_at(1, "->") {
            vec![Param { ty: None, name: self.cur.bump().unwrap().text }]
        } else if self.cur.is("(") {
            // find the matching paren and check for `->`
            let mut depth = 0usize;
            let mut i = 0;
            loop {
                match self.cur.peek_at(i) {
                    Some(t) if t.kind != TokenKind::Literal && t.text == "(" => depth += 1,
                    Some(t) if t.kind != TokenKind::Literal && t.text == ")" => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    Some(_) => {}
                    None => return Ok(None),
                }
                i += 1;
            }
            if !self.cur.is_at(i + 1, "->") {
                return Ok(None);
            }
            self.cur.bump();
            let mut params = Vec::new();
            while !self.cur.eat(")") {
                self.skip_modifiers()?;
                if self.cur.is_kind(TokenKind::Identifier) && (self.cur.is_at(1, ",") || self.cur.is_at(1, ")")) {
                    params.push(Param { ty: None, name: self.cur.bump().unwrap().text });
                } else {
                    let ty = parse_type(&mut self.cur)?;
                    params.push(Param { ty: Some(ty), name: self.cur.expect_ident()?.text });
                }
                if !self.cur.is(")") {
                    self.cur.expect(",")?;
                }
            }
            params
        } else {
            return Ok(None);
        };
        if !self.cur.eat("->") {
            self.cur.reset(start);
            return Ok(None);
        }
        let body = if self.cur.is("{") { LambdaBody::Block(self.block()?) } else { LambdaBody::Expr(Box::new(self.expr()?)) };
        Ok(Some(Expr::Lambda { params, body }))
    }

    fn ternary(&mut self) -> Result<Expr, SyntaxError> {
        let cond = self.binary(0)?;
        if self.cur.eat("?") {
            let then = if let Some(l) = self.try_lambda()? { l } else { self.ternary()? };
            self.cur.expect(":")?;
            let otherwise = if let Some(l) = self.try_lambda()? { l } else { self.ternary()? };
            return Ok(Expr::Conditional { cond: Box::new(cond), then: Box::new(then), otherwise: Box::new(otherwise) });
        }
        Ok(cond)
    }

    fn binary_precedence(op: &str) -> Option<u8> {
        Some(match op {
            "||" => 1,
            "&&" => 2,
            "|" => 3,
            "^" => 4,
            "&" => 5,
            "==" | "!=" => 6,
            "<" | ">" | "<=" | ">=" => 7,
            "<<" | ">>" | ">>>" => 8,
            "+" | "-" => 9,
            "*" | "/" | "%" => 10,
            _ => return None,
        })
    }

    fn binary(&mut self, min_prec: u8) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            if self.cur.is("instanceof") {
                if 7 < min_prec {
                    break;
                }
                self.cur.bump();
                self.cur.eat("final");
                let ty = parse_type(&mut self.cur)?;
                let binding = if self.cur.is_kind(TokenKind::Identifier) { Some(self.cur.bump().unwrap().text) } else { None };
                lhs = Expr::InstanceOf { expr: Box::new(lhs), ty, binding };
                continue;
            }
            let Some((op, n)) = self.cur.peek_operator() else { break };
            let Some(prec) = Self::binary_precedence(&op) else { break };
            if prec < min_prec {
                break;
            }
            self.cur.advance(n);
            let rhs = self.binary(prec + 1)?;
            lhs = Expr::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if let Some((op, _)) = self.cur.peek_operator() {
            if matches!(op.as_str(), "+" | "-" | "!" | "~" | "++" | "--") {
                self.cur.bump();
                let expr = self.unary()?;
                return Ok(Expr::Unary { op, expr: Box::new(expr), postfix: false });
            }
        }
        if self.cur.is("(") {
            if let Some(cast) = self.try_cast()? {
                return Ok(cast);
            }
        }
        let mut e = self.primary()?;
        loop {
            if self.cur.is("++") || self.cur.is("--") {
                let op = self.cur.bump().unwrap().text;
                e = Expr::Unary { op, expr: Box::new(e), postfix: true };
            } else {
                return Ok(e);
            }
        }
    }

    fn try_cast(&mut self) -> Result<Option<Expr>, SyntaxError> {
        let start = self.cur.position();
        self.cur.expect("(")?;
        let Ok(ty) = parse_type(&mut self.cur) else {
            self.cur.reset(start);
            return Ok(None);
        };
        while self.cur.eat("&") {
            if parse_type(&mut self.cur).is_err() {
                self.cur.reset(start);
                return Ok(None);
            }
        }
        if !self.cur.eat(")") {
            self.cur.reset(start);
            return Ok(None);
        }
        let primitive = ty.array_dims == 0 && PRIMITIVES.contains(&ty.name.as_str());
        let next_starts_operand = match self.cur.peek() {
            None => false,
            Some(t) => match t.kind {
                TokenKind::Identifier | TokenKind::Literal => true,
                TokenKind::Keyword => matches!(t.text.as_str(), "this" | "super" | "new" | "switch") || PRIMITIVES.contains(&t.text.as_str()),
                TokenKind::Punctuation => t.text == "(",
                TokenKind::Operator => matches!(t.text.as_str(), "!" | "~") || (primitive && matches!(t.text.as_str(), "+" | "-" | "++" | "--")),
                _ => false,
            },
        };
        if !next_starts_operand {
            self.cur.reset(start);
            return Ok(None);
        }
        // `(a) + b` style ambiguity: only lowercase single names after a
        // reference-type cast in parentheses are treated as grouping.
        let expr = if let Some(l) = self.try_lambda()? { l } else { self.unary()? };
        Ok(Some(Expr::Cast { ty, expr: Box::new(expr) }))
    }

    fn arguments(&mut self) -> Result<Vec<Expr>, SyntaxError> {
        self.cur.expect("(")?;
        let mut args = Vec::new();
        while !self.cur.eat(")") {
            args.push(self.expr()?);
            if !self.cur.is(")") {
                self.cur.expect(",")?;
            }
        }
        Ok(args)
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        let Some(tok) = self.cur.peek().cloned() else {
            return self.err("expected an expression, found end of input");
        };
        let mut e = match tok.kind {
            TokenKind::Literal => {
                self.cur.bump();
                Expr::Literal { kind: literal_kind(&tok.text), text: tok.text }
            }
            TokenKind::Identifier => {
                self.cur.bump();
                if self.cur.is("(") {
                    Expr::Call { target: None, name: tok.text, args: self.arguments()? }
                } else if self.cur.is("[") && self.cur.is_at(1, "]") {
                    // array type in expression position: String[]::new, int[].class
                    let mut ty = TypeRef::named(tok.text);
                    while self.cur.is("[") && self.cur.is_at(1, "]") {
                        self.cur.advance(2);
                        ty.array_dims += 1;
                    }
                    Expr::TypeExpr(ty)
                } else if self.cur.is("<") && self.generic_type_ahead() {
                    // List<String>::new
                    let start = self.cur.position();
                    let args = type_arguments(&mut self.cur)?;
                    if self.cur.is("::") {
                        Expr::TypeExpr(TypeRef::generic(tok.text, args))
                    } else {
                        self.cur.reset(start);
                        Expr::Name(tok.text)
                    }
                } else {
                    Expr::Name(tok.text)
                }
            }
            TokenKind::Keyword => match tok.text.as_str() {
                "this" => {
                    self.cur.bump();
                    if self.cur.is("(") {
                        Expr::Call { target: None, name: "this".into(), args: self.arguments()? }
                    } else {
                        Expr::This
                    }
                }
                "super" => {
                    self.cur.bump();
                    if self.cur.is("(") {
                        Expr::Call { target: None, name: "super".into(), args: self.arguments()? }
                    } else {
                        Expr::Super
                    }
                }
                "new" => self.creation()?,
                "switch" => {
                    self.cur.bump();
                    let selector = self.paren_expr()?;
                    let cases = self.switch_body()?;
                    // switch expressions are rare in transfer scripts; keep the
                    // structure by wrapping it in a lambda-like block
                    Expr::Lambda { params: vec![], body: LambdaBody::Block(vec![Stmt::Switch { selector, cases }]) }
                }
                p if PRIMITIVES.contains(&p) => {
                    let ty = parse_type(&mut self.cur)?;
                    if self.cur.eat(".") {
                        self.cur.expect("class")?;
                        Expr::ClassLit(ty)
                    } else {
                        Expr::TypeExpr(ty)
                    }
                }
                _ => return self.err(format!("unexpected `{}` in expression", tok.text)),
            },
            TokenKind::Punctuation if tok.text == "(" => {
                self.cur.bump();
                let inner = self.expr()?;
                self.cur.expect(")")?;
                inner
            }
            _ => return self.err(format!("unexpected `{}` in expression", tok.text)),
        };
        loop {
            if self.cur.eat(".") {
                if self.cur.is("<") {
                    type_arguments(&mut self.cur)?;
                }
                if self.cur.eat("class") {
                    e = Expr::ClassLit(expr_as_type(&e).unwrap_or_else(|| TypeRef::named("?")));
                    continue;
                }
                if self.cur.is("new") {
                    // inner class creation: outer.new Inner()
                    e = self.creation()?;
                    continue;
                }
                let name = match self.cur.peek() {
                    Some(t) if t.kind == TokenKind::Identifier || t.text == "this" || t.text == "super" => self.cur.bump().unwrap().text,
                    _ => return self.err(format!("expected member name, found `{}`", self.found())),
                };
                if self.cur.is("(") {
                    let args = self.arguments()?;
                    e = Expr::Call { target: Some(Box::new(e)), name, args };
                } else {
                    e = Expr::Field { target: Box::new(e), name };
                }
            } else if self.cur.is("[") {
                self.cur.bump();
                let index = self.expr()?;
                self.cur.expect("]")?;
                e = Expr::Index { target: Box::new(e), index: Box::new(index) };
            } else if self.cur.eat("::") {
                if self.cur.is("<") {
                    type_arguments(&mut self.cur)?;
                }
                let name = if self.cur.eat("new") { "new".to_string() } else { self.cur.expect_ident()?.text };
                e = Expr::MethodRef { target: Box::new(e), name };
            } else {
                return Ok(e);
            }
        }
    }

    /// Cheap lookahead: `<` followed by something that closes as a type list before `::`.
    fn generic_type_ahead(&self) -> bool {
        let mut depth = 0i32;
        let mut i = 0;
        while let Some(t) = self.cur.peek_at(i) {
            match t.text.as_str() {
                "<" => depth += 1,
                ">" => {
                    depth -= 1;
                    if depth == 0 {
                        return self.cur.is_at(i + 1, "::");
                    }
                }
                "," | "." | "?" | "[" | "]" | "extends" | "super" => {}
                _ if t.kind == TokenKind::Identifier || t.kind == TokenKind::Keyword => {}
                _ => return false,
            }
            i += 1;
        }
        false
    }

    fn creation(&mut self) -> Result<Expr, SyntaxError> {
        self.cur.expect("new")?;
        let mut ty = parse_type_no_dims(&mut self.cur)?;
        if self.cur.is("[") {
            let mut dims = Vec::new();
            while self.cur.eat("[") {
                if self.cur.eat("]") {
                    ty.array_dims += 1;
                } else {
                    dims.push(self.expr()?);
                    self.cur.expect("]")?;
                    ty.array_dims += 1;
                }
            }
            let init = if self.cur.is("{") {
                match self.array_init()? {
                    Expr::ArrayInit(items) => Some(items),
                    _ => unreachable!(),
                }
            } else {
                None
            };
            return Ok(Expr::NewArray { ty, dims, init });
        }
        let args = self.arguments()?;
        let anonymous_body = self.cur.is("{");
        if anonymous_body {
            self.cur.skip_balanced("{", "}")?;
        }
        Ok(Expr::New { ty, args, anonymous_body })
    }
}

fn parse_type_no_dims(cur: &mut Cursor) -> Result<TypeRef, SyntaxError> {
    // parse_type would swallow `[]` pairs but not `[expr]`; creation handles both.
    let start = cur.position();
    let t = parse_type(cur)?;
    if t.array_dims > 0 {
        cur.reset(start);
        // re-parse up to the first bracket
        let mut base = TypeRef::named(cur.bump().unwrap().text);
        while cur.is(".") {
            cur.bump();
            base.name.push('.');
            base.name.push_str(&cur.expect_ident()?.text);
        }
        if cur.is("<") {
            base.args = type_arguments(cur)?;
        }
        return Ok(base);
    }
    Ok(t)
}

fn expr_as_type(e: &Expr) -> Option<TypeRef> {
    match e {
        Expr::Name(n) => Some(TypeRef::named(n.clone())),
        Expr::Field { target, name } => expr_as_type(target).map(|mut t| {
            t.name.push('.');
            t.name.push_str(name);
            t
        }),
        Expr::TypeExpr(t) => Some(t.clone()),
        _ => None,
    }
}

fn literal_kind(text: &str) -> LitKind {
    match text {
        "true" | "false" => LitKind::Bool,
        "null" => LitKind::Null,
        _ if text.starts_with('"') => LitKind::Str,
        _ if text.starts_with('\'') => LitKind::Char,
        _ => {
            let lower = text.to_ascii_lowercase();
            let hex = lower.starts_with("0x");
            if !hex && (lower.contains('.') || lower.contains('e') || lower.ends_with('f') || lower.ends_with('d')) {
                LitKind::Float
            } else {
                LitKind::Int
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stmts(src: &str) -> Vec<Stmt> {
        parse_snippet(src).unwrap().statements().cloned().collect()
    }

    #[test]
    fn mapping_script() {
        let src = r#"
InventoryResponseDTO response = new InventoryResponseDTO();
response.setName(inventoryInfoDTO.inventoryName);
// Copy identical fields
BeanUtils.copyProperties(inventoryInfoDTO, response);
SKUInfo skuInfo = new SKUInfo();
skuInfo.setSkuName(skuInfoDTO.getSkuName());
skuInfo.setOwnName(user.getName());
response.setSku(skuInfo);
"#;
        let s = stmts(src);
        assert_eq!(s.len(), 7);
        assert!(matches!(&s[0], Stmt::LocalVar { ty, .. } if ty.name == "InventoryResponseDTO"));
        match &s[1] {
            Stmt::Expr(Expr::Call { target: Some(t), name, args }) => {
                assert_eq!(**t, Expr::Name("response".into()));
                assert_eq!(name, "setName");
                assert!(matches!(&args[0], Expr::Field { name, .. } if name == "inventoryName"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn stream_pipeline_with_lambdas_and_method_refs() {
        let src = r#"
Integer skuForm = Optional.ofNullable(asnOrder)
        .map(AsnOrder::getAsnOrderItems)
        .filter(CollectionUtils::isNotEmpty)
        .map(it -> it.get(0))
        .map(AsnOrderItem::getSkuForm)
        .orElse(SkuFormEnum.GOOD.getCode());
shelfOrder.setShelfItems(requestModel.getSkus()
        .stream()
        .filter(Sku::getIsCheck)
        .map(it -> {
            ShelfItem shelfItem = new ShelfItem();
            shelfItem.setQuantity(it.getQuantity());
            return shelfItem;
        })
        .collect(Collectors.toList()));
return param;
"#;
        let s = stmts(src);
        assert_eq!(s.len(), 3);
        assert!(matches!(s[2], Stmt::Return(Some(Expr::Name(_)))));
    }

    #[test]
    fn generics_casts_and_shifts() {
        let s = stmts("Map<String, List<Integer>> m = new HashMap<>(); int x = (int) y >> 2; Object o = (Foo) bar; int z = (a) + b; x >>= 1; boolean k = a < b && c > d;");
        assert_eq!(s.len(), 6);
        match &s[1] {
            Stmt::LocalVar { declarators, .. } => match declarators[0].init.as_ref().unwrap() {
                Expr::Binary { op, lhs, .. } => {
                    assert_eq!(op, ">>");
                    assert!(matches!(**lhs, Expr::Cast { .. }));
                }
                other => panic!("{other:?}"),
            },
            other => panic!("{other:?}"),
        }
        match &s[3] {
            Stmt::LocalVar { declarators, .. } => assert!(matches!(declarators[0].init, Some(Expr::Binary { .. }))),
            other => panic!("{other:?}"),
        }
        assert!(matches!(&s[4], Stmt::Expr(Expr::Assign { op, .. }) if op == ">>="));
    }

    #[test]
    fn control_flow() {
        let src = r#"
for (WarehouseArea area : warehouse.getAreas()) {
    if (area != null && area.getCode() != null) { list.add(area); } else continue;
}
for (int i = 0, j = 1; i < n; i++, j--) total += i;
while (it.hasNext()) it.next();
do { x--; } while (x > 0);
switch (kind) { case A: case B: y = 1; break; default: y = 2; }
switch (kind) { case A -> y = 1; default -> { y = 2; } }
try { risky(); } catch (IOException | RuntimeException e) { log(e); } finally { close(); }
label: for (;;) { break label; }
"#;
        assert_eq!(stmts(src).len(), 8);
    }

    #[test]
    fn methods_and_classes() {
        let src = r#"
import java.util.List;
public class Converter {
    private static final int LIMIT = 10;
    public InventoryResponseDTO convert(InventoryInfoDTO in, List<SKUInfoDTO> skus) throws Exception {
        InventoryResponseDTO r = new InventoryResponseDTO();
        return r;
    }
    Converter() { }
}
"#;
        let snip = parse_snippet(src).unwrap();
        assert_eq!(snip.items.len(), 2);
        match &snip.items[1] {
            Item::Class { items, .. } => {
                assert_eq!(items.len(), 3);
                assert!(matches!(&items[1], Item::Method(m) if m.name == "convert" && m.params.len() == 2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn arrays_and_misc() {
        let s = stmts("int[] a = {1, 2}; String[][] b = new String[2][]; int c = a[0]; Object[] d = new Object[]{x, y}; Supplier<List<String>> e = ArrayList::new; Function<Integer, int[]> f = int[]::new; Class<?> k = String.class; boolean g = o instanceof Foo foo;");
        assert_eq!(s.len(), 8);
    }

    #[test]
    fn syntax_errors() {
        for bad in ["int a = ;", "foo(;", "a.b(", "x = = 1;", "if (a { }", "return a b;"] {
            assert!(parse_snippet(bad).is_err(), "{bad} should not parse");
        }
        let e = parse_snippet("int a = 1;\nfoo(;").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn call_statement_is_not_a_method_declaration() {
        let s = stmts("foo(a, b); BeanUtils.copyProperties(src, dst);");
        assert_eq!(s.len(), 2);
    }
}
