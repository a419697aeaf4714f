use std::collections::BTreeMap;

use crate::model::TypeRef;
use crate::syntax::ast::{Expr, Item, LambdaBody, Param, Snippet, Stmt};

/// Identifier leaves all carry this label.
pub const ANON: &str = "_";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    pub label: String,
    pub children: Vec<Tree>,
}

impl Tree {
    fn leaf(label: impl Into<String>) -> Tree {
        Tree { label: label.into(), children: Vec::new() }
    }

    fn node(label: &str, children: Vec<Tree>) -> Tree {
        Tree { label: label.to_string(), children }
    }

    pub fn sexpr(&self) -> String {
        if self.children.is_empty() {
            return self.label.clone();
        }
        let inner: Vec<String> = self.children.iter().map(Tree::sexpr).collect();
        format!("({} {})", self.label, inner.join(" "))
    }

    /// Serialized subtrees of depth two or more, one per inner node.
    pub fn subtrees(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<String>) {
        if !self.children.is_empty() {
            out.push(self.sexpr());
            for c in &self.children {
                c.collect(out);
            }
        }
    }
}

fn ty(t: &TypeRef) -> Tree {
    let base = if t.is_primitive() || t.name == "void" || t.name == "?" { t.name.clone() } else { ANON.to_string() };
    let mut label = base;
    for _ in 0..t.array_dims {
        label.push_str("[]");
    }
    if t.args.is_empty() {
        Tree::leaf(label)
    } else {
        Tree::node(&label, t.args.iter().map(ty).collect())
    }
}

fn opt(label: &str, e: &Option<Expr>) -> Tree {
    match e {
        Some(e) => Tree::node(label, vec![expr(e)]),
        None => Tree::leaf(label),
    }
}

fn params(ps: &[Param]) -> Vec<Tree> {
    ps.iter()
        .map(|p| match &p.ty {
            Some(t) => Tree::node("param", vec![ty(t), Tree::leaf(ANON)]),
            None => Tree::leaf(ANON),
        })
        .collect()
}

pub fn expr(e: &Expr) -> Tree {
    let b = |x: &Expr| expr(x);
    match e {
        Expr::Literal { text, .. } => Tree::leaf(text.clone()),
        Expr::Name(_) => Tree::leaf(ANON),
        Expr::This => Tree::leaf("this"),
        Expr::Super => Tree::leaf("super"),
        Expr::Field { target, .. } => Tree::node("field", vec![b(target), Tree::leaf(ANON)]),
        Expr::Call { target, args, .. } => {
            let mut c: Vec<Tree> = target.iter().map(|t| b(t)).collect();
            c.push(Tree::leaf(ANON));
            c.push(Tree::node("args", args.iter().map(b).collect()));
            Tree::node("call", c)
        }
        Expr::New { ty: t, args, anonymous_body } => {
            Tree::node(if *anonymous_body { "new_anon" } else { "new" }, std::iter::once(ty(t)).chain(args.iter().map(b)).collect())
        }
        Expr::NewArray { ty: t, dims, init } => {
            let mut c = vec![ty(t)];
            c.extend(dims.iter().map(b));
            if let Some(i) = init {
                c.push(Tree::node("init", i.iter().map(b).collect()));
            }
            Tree::node("new_array", c)
        }
        Expr::ArrayInit(items) => Tree::node("init", items.iter().map(b).collect()),
        Expr::Index { target, index } => Tree::node("index", vec![b(target), b(index)]),
        Expr::Unary { op, expr: x, postfix } => Tree::node(if *postfix { "postfix" } else { "prefix" }, vec![Tree::leaf(op.clone()), b(x)]),
        Expr::Binary { op, lhs, rhs } => Tree::node("binary", vec![b(lhs), Tree::leaf(op.clone()), b(rhs)]),
        Expr::Assign { op, target, value } => Tree::node("assign", vec![b(target), Tree::leaf(op.clone()), b(value)]),
        Expr::Conditional { cond, then, otherwise } => Tree::node("cond", vec![b(cond), b(then), b(otherwise)]),
        Expr::Cast { ty: t, expr: x } => Tree::node("cast", vec![ty(t), b(x)]),
        Expr::InstanceOf { expr: x, ty: t, binding } => {
            let mut c = vec![b(x), ty(t)];
            if binding.is_some() {
                c.push(Tree::leaf(ANON));
            }
            Tree::node("instanceof", c)
        }
        Expr::Lambda { params: ps, body } => {
            let body = match body {
                LambdaBody::Expr(x) => b(x),
                LambdaBody::Block(stmts) => Tree::node("block", stmts.iter().map(stmt).collect()),
            };
            Tree::node("lambda", vec![Tree::node("params", params(ps)), body])
        }
        Expr::MethodRef { target, .. } => Tree::node("method_ref", vec![b(target), Tree::leaf(ANON)]),
        Expr::ClassLit(t) => Tree::node("class_lit", vec![ty(t)]),
        Expr::TypeExpr(t) => ty(t),
    }
}

fn block(label: &str, stmts: &[Stmt]) -> Tree {
    Tree::node(label, stmts.iter().map(stmt).collect())
}

pub fn stmt(s: &Stmt) -> Tree {
    match s {
        Stmt::LocalVar { ty: t, declarators } => {
            let mut c = vec![ty(t)];
            for d in declarators {
                let mut v = vec![Tree::leaf(ANON)];
                v.extend(d.init.iter().map(expr));
                c.push(Tree::node("var", v));
            }
            Tree::node("local", c)
        }
        Stmt::Expr(e) => Tree::node("expr_stmt", vec![expr(e)]),
        Stmt::Return(e) => opt("return", e),
        Stmt::If { cond, then, otherwise } => {
            let mut c = vec![expr(cond), stmt(then)];
            c.extend(otherwise.iter().map(|o| stmt(o)));
            Tree::node("if", c)
        }
        Stmt::While { cond, body } => Tree::node("while", vec![expr(cond), stmt(body)]),
        Stmt::DoWhile { body, cond } => Tree::node("do", vec![stmt(body), expr(cond)]),
        Stmt::For { init, cond, update, body } => Tree::node(
            "for",
            vec![block("for_init", init), opt("for_cond", cond), Tree::node("for_update", update.iter().map(expr).collect()), stmt(body)],
        ),
        Stmt::ForEach { ty: t, iterable, body, .. } => Tree::node("foreach", vec![ty(t), Tree::leaf(ANON), expr(iterable), stmt(body)]),
        Stmt::Block(stmts) => block("block", stmts),
        Stmt::Switch { selector, cases } => {
            let mut c = vec![expr(selector)];
            for case in cases {
                let mut k: Vec<Tree> = case.labels.iter().map(expr).collect();
                if k.is_empty() {
                    k.push(Tree::leaf("default"));
                }
                k.extend(case.body.iter().map(stmt));
                c.push(Tree::node("case", k));
            }
            Tree::node("switch", c)
        }
        Stmt::Try { resources, body, catches, finally } => {
            let mut c = vec![block("resources", resources), block("block", body)];
            for cc in catches {
                let mut k: Vec<Tree> = cc.types.iter().map(ty).collect();
                k.push(Tree::leaf(ANON));
                k.push(block("block", &cc.body));
                c.push(Tree::node("catch", k));
            }
            if let Some(f) = finally {
                c.push(block("finally", f));
            }
            Tree::node("try", c)
        }
        Stmt::Throw(e) => Tree::node("throw", vec![expr(e)]),
        Stmt::Break(l) => Tree::leaf(if l.is_some() { "break_label" } else { "break" }),
        Stmt::Continue(l) => Tree::leaf(if l.is_some() { "continue_label" } else { "continue" }),
        Stmt::Labeled { body, .. } => Tree::node("labeled", vec![stmt(body)]),
        Stmt::Yield(e) => Tree::node("yield", vec![expr(e)]),
        Stmt::Empty => Tree::leaf("empty"),
    }
}

fn item(i: &Item) -> Tree {
    match i {
        Item::Stmt(s) => stmt(s),
        Item::Method(m) => {
            let mut c = vec![m.return_type.as_ref().map(ty).unwrap_or_else(|| Tree::leaf("ctor")), Tree::leaf(ANON), Tree::node("params", params(&m.params))];
            if let Some(body) = &m.body {
                c.push(block("block", body));
            }
            Tree::node("method", c)
        }
        Item::Class { items, .. } => Tree::node("class", std::iter::once(Tree::leaf(ANON)).chain(items.iter().map(item)).collect()),
        Item::Import(_) => Tree::leaf("import"),
        Item::Package(_) => Tree::leaf("package"),
    }
}

pub fn snippet_tree(s: &Snippet) -> Tree {
    Tree::node("snippet", s.items.iter().map(item).collect())
}

/// Size of the multiset intersection of two subtree lists.
pub fn multiset_overlap(a: &[String], b: &[String]) -> usize {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for s in b {
        *counts.entry(s).or_default() += 1;
    }
    let mut hit = 0;
    for s in a {
        if let Some(c) = counts.get_mut(s.as_str()).filter(|c| **c > 0) {
            *c -= 1;
            hit += 1;
        }
    }
    hit
}
