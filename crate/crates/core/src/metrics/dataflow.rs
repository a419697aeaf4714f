use std::collections::BTreeMap;

use crate::syntax::ast::{Expr, Item, LambdaBody, Snippet, Stmt};

/// A value flowing from one definition into another (`Some`) or into a
/// statement that only consumes it (`None`). Definitions are numbered in
/// the order they occur, so names do not matter.
pub type FlowEdge = (usize, Option<usize>);

#[derive(Default)]
struct Flow {
    current: BTreeMap<String, usize>,
    next: usize,
    edges: Vec<FlowEdge>,
}

impl Flow {
    fn define(&mut self, name: &str) -> usize {
        let d = self.next;
        self.next += 1;
        self.current.insert(name.to_string(), d);
        d
    }

    /// Current definition of `name`. An unseen lowercase name is a free
    /// variable (a parameter) and gets its definition on first use; an
    /// unseen capitalised name is a type.
    fn lookup(&mut self, name: &str) -> Option<usize> {
        if let Some(&d) = self.current.get(name) {
            return Some(d);
        }
        if name.chars().next().is_some_and(|c| c.is_uppercase()) {
            return None;
        }
        Some(self.define(name))
    }

    fn uses(&mut self, e: &Expr, out: &mut Vec<usize>) {
        match e {
            Expr::Name(n) => out.extend(self.lookup(n)),
            Expr::Literal { .. } | Expr::This | Expr::Super | Expr::ClassLit(_) | Expr::TypeExpr(_) => {}
            Expr::Field { target, .. } | Expr::MethodRef { target, .. } => self.uses(target, out),
            Expr::Call { target, args, .. } => {
                if let Some(t) = target {
                    self.uses(t, out);
                }
                for a in args {
                    self.uses(a, out);
                }
            }
            Expr::New { args, .. } => args.iter().for_each(|a| self.uses(a, out)),
            Expr::NewArray { dims, init, .. } => {
                dims.iter().chain(init.iter().flatten()).for_each(|a| self.uses(a, out));
            }
            Expr::ArrayInit(items) => items.iter().for_each(|a| self.uses(a, out)),
            Expr::Index { target, index } => {
                self.uses(target, out);
                self.uses(index, out);
            }
            Expr::Unary { expr, .. } | Expr::Cast { expr, .. } | Expr::InstanceOf { expr, .. } => self.uses(expr, out),
            Expr::Binary { lhs, rhs, .. } => {
                self.uses(lhs, out);
                self.uses(rhs, out);
            }
            Expr::Assign { target, value, .. } => {
                self.uses(target, out);
                self.uses(value, out);
            }
            Expr::Conditional { cond, then, otherwise } => {
                self.uses(cond, out);
                self.uses(then, out);
                self.uses(otherwise, out);
            }
            Expr::Lambda { params, body } => {
                for p in params {
                    self.define(&p.name);
                }
                match body {
                    LambdaBody::Expr(x) => self.uses(x, out),
                    LambdaBody::Block(stmts) => stmts.iter().for_each(|s| self.stmt(s)),
                }
            }
        }
    }

    fn flow_into(&mut self, mut from: Vec<usize>, to: Option<usize>) {
        from.sort_unstable();
        from.dedup();
        self.edges.extend(from.into_iter().map(|f| (f, to)));
    }

    fn sink(&mut self, e: &Expr) {
        let mut u = Vec::new();
        self.uses(e, &mut u);
        self.flow_into(u, None);
    }

    /// The variable an expression statement writes: the assigned name, the
    /// receiver of a method call, or the root of a field/index target.
    fn written(e: &Expr) -> Option<&str> {
        fn root(e: &Expr) -> Option<&str> {
            match e {
                Expr::Name(n) => Some(n),
                Expr::Field { target, .. } | Expr::Index { target, .. } => root(target),
                Expr::Call { target: Some(t), .. } => root(t),
                _ => None,
            }
        }
        match e {
            Expr::Assign { target, .. } => root(target),
            Expr::Unary { op, expr, .. } if op == "++" || op == "--" => root(expr),
            Expr::Call { target: Some(t), .. } => root(t),
            _ => None,
        }
    }

    fn expr_stmt(&mut self, e: &Expr) {
        let mut u = Vec::new();
        match e {
            // a plain `x = v` does not read the old x
            Expr::Assign { op, target, value } if op == "=" && matches!(**target, Expr::Name(_)) => self.uses(value, &mut u),
            _ => self.uses(e, &mut u),
        }
        let target = Self::written(e).filter(|n| !n.chars().next().is_some_and(|c| c.is_uppercase()));
        let to = target.map(|n| self.define(n));
        self.flow_into(u, to);
    }

    fn stmt(&mut self, s: &Stmt) {
        match s {
            Stmt::LocalVar { declarators, .. } => {
                for d in declarators {
                    let mut u = Vec::new();
                    if let Some(i) = &d.init {
                        self.uses(i, &mut u);
                    }
                    let to = self.define(&d.name);
                    self.flow_into(u, Some(to));
                }
            }
            Stmt::Expr(e) => self.expr_stmt(e),
            Stmt::Return(e) => {
                if let Some(e) = e {
                    self.sink(e);
                }
            }
            Stmt::Throw(e) | Stmt::Yield(e) => self.sink(e),
            Stmt::If { cond, then, otherwise } => {
                self.sink(cond);
                self.stmt(then);
                if let Some(o) = otherwise {
                    self.stmt(o);
                }
            }
            Stmt::While { cond, body } | Stmt::DoWhile { body, cond } => {
                self.sink(cond);
                self.stmt(body);
            }
            Stmt::For { init, cond, update, body } => {
                init.iter().for_each(|s| self.stmt(s));
                if let Some(c) = cond {
                    self.sink(c);
                }
                self.stmt(body);
                update.iter().for_each(|u| self.expr_stmt(u));
            }
            Stmt::ForEach { name, iterable, body, .. } => {
                let mut u = Vec::new();
                self.uses(iterable, &mut u);
                let to = self.define(name);
                self.flow_into(u, Some(to));
                self.stmt(body);
            }
            Stmt::Block(stmts) => stmts.iter().for_each(|s| self.stmt(s)),
            Stmt::Switch { selector, cases } => {
                self.sink(selector);
                for c in cases {
                    c.body.iter().for_each(|s| self.stmt(s));
                }
            }
            Stmt::Try { resources, body, catches, finally } => {
                resources.iter().chain(body).for_each(|s| self.stmt(s));
                for c in catches {
                    self.define(&c.name);
                    c.body.iter().for_each(|s| self.stmt(s));
                }
                finally.iter().flatten().for_each(|s| self.stmt(s));
            }
            Stmt::Labeled { body, .. } => self.stmt(body),
            Stmt::Break(_) | Stmt::Continue(_) | Stmt::Empty => {}
        }
    }

    fn item(&mut self, i: &Item) {
        match i {
            Item::Stmt(s) => self.stmt(s),
            Item::Method(m) => {
                for p in &m.params {
                    self.define(&p.name);
                }
                m.body.iter().flatten().for_each(|s| self.stmt(s));
            }
            Item::Class { items, .. } => items.iter().for_each(|i| self.item(i)),
            Item::Import(_) | Item::Package(_) => {}
        }
    }
}

pub fn flow_edges(s: &Snippet) -> Vec<FlowEdge> {
    let mut f = Flow::default();
    s.items.iter().for_each(|i| f.item(i));
    f.edges
}
