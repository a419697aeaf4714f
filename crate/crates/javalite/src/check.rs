use std::collections::BTreeMap;

use ccci_core::constructor::variable_name;
use ccci_core::model::TypeRef;
use ccci_core::syntax::ast::{Expr, Item, LitKind, Snippet, Stmt};

use crate::methods::{method_type, static_class, Callee};
use crate::world::{Prim, Ty, World};

const BOOLEAN: Ty = Ty::Prim(Prim::Boolean);

pub fn literal_ty(kind: LitKind, text: &str) -> Ty {
    match kind {
        LitKind::Int if text.ends_with(['l', 'L']) => Ty::Prim(Prim::Long),
        LitKind::Int => Ty::Prim(Prim::Int),
        LitKind::Float if text.ends_with(['f', 'F']) => Ty::Prim(Prim::Float),
        LitKind::Float => Ty::Prim(Prim::Double),
        LitKind::Str => Ty::Str,
        LitKind::Char => Ty::Prim(Prim::Char),
        LitKind::Bool => BOOLEAN,
        LitKind::Null => Ty::Null,
    }
}

/// Input variables bound for a script: one per task input, named after its class.
pub fn script_parameters(world: &World) -> Vec<(String, Ty)> {
    world.task.input_class_names.iter().map(|c| (variable_name(c), world.ty(&TypeRef::named(c.as_str())))).collect()
}

pub fn is_boolean(t: &Ty) -> bool {
    matches!(t, Ty::Prim(Prim::Boolean) | Ty::Boxed(Prim::Boolean) | Ty::Unknown)
}

struct Checker<'w> {
    world: &'w World,
    scopes: Vec<BTreeMap<String, Ty>>,
    errors: Vec<String>,
    output: Ty,
    loops: usize,
}

impl<'w> Checker<'w> {
    fn error(&mut self, msg: impl Into<String>) -> Ty {
        self.errors.push(msg.into());
        Ty::Unknown
    }

    fn lookup(&self, name: &str) -> Option<&Ty> {
        self.scopes.iter().rev().find_map(|s| s.get(name))
    }

    fn declare(&mut self, name: &str, ty: Ty) {
        if self.lookup(name).is_some() {
            self.error(format!("variable {name} is already defined"));
        }
        self.scopes.last_mut().expect("scope").insert(name.to_string(), ty);
    }

    fn scoped(&mut self, f: impl FnOnce(&mut Self)) {
        self.scopes.push(BTreeMap::new());
        f(self);
        self.scopes.pop();
    }

    fn declared_ty(&mut self, t: &TypeRef) -> Ty {
        let ty = self.world.ty(t);
        match &ty {
            Ty::Opaque(n) if !n.starts_with("java.") && !n.ends_with("[]") => self.error(format!("cannot find symbol: class {n}")),
            Ty::Static(n) => self.error(format!("cannot use {n} as a variable type")),
            _ => ty,
        }
    }

    fn expect(&mut self, from: &Ty, to: &Ty) {
        if !self.world.assignable(from, to) {
            self.error(format!("incompatible types: {from} cannot be converted to {to}"));
        }
    }

    fn condition(&mut self, e: &Expr) {
        let t = self.expr(e);
        if !is_boolean(&t) {
            self.error(format!("incompatible types: {t} cannot be converted to boolean"));
        }
    }

    fn stmt(&mut self, s: &Stmt) {
        match s {
            Stmt::LocalVar { ty, declarators } => {
                let t = self.declared_ty(ty);
                for d in declarators {
                    let mut vt = t.clone();
                    if let Some(init) = &d.init {
                        let it = self.expr(init);
                        if t == Ty::Unknown && ty.name == "var" {
                            vt = it;
                        } else {
                            self.expect(&it, &t);
                        }
                    }
                    self.declare(&d.name, vt);
                }
            }
            Stmt::Expr(e) => {
                let ok = matches!(e, Expr::Assign { .. } | Expr::Call { .. } | Expr::New { .. }) || matches!(e, Expr::Unary { op, .. } if op == "++" || op == "--");
                if !ok {
                    self.error("not a statement");
                }
                self.expr(e);
            }
            Stmt::Return(None) => {
                self.error("missing return value");
            }
            Stmt::Return(Some(e)) => {
                let t = self.expr(e);
                let out = self.output.clone();
                self.expect(&t, &out);
            }
            Stmt::If { cond, then, otherwise } => {
                self.condition(cond);
                self.scoped(|c| c.stmt(then));
                if let Some(o) = otherwise {
                    self.scoped(|c| c.stmt(o));
                }
            }
            Stmt::While { cond, body } => {
                self.condition(cond);
                self.loops += 1;
                self.scoped(|c| c.stmt(body));
                self.loops -= 1;
            }
            Stmt::For { init, cond, update, body } => self.scoped(|c| {
                init.iter().for_each(|s| c.stmt(s));
                if let Some(e) = cond {
                    c.condition(e);
                }
                update.iter().for_each(|e| {
                    c.expr(e);
                });
                c.loops += 1;
                c.scoped(|c| c.stmt(body));
                c.loops -= 1;
            }),
            Stmt::ForEach { ty, name, iterable, body } => {
                let it = self.expr(iterable);
                let elem = match it {
                    Ty::List(e) | Ty::Set(e) => *e,
                    Ty::Unknown => Ty::Unknown,
                    other => self.error(format!("for-each not applicable to expression type {other}")),
                };
                let t = self.declared_ty(ty);
                let vt = if ty.name == "var" { elem.clone() } else { t };
                self.expect(&elem, &vt);
                self.loops += 1;
                self.scoped(|c| {
                    c.declare(name, vt);
                    c.stmt(body);
                });
                self.loops -= 1;
            }
            Stmt::Block(stmts) => self.scoped(|c| stmts.iter().for_each(|s| c.stmt(s))),
            Stmt::Throw(e) => {
                let t = self.expr(e);
                if !matches!(&t, Ty::Opaque(n) if n.ends_with("Exception") || n.ends_with("Error")) && t != Ty::Unknown {
                    self.error(format!("incompatible types: {t} cannot be thrown"));
                }
            }
            Stmt::Break(None) | Stmt::Continue(None) => {
                if self.loops == 0 {
                    self.error("break or continue outside of a loop");
                }
            }
            Stmt::Empty => {}
            Stmt::DoWhile { .. } | Stmt::Switch { .. } | Stmt::Try { .. } | Stmt::Labeled { .. } | Stmt::Yield(_) | Stmt::Break(Some(_)) | Stmt::Continue(Some(_)) => {
                self.error("unsupported statement in a mapping script");
            }
        }
    }

    fn static_target(&self, e: &Expr) -> Option<String> {
        match e {
            Expr::Name(n) if self.lookup(n).is_none() => static_class(self.world, n),
            _ => None,
        }
    }

    fn expr(&mut self, e: &Expr) -> Ty {
        match e {
            Expr::Literal { kind, text } => literal_ty(*kind, text),
            Expr::Name(n) => match self.lookup(n) {
                Some(t) => t.clone(),
                None => self.error(format!("cannot find symbol: variable {n}")),
            },
            Expr::This | Expr::Super => self.error("non-static variable this cannot be referenced from a static context"),
            Expr::Field { target, name } => {
                let t = self.expr(target);
                match t {
                    Ty::Bean(c) if self.world.field(&c, name).is_some() => self.error(format!("{name} has private access in {}", ccci_core::model::simple_name(&c))),
                    Ty::Unknown => Ty::Unknown,
                    t => self.error(format!("cannot find symbol: variable {name} in {t}")),
                }
            }
            Expr::Call { target: None, name, .. } => self.error(format!("cannot find symbol: method {name}")),
            Expr::Call { target: Some(target), name, args } => {
                let callee = match self.static_target(target) {
                    Some(class) => Callee::Static(class),
                    None => Callee::Instance(self.expr(target)),
                };
                let arg_tys: Vec<Ty> = args.iter().map(|a| self.expr(a)).collect();
                match method_type(self.world, &callee, name, &arg_tys) {
                    Ok(t) => t,
                    Err(msg) => self.error(msg),
                }
            }
            Expr::New { ty, args, anonymous_body } => {
                if *anonymous_body {
                    return self.error("anonymous classes are not supported");
                }
                let t = self.declared_ty(ty);
                let arg_tys: Vec<Ty> = args.iter().map(|a| self.expr(a)).collect();
                match &t {
                    Ty::Bean(c) if !arg_tys.is_empty() => self.error(format!("constructor {0} in class {0} cannot be applied to given types", ccci_core::model::simple_name(c))),
                    Ty::Bean(_) => t,
                    Ty::List(_) | Ty::Set(_) | Ty::Map(..) if arg_tys.len() <= 1 => t,
                    Ty::Str | Ty::Unknown => t,
                    Ty::Opaque(n) if n.ends_with("Exception") || n.ends_with("Error") => t,
                    Ty::Opaque(n) if n.starts_with("java.") => t,
                    _ => self.error(format!("cannot instantiate {t}")),
                }
            }
            Expr::Unary { op, expr, .. } => {
                let t = self.expr(expr);
                match op.as_str() {
                    "!" if is_boolean(&t) => BOOLEAN,
                    "++" | "--" if !matches!(**expr, Expr::Name(_)) => self.error("unexpected type: variable required"),
                    "-" | "+" | "~" | "++" | "--" => match t.numeric() {
                        Some(p) if p.is_numeric() => Ty::Prim(if op == "++" || op == "--" { p } else { Prim::promote(p, Prim::Int) }),
                        _ if t == Ty::Unknown => Ty::Unknown,
                        _ => self.error(format!("bad operand type {t} for unary operator {op}")),
                    },
                    _ => self.error(format!("bad operand type {t} for unary operator {op}")),
                }
            }
            Expr::Binary { op, lhs, rhs } => {
                let (l, r) = (self.expr(lhs), self.expr(rhs));
                self.binary(op, &l, &r)
            }
            Expr::Assign { op, target, value } => {
                let tt = match &**target {
                    Expr::Name(n) => match self.lookup(n) {
                        Some(t) => t.clone(),
                        None => self.error(format!("cannot find symbol: variable {n}")),
                    },
                    other => {
                        self.expr(other);
                        return self.error("unexpected type: variable required");
                    }
                };
                let vt = self.expr(value);
                if op == "=" {
                    self.expect(&vt, &tt);
                } else {
                    let bin = op.trim_end_matches('=');
                    self.binary(bin, &tt, &vt);
                }
                tt
            }
            Expr::Conditional { cond, then, otherwise } => {
                self.condition(cond);
                let (a, b) = (self.expr(then), self.expr(otherwise));
                match (&a, &b) {
                    _ if a == b => a,
                    (Ty::Null, t) | (t, Ty::Null) if t.is_reference() => t.clone(),
                    _ => match (a.numeric(), b.numeric()) {
                        (Some(x), Some(y)) if x.is_numeric() && y.is_numeric() => Ty::Prim(Prim::promote(x, y)),
                        _ => Ty::Object,
                    },
                }
            }
            Expr::Cast { ty, expr } => {
                self.expr(expr);
                self.declared_ty(ty)
            }
            Expr::InstanceOf { expr, .. } => {
                self.expr(expr);
                BOOLEAN
            }
            Expr::Lambda { .. } | Expr::MethodRef { .. } => self.error("lambda expressions are not supported"),
            Expr::NewArray { .. } | Expr::ArrayInit(_) | Expr::Index { .. } => self.error("arrays are not supported"),
            Expr::ClassLit(_) | Expr::TypeExpr(_) => self.error("class literals are not supported"),
        }
    }

    fn binary(&mut self, op: &str, l: &Ty, r: &Ty) -> Ty {
        if *l == Ty::Unknown || *r == Ty::Unknown {
            return match op {
                "==" | "!=" | "<" | ">" | "<=" | ">=" | "&&" | "||" => BOOLEAN,
                _ => Ty::Unknown,
            };
        }
        let num = |t: &Ty| t.numeric().filter(|p| p.is_numeric());
        match op {
            "+" if *l == Ty::Str || *r == Ty::Str => {
                if *l == Ty::Void || *r == Ty::Void {
                    return self.error("'void' type not allowed here");
                }
                Ty::Str
            }
            "+" | "-" | "*" | "/" | "%" => match (num(l), num(r)) {
                (Some(a), Some(b)) => Ty::Prim(Prim::promote(a, b)),
                _ => self.error(format!("bad operand types for binary operator '{op}': {l} and {r}")),
            },
            "<" | ">" | "<=" | ">=" => match (num(l), num(r)) {
                (Some(_), Some(_)) => BOOLEAN,
                _ => self.error(format!("bad operand types for binary operator '{op}': {l} and {r}")),
            },
            "==" | "!=" => {
                let comparable = (l.is_reference() && r.is_reference()) || (num(l).is_some() && num(r).is_some()) || (is_boolean(l) && is_boolean(r));
                if comparable {
                    BOOLEAN
                } else {
                    self.error(format!("incomparable types: {l} and {r}"))
                }
            }
            "&&" | "||" if is_boolean(l) && is_boolean(r) => BOOLEAN,
            "&" | "|" | "^" if is_boolean(l) && is_boolean(r) => BOOLEAN,
            "&" | "|" | "^" | "<<" | ">>" | ">>>" => match (num(l), num(r)) {
                (Some(a), Some(b)) if a.is_integral() && b.is_integral() => Ty::Prim(Prim::promote(a, b)),
                _ => self.error(format!("bad operand types for binary operator '{op}': {l} and {r}")),
            },
            _ => self.error(format!("bad operand types for binary operator '{op}': {l} and {r}")),
        }
    }
}

/// Diagnostics for a script; empty when it compiles.
pub fn check(world: &World, script: &Snippet) -> Vec<String> {
    let output = world.ty(&TypeRef::named(world.task.output_class_name.as_str()));
    let mut c = Checker { world, scopes: vec![BTreeMap::new()], errors: Vec::new(), output, loops: 0 };
    for (name, ty) in script_parameters(world) {
        c.scopes[0].insert(name, ty);
    }
    c.scopes.push(BTreeMap::new());
    let mut last = None;
    for item in &script.items {
        match item {
            Item::Stmt(s) => {
                c.stmt(s);
                last = Some(s);
            }
            Item::Import(_) => {}
            Item::Method(_) | Item::Class { .. } | Item::Package(_) => {
                c.error("a mapping script holds statements only");
            }
        }
    }
    if !matches!(last, Some(Stmt::Return(_)) | Some(Stmt::Throw(_))) {
        c.error("missing return statement");
    }
    c.errors
}
