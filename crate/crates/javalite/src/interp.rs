use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

use ccci_core::model::simple_name;
use ccci_core::syntax::ast::{Expr, Item, LitKind, Snippet, Stmt};

use crate::check::script_parameters;
use crate::methods::{bean_accessor, static_class, Accessor};
use crate::world::{Prim, Ty, World};

const STEP_BUDGET: u64 = 200_000;
const SENTINEL_DEPTH: usize = 4;

#[derive(Debug)]
pub struct BeanObj {
    pub class: String,
    pub fields: Vec<(String, Value)>,
}

#[derive(Debug, Clone)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Char(char),
    Str(Rc<str>),
    Bean(Rc<RefCell<BeanObj>>),
    List(Rc<RefCell<Vec<Value>>>),
    Set(Rc<RefCell<Vec<Value>>>),
    Map(Rc<RefCell<Vec<(Value, Value)>>>),
    /// An instance of a library type the interpreter does not model.
    Opaque(Rc<str>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fault {
    NullPointer(String),
    Thrown(String),
    StepBudget,
    Unsupported(String),
}

impl std::fmt::Display for Fault {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Fault::NullPointer(m) => write!(f, "java.lang.NullPointerException: {m}"),
            Fault::Thrown(m) => write!(f, "uncaught {m}"),
            Fault::StepBudget => write!(f, "step budget exhausted"),
            Fault::Unsupported(m) => write!(f, "unsupported at runtime: {m}"),
        }
    }
}

type Run<T> = Result<T, Fault>;

fn fnv(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn default_value(t: &Ty) -> Value {
    match t {
        Ty::Prim(Prim::Boolean) => Value::Bool(false),
        Ty::Prim(Prim::Char) => Value::Char('\0'),
        Ty::Prim(Prim::Float | Prim::Double) => Value::Float(0.0),
        Ty::Prim(_) => Value::Int(0),
        _ => Value::Null,
    }
}

pub fn new_bean(world: &World, class: &str) -> Value {
    let fields = world.class(class).map(|c| c.fields).unwrap_or_default();
    let fields = fields.iter().map(|f| (f.name.clone(), default_value(&world.ty(&f.declared_type)))).collect();
    Value::Bean(Rc::new(RefCell::new(BeanObj { class: class.to_string(), fields })))
}

/// Deterministic, distinct values for every reachable field of an input.
pub fn sentinel(world: &World, t: &Ty, path: &str, depth: usize, open: &mut Vec<String>) -> Value {
    let h = fnv(path);
    match t {
        Ty::Prim(Prim::Boolean) | Ty::Boxed(Prim::Boolean) => Value::Bool(true),
        Ty::Prim(Prim::Char) | Ty::Boxed(Prim::Char) => Value::Char((b'A' + (h % 26) as u8) as char),
        Ty::Prim(Prim::Float | Prim::Double) | Ty::Boxed(Prim::Float | Prim::Double) => Value::Float((h % 90_000 + 10_000) as f64 / 8.0),
        Ty::Prim(Prim::Byte) | Ty::Boxed(Prim::Byte) => Value::Int((h % 100 + 1) as i64),
        Ty::Prim(_) | Ty::Boxed(_) => Value::Int((h % 90_000 + 10_000) as i64),
        Ty::Str | Ty::Object => Value::Str(path.into()),
        Ty::Bean(c) => {
            if depth >= SENTINEL_DEPTH || open.contains(c) {
                return Value::Null;
            }
            open.push(c.clone());
            let fields = world.class(c).map(|c| c.fields).unwrap_or_default();
            let fields = fields
                .iter()
                .map(|f| {
                    let ft = world.ty(&f.declared_type);
                    (f.name.clone(), sentinel(world, &ft, &format!("{path}.{}", f.name), depth + 1, open))
                })
                .collect();
            open.pop();
            Value::Bean(Rc::new(RefCell::new(BeanObj { class: c.clone(), fields })))
        }
        Ty::List(e) => Value::List(Rc::new(RefCell::new(vec![sentinel(world, e, &format!("{path}[0]"), depth + 1, open)]))),
        Ty::Set(e) => Value::Set(Rc::new(RefCell::new(vec![sentinel(world, e, &format!("{path}[0]"), depth + 1, open)]))),
        Ty::Map(k, v) => {
            let key = sentinel(world, k, &format!("{path}#key"), depth + 1, open);
            let val = sentinel(world, v, &format!("{path}#value"), depth + 1, open);
            Value::Map(Rc::new(RefCell::new(vec![(key, val)])))
        }
        Ty::Opaque(n) => Value::Opaque(format!("{}@{path}", simple_name(n)).into()),
        Ty::Null | Ty::Void | Ty::Unknown | Ty::Static(_) => Value::Null,
    }
}

/// One value per script input, built from the input's class.
pub fn sentinel_inputs(world: &World) -> Vec<(String, Ty, Value)> {
    script_parameters(world)
        .into_iter()
        .map(|(name, ty)| {
            let v = sentinel(world, &ty, &name, 0, &mut Vec::new());
            (name, ty, v)
        })
        .collect()
}

/// Java `==`.
fn same(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Null, Value::Null) => true,
        (Value::Bool(x), Value::Bool(y)) => x == y,
        (Value::Str(x), Value::Str(y)) | (Value::Opaque(x), Value::Opaque(y)) => x == y,
        (Value::Bean(x), Value::Bean(y)) => Rc::ptr_eq(x, y),
        (Value::List(x), Value::List(y)) | (Value::Set(x), Value::Set(y)) => Rc::ptr_eq(x, y),
        (Value::Map(x), Value::Map(y)) => Rc::ptr_eq(x, y),
        _ => match (num(a), num(b)) {
            (Some(x), Some(y)) => x.as_f64() == y.as_f64(),
            _ => false,
        },
    }
}

/// `Object.equals` as the library types define it; beans compare by identity.
fn equals(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::List(x), Value::List(y)) | (Value::Set(x), Value::Set(y)) => {
            let (x, y) = (x.borrow(), y.borrow());
            x.len() == y.len() && x.iter().zip(y.iter()).all(|(p, q)| equals(p, q))
        }
        (Value::Int(_), Value::Float(_)) | (Value::Float(_), Value::Int(_)) => false,
        _ => same(a, b),
    }
}

/// Structural equality of two object graphs. Returns the path of the first
/// difference.
pub fn first_difference(a: &Value, b: &Value) -> Option<String> {
    fn walk(a: &Value, b: &Value, path: &str, seen: &mut Vec<(usize, usize)>) -> Option<String> {
        match (a, b) {
            (Value::Bean(x), Value::Bean(y)) => {
                let key = (Rc::as_ptr(x) as usize, Rc::as_ptr(y) as usize);
                if seen.contains(&key) {
                    return None;
                }
                seen.push(key);
                let (x, y) = (x.borrow(), y.borrow());
                if x.class != y.class || x.fields.len() != y.fields.len() {
                    return Some(format!("{path}: {} vs {}", simple_name(&x.class), simple_name(&y.class)));
                }
                x.fields.iter().zip(y.fields.iter()).find_map(|((n, p), (_, q))| walk(p, q, &format!("{path}.{n}"), seen))
            }
            (Value::List(x), Value::List(y)) | (Value::Set(x), Value::Set(y)) => {
                let (x, y) = (x.borrow(), y.borrow());
                if x.len() != y.len() {
                    return Some(format!("{path}: size {} vs {}", x.len(), y.len()));
                }
                x.iter().zip(y.iter()).enumerate().find_map(|(i, (p, q))| walk(p, q, &format!("{path}[{i}]"), seen))
            }
            (Value::Map(x), Value::Map(y)) => {
                let (x, y) = (x.borrow(), y.borrow());
                if x.len() != y.len() {
                    return Some(format!("{path}: size {} vs {}", x.len(), y.len()));
                }
                x.iter().zip(y.iter()).enumerate().find_map(|(i, ((k1, v1), (k2, v2)))| walk(k1, k2, &format!("{path}#{i}"), seen).or_else(|| walk(v1, v2, &format!("{path}[{i}]"), seen)))
            }
            _ if equals(a, b) => None,
            _ => Some(format!("{path}: {} vs {}", display(a), display(b))),
        }
    }
    walk(a, b, "result", &mut Vec::new())
}

#[derive(Clone, Copy)]
enum Num {
    I(i64),
    F(f64),
}

impl Num {
    fn as_f64(self) -> f64 {
        match self {
            Num::I(i) => i as f64,
            Num::F(f) => f,
        }
    }
}

fn num(v: &Value) -> Option<Num> {
    match v {
        Value::Int(i) => Some(Num::I(*i)),
        Value::Char(c) => Some(Num::I(*c as i64)),
        Value::Float(f) => Some(Num::F(*f)),
        _ => None,
    }
}

pub fn display(v: &Value) -> String {
    match v {
        Value::Null => "null".into(),
        Value::Bool(b) => b.to_string(),
        Value::Int(i) => i.to_string(),
        Value::Float(f) => format!("{f:?}"),
        Value::Char(c) => c.to_string(),
        Value::Str(s) | Value::Opaque(s) => s.to_string(),
        Value::Bean(b) => format!("{}(...)", simple_name(&b.borrow().class)),
        Value::List(l) | Value::Set(l) => format!("[{}]", l.borrow().iter().map(display).collect::<Vec<_>>().join(", ")),
        Value::Map(m) => format!("{{{}}}", m.borrow().iter().map(|(k, v)| format!("{}={}", display(k), display(v))).collect::<Vec<_>>().join(", ")),
    }
}

fn unescape(body: &str) -> String {
    let mut out = String::new();
    let mut it = body.chars();
    while let Some(c) = it.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match it.next() {
            Some('n') => out.push('\n'),
            Some('t') => out.push('\t'),
            Some('r') => out.push('\r'),
            Some('0') => out.push('\0'),
            Some(o) => out.push(o),
            None => {}
        }
    }
    out
}

fn literal(kind: LitKind, text: &str) -> Run<Value> {
    let bad = || Fault::Unsupported(format!("literal {text}"));
    Ok(match kind {
        LitKind::Int => {
            let t = text.replace('_', "");
            let t = t.trim_end_matches(['l', 'L']);
            let v = if let Some(h) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
                i64::from_str_radix(h, 16)
            } else if let Some(b) = t.strip_prefix("0b").or_else(|| t.strip_prefix("0B")) {
                i64::from_str_radix(b, 2)
            } else {
                t.parse()
            };
            Value::Int(v.map_err(|_| bad())?)
        }
        LitKind::Float => Value::Float(text.replace('_', "").trim_end_matches(['f', 'F', 'd', 'D']).parse().map_err(|_| bad())?),
        LitKind::Str => Value::Str(unescape(text.trim_matches('"')).into()),
        LitKind::Char => Value::Char(unescape(&text[1..text.len().saturating_sub(1)]).chars().next().ok_or_else(bad)?),
        LitKind::Bool => Value::Bool(text == "true"),
        LitKind::Null => Value::Null,
    })
}

/// Assignment conversion of a runtime value to a declared type.
fn coerce(v: Value, t: &Ty, what: &str) -> Run<Value> {
    Ok(match (t, v) {
        (Ty::Prim(_), Value::Null) => return Err(Fault::NullPointer(format!("unboxing null into {what}"))),
        (Ty::Prim(Prim::Float | Prim::Double) | Ty::Boxed(Prim::Float | Prim::Double), v) => match num(&v) {
            Some(n) => Value::Float(n.as_f64()),
            None => v,
        },
        (Ty::Prim(Prim::Char), Value::Int(i)) => Value::Char(char::from_u32(i as u32).unwrap_or('\0')),
        (Ty::Prim(p) | Ty::Boxed(p), v) if p.is_integral() => match v {
            Value::Float(f) => Value::Int(f as i64),
            Value::Char(c) if *p != Prim::Char => Value::Int(c as i64),
            v => v,
        },
        (_, v) => v,
    })
}

fn truthy(v: &Value) -> Run<bool> {
    match v {
        Value::Bool(b) => Ok(*b),
        Value::Null => Err(Fault::NullPointer("unboxing null condition".into())),
        other => Err(Fault::Unsupported(format!("condition {}", display(other)))),
    }
}

enum Flow {
    Normal,
    Return(Value),
    Break,
    Continue,
}

struct Interp<'w> {
    world: &'w World,
    scopes: Vec<BTreeMap<String, (Ty, Value)>>,
    steps: u64,
}

impl<'w> Interp<'w> {
    fn tick(&mut self) -> Run<()> {
        self.steps += 1;
        if self.steps > STEP_BUDGET {
            Err(Fault::StepBudget)
        } else {
            Ok(())
        }
    }

    fn lookup(&mut self, name: &str) -> Option<&mut (Ty, Value)> {
        self.scopes.iter_mut().rev().find_map(|s| s.get_mut(name))
    }

    fn declare(&mut self, name: &str, ty: Ty, v: Value) {
        self.scopes.last_mut().expect("scope").insert(name.to_string(), (ty, v));
    }

    fn scoped<T>(&mut self, f: impl FnOnce(&mut Self) -> Run<T>) -> Run<T> {
        self.scopes.push(BTreeMap::new());
        let r = f(self);
        self.scopes.pop();
        r
    }

    fn block(&mut self, stmts: &[Stmt]) -> Run<Flow> {
        for s in stmts {
            match self.stmt(s)? {
                Flow::Normal => {}
                other => return Ok(other),
            }
        }
        Ok(Flow::Normal)
    }

    fn stmt(&mut self, s: &Stmt) -> Run<Flow> {
        self.tick()?;
        match s {
            Stmt::LocalVar { ty, declarators } => {
                let t = self.world.ty(ty);
                for d in declarators {
                    let v = match &d.init {
                        Some(e) => coerce(self.expr(e)?, &t, &d.name)?,
                        None => Value::Null,
                    };
                    self.declare(&d.name, t.clone(), v);
                }
                Ok(Flow::Normal)
            }
            Stmt::Expr(e) => self.expr(e).map(|_| Flow::Normal),
            Stmt::Return(e) => Ok(Flow::Return(match e {
                Some(e) => self.expr(e)?,
                None => Value::Null,
            })),
            Stmt::If { cond, then, otherwise } => {
                let c = self.expr(cond)?;
                if truthy(&c)? {
                    self.scoped(|i| i.stmt(then))
                } else if let Some(o) = otherwise {
                    self.scoped(|i| i.stmt(o))
                } else {
                    Ok(Flow::Normal)
                }
            }
            Stmt::While { cond, body } => loop {
                let c = self.expr(cond)?;
                if !truthy(&c)? {
                    return Ok(Flow::Normal);
                }
                match self.scoped(|i| i.stmt(body))? {
                    Flow::Break => return Ok(Flow::Normal),
                    Flow::Return(v) => return Ok(Flow::Return(v)),
                    _ => {}
                }
            },
            Stmt::For { init, cond, update, body } => self.scoped(|i| {
                for s in init {
                    i.stmt(s)?;
                }
                loop {
                    if let Some(c) = cond {
                        let c = i.expr(c)?;
                        if !truthy(&c)? {
                            return Ok(Flow::Normal);
                        }
                    }
                    match i.scoped(|i| i.stmt(body))? {
                        Flow::Break => return Ok(Flow::Normal),
                        Flow::Return(v) => return Ok(Flow::Return(v)),
                        _ => {}
                    }
                    for u in update {
                        i.expr(u)?;
                    }
                }
            }),
            Stmt::ForEach { ty, name, iterable, body } => {
                let items = match self.expr(iterable)? {
                    Value::List(l) | Value::Set(l) => l.borrow().clone(),
                    Value::Null => return Err(Fault::NullPointer("iterating over null".into())),
                    other => return Err(Fault::Unsupported(format!("iterating over {}", display(&other)))),
                };
                let t = self.world.ty(ty);
                for item in items {
                    let item = coerce(item, &t, name)?;
                    let flow = self.scoped(|i| {
                        i.declare(name, t.clone(), item);
                        i.stmt(body)
                    })?;
                    match flow {
                        Flow::Break => break,
                        Flow::Return(v) => return Ok(Flow::Return(v)),
                        _ => {}
                    }
                }
                Ok(Flow::Normal)
            }
            Stmt::Block(stmts) => self.scoped(|i| i.block(stmts)),
            Stmt::Throw(e) => {
                let v = self.expr(e)?;
                Err(Fault::Thrown(display(&v)))
            }
            Stmt::Break(_) => Ok(Flow::Break),
            Stmt::Continue(_) => Ok(Flow::Continue),
            Stmt::Empty => Ok(Flow::Normal),
            other => Err(Fault::Unsupported(format!("{other:?}"))),
        }
    }

    fn store(&mut self, target: &Expr, v: Value) -> Run<Value> {
        match target {
            Expr::Name(n) => {
                let slot = self.lookup(n).ok_or_else(|| Fault::Unsupported(format!("unbound {n}")))?;
                let v = coerce(v, &slot.0, n)?;
                slot.1 = v.clone();
                Ok(v)
            }
            other => Err(Fault::Unsupported(format!("assignment to {other:?}"))),
        }
    }

    fn expr(&mut self, e: &Expr) -> Run<Value> {
        self.tick()?;
        match e {
            Expr::Literal { kind, text } => literal(*kind, text),
            Expr::Name(n) => match self.lookup(n) {
                Some(slot) => Ok(slot.1.clone()),
                None => Err(Fault::Unsupported(format!("unbound {n}"))),
            },
            Expr::Call { target: Some(target), name, args } => {
                let stat = match &**target {
                    Expr::Name(n) if self.lookup(n).is_none() => static_class(self.world, n),
                    _ => None,
                };
                let recv = match stat {
                    Some(_) => None,
                    None => Some(self.expr(target)?),
                };
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.expr(a)?);
                }
                match (stat, recv) {
                    (Some(class), _) => self.call_static(&class, name, vals),
                    (None, Some(r)) => self.call(r, name, vals),
                    (None, None) => unreachable!(),
                }
            }
            Expr::New { ty, args, .. } => {
                let mut vals = Vec::new();
                for a in args {
                    vals.push(self.expr(a)?);
                }
                Ok(match self.world.ty(ty) {
                    Ty::Bean(c) => new_bean(self.world, &c),
                    Ty::List(_) => Value::List(Rc::new(RefCell::new(Self::collection_arg(vals)))),
                    Ty::Set(_) => Value::Set(Rc::new(RefCell::new(Self::collection_arg(vals)))),
                    Ty::Map(..) => Value::Map(Rc::new(RefCell::new(Vec::new()))),
                    Ty::Str => vals.into_iter().next().unwrap_or(Value::Str("".into())),
                    other => Value::Opaque(format!("{other}").into()),
                })
            }
            Expr::Unary { op, expr, postfix } => {
                let v = self.expr(expr)?;
                match op.as_str() {
                    "!" => Ok(Value::Bool(!truthy(&v)?)),
                    "++" | "--" => {
                        let delta = if op == "++" { 1 } else { -1 };
                        let n = match num(&v) {
                            Some(Num::I(i)) => Value::Int(i.wrapping_add(delta)),
                            Some(Num::F(f)) => Value::Float(f + delta as f64),
                            None => return Err(Fault::NullPointer("increment of null".into())),
                        };
                        let stored = self.store(expr, n)?;
                        Ok(if *postfix { v } else { stored })
                    }
                    _ => match (op.as_str(), num(&v)) {
                        ("-", Some(Num::I(i))) => Ok(Value::Int(i.wrapping_neg())),
                        ("-", Some(Num::F(f))) => Ok(Value::Float(-f)),
                        ("~", Some(Num::I(i))) => Ok(Value::Int(!i)),
                        ("+", Some(Num::I(i))) => Ok(Value::Int(i)),
                        ("+", Some(Num::F(f))) => Ok(Value::Float(f)),
                        (_, None) if matches!(v, Value::Null) => Err(Fault::NullPointer("unboxing null".into())),
                        _ => Err(Fault::Unsupported(format!("unary {op}"))),
                    },
                }
            }
            Expr::Binary { op, lhs, rhs } => {
                let l = self.expr(lhs)?;
                match op.as_str() {
                    "&&" if !truthy(&l)? => return Ok(Value::Bool(false)),
                    "||" if truthy(&l)? => return Ok(Value::Bool(true)),
                    _ => {}
                }
                let r = self.expr(rhs)?;
                binary(op, &l, &r)
            }
            Expr::Assign { op, target, value } => {
                let v = self.expr(value)?;
                let v = if op == "=" {
                    v
                } else {
                    let old = self.expr(target)?;
                    binary(op.trim_end_matches('='), &old, &v)?
                };
                self.store(target, v)
            }
            Expr::Conditional { cond, then, otherwise } => {
                let c = self.expr(cond)?;
                if truthy(&c)? {
                    self.expr(then)
                } else {
                    self.expr(otherwise)
                }
            }
            Expr::Cast { ty, expr } => {
                let v = self.expr(expr)?;
                match self.world.ty(ty) {
                    t @ Ty::Prim(_) => coerce(v, &t, "cast"),
                    _ => Ok(v),
                }
            }
            Expr::InstanceOf { expr, ty, binding } => {
                let v = self.expr(expr)?;
                let t = self.world.ty(ty);
                let is = match (&v, &t) {
                    (Value::Null, _) => false,
                    (Value::Bean(b), Ty::Bean(c)) => self.world.ancestry(&b.borrow().class).contains(c),
                    (Value::Str(_), Ty::Str) | (Value::List(_), Ty::List(_)) | (Value::Set(_), Ty::Set(_)) | (Value::Map(_), Ty::Map(..)) => true,
                    (_, Ty::Object) => true,
                    _ => false,
                };
                if let (true, Some(b)) = (is, binding) {
                    self.declare(b, t, v);
                }
                Ok(Value::Bool(is))
            }
            other => Err(Fault::Unsupported(format!("{other:?}"))),
        }
    }

    fn collection_arg(vals: Vec<Value>) -> Vec<Value> {
        match vals.into_iter().next() {
            Some(Value::List(l) | Value::Set(l)) => l.borrow().clone(),
            _ => Vec::new(),
        }
    }

    fn call(&mut self, recv: Value, name: &str, args: Vec<Value>) -> Run<Value> {
        let arg = |i: usize| args.get(i).cloned().unwrap_or(Value::Null);
        match (&recv, name, args.len()) {
            (Value::Null, _, _) => Err(Fault::NullPointer(format!("calling {name} on null"))),
            (_, "equals", 1) => Ok(Value::Bool(equals(&recv, &arg(0)))),
            (_, "toString", 0) => Ok(Value::Str(display(&recv).into())),
            (_, "hashCode", 0) => Ok(Value::Int((fnv(&display(&recv)) % 1_000_000) as i64)),
            (Value::Bean(b), _, _) => {
                let class = b.borrow().class.clone();
                match bean_accessor(self.world, &class, name, args.len()) {
                    Some(Accessor::Get(f)) => Ok(b.borrow().fields.iter().find(|(n, _)| *n == f).map(|(_, v)| v.clone()).unwrap_or(Value::Null)),
                    Some(Accessor::Set(f)) => {
                        let t = self.world.field_ty(&class, &f).unwrap_or(Ty::Unknown);
                        let v = coerce(arg(0), &t, &f)?;
                        if let Some(slot) = b.borrow_mut().fields.iter_mut().find(|(n, _)| *n == f) {
                            slot.1 = v;
                        }
                        Ok(Value::Null)
                    }
                    None => Err(Fault::Unsupported(format!("{}.{name}", simple_name(&class)))),
                }
            }
            (Value::Str(s), _, _) => string_method(s, name, &args),
            (Value::List(l) | Value::Set(l), _, _) => {
                let is_set = matches!(recv, Value::Set(_));
                let mut l = l.borrow_mut();
                Ok(match name {
                    "size" => Value::Int(l.len() as i64),
                    "isEmpty" => Value::Bool(l.is_empty()),
                    "clear" => {
                        l.clear();
                        Value::Null
                    }
                    "contains" => Value::Bool(l.iter().any(|x| equals(x, &arg(0)))),
                    "add" => {
                        let v = arg(0);
                        let dup = is_set && l.iter().any(|x| equals(x, &v));
                        if !dup {
                            l.push(v);
                        }
                        Value::Bool(!dup)
                    }
                    "addAll" => match arg(0) {
                        Value::List(o) | Value::Set(o) => {
                            let items = o.borrow().clone();
                            for v in items {
                                if !(is_set && l.iter().any(|x| equals(x, &v))) {
                                    l.push(v);
                                }
                            }
                            Value::Bool(true)
                        }
                        _ => return Err(Fault::NullPointer("addAll of null".into())),
                    },
                    "get" => match arg(0) {
                        Value::Int(i) if i >= 0 && (i as usize) < l.len() => l[i as usize].clone(),
                        _ => return Err(Fault::Thrown("IndexOutOfBoundsException".into())),
                    },
                    _ => return Err(Fault::Unsupported(format!("collection {name}"))),
                })
            }
            (Value::Map(m), _, _) => {
                let mut m = m.borrow_mut();
                let key = arg(0);
                let pos = m.iter().position(|(k, _)| equals(k, &key));
                Ok(match name {
                    "size" => Value::Int(m.len() as i64),
                    "isEmpty" => Value::Bool(m.is_empty()),
                    "get" => pos.map(|p| m[p].1.clone()).unwrap_or(Value::Null),
                    "containsKey" => Value::Bool(pos.is_some()),
                    "put" => match pos {
                        Some(p) => std::mem::replace(&mut m[p].1, arg(1)),
                        None => {
                            m.push((key, arg(1)));
                            Value::Null
                        }
                    },
                    _ => return Err(Fault::Unsupported(format!("map {name}"))),
                })
            }
            (v, "intValue" | "longValue", 0) => Ok(Value::Int(num(v).map(|n| n.as_f64() as i64).unwrap_or(0))),
            (v, "doubleValue", 0) => Ok(Value::Float(num(v).map(Num::as_f64).unwrap_or(0.0))),
            (Value::Bool(b), "booleanValue", 0) => Ok(Value::Bool(*b)),
            _ => Err(Fault::Unsupported(format!("method {name} on {}", display(&recv)))),
        }
    }

    fn call_static(&mut self, class: &str, name: &str, args: Vec<Value>) -> Run<Value> {
        let arg = |i: usize| args.get(i).cloned().unwrap_or(Value::Null);
        Ok(match (class, name) {
            ("BeanUtils", "copyProperties") => {
                self.copy_properties(&arg(0), &arg(1))?;
                Value::Null
            }
            ("Objects", "equals") => Value::Bool(match (arg(0), arg(1)) {
                (Value::Null, Value::Null) => true,
                (Value::Null, _) | (_, Value::Null) => false,
                (a, b) => equals(&a, &b),
            }),
            ("Objects", "isNull") => Value::Bool(matches!(arg(0), Value::Null)),
            ("Objects", "nonNull") => Value::Bool(!matches!(arg(0), Value::Null)),
            ("Objects", "toString") => match (arg(0), args.get(1)) {
                (Value::Null, Some(d)) => d.clone(),
                (v, _) => Value::Str(display(&v).into()),
            },
            ("Objects", "requireNonNull") => match arg(0) {
                Value::Null => return Err(Fault::NullPointer("requireNonNull".into())),
                v => v,
            },
            ("Objects", "requireNonNullElse") => match arg(0) {
                Value::Null => arg(1),
                v => v,
            },
            ("String", "valueOf") => Value::Str(display(&arg(0)).into()),
            ("String", "join") => {
                let parts: Vec<String> = match arg(1) {
                    Value::List(l) | Value::Set(l) if args.len() == 2 => l.borrow().iter().map(display).collect(),
                    _ => args[1..].iter().map(display).collect(),
                };
                Value::Str(parts.join(&display(&arg(0))).into())
            }
            ("String", "format") => Value::Str(format_java(&display(&arg(0)), &args[1..]).into()),
            ("Integer" | "Long", "valueOf" | "parseInt" | "parseLong") => match arg(0) {
                Value::Str(s) => Value::Int(s.trim().parse().map_err(|_| Fault::Thrown("NumberFormatException".into()))?),
                Value::Null => return Err(Fault::NullPointer(format!("{class}.{name}(null)"))),
                v => v,
            },
            ("Double", "valueOf") => match num(&arg(0)) {
                Some(n) => Value::Float(n.as_f64()),
                None => match arg(0) {
                    Value::Str(s) => Value::Float(s.trim().parse().map_err(|_| Fault::Thrown("NumberFormatException".into()))?),
                    _ => return Err(Fault::NullPointer("Double.valueOf(null)".into())),
                },
            },
            ("Boolean", "valueOf") => match arg(0) {
                Value::Str(s) => Value::Bool(s.eq_ignore_ascii_case("true")),
                v => v,
            },
            ("Math", "max" | "min" | "abs") => {
                let ns: Vec<Num> = args.iter().map(|a| num(a).ok_or_else(|| Fault::NullPointer("unboxing null".into()))).collect::<Run<_>>()?;
                let all_int = ns.iter().all(|n| matches!(n, Num::I(_)));
                let fs: Vec<f64> = ns.iter().map(|n| n.as_f64()).collect();
                let r = match name {
                    "max" => fs[0].max(fs[1]),
                    "min" => fs[0].min(fs[1]),
                    _ => fs[0].abs(),
                };
                if all_int {
                    Value::Int(r as i64)
                } else {
                    Value::Float(r)
                }
            }
            _ => return Err(Fault::Unsupported(format!("{class}.{name}"))),
        })
    }

    /// Copies every readable source property into the writable target property
    /// of the same name whose declared type accepts it.
    fn copy_properties(&mut self, src: &Value, dst: &Value) -> Run<()> {
        let (Value::Bean(s), Value::Bean(d)) = (src, dst) else {
            return match (src, dst) {
                (Value::Null, _) => Err(Fault::Thrown("IllegalArgumentException: Source must not be null".into())),
                (_, Value::Null) => Err(Fault::Thrown("IllegalArgumentException: Target must not be null".into())),
                _ => Ok(()),
            };
        };
        let (sc, dc) = (s.borrow().class.clone(), d.borrow().class.clone());
        let values: Vec<(String, Value)> = s.borrow().fields.clone();
        let names: Vec<String> = d.borrow().fields.iter().map(|(n, _)| n.clone()).collect();
        for name in names {
            let Some((_, v)) = values.iter().find(|(n, _)| *n == name) else { continue };
            let (Some(st), Some(dt)) = (self.world.field_ty(&sc, &name), self.world.field_ty(&dc, &name)) else { continue };
            let compatible = match (&st, &dt) {
                (Ty::Prim(a) | Ty::Boxed(a), Ty::Prim(b) | Ty::Boxed(b)) => a == b,
                _ => self.world.assignable(&st, &dt),
            };
            if !compatible {
                continue;
            }
            let v = coerce(v.clone(), &dt, &name).map_err(|_| Fault::Thrown(format!("FatalBeanException: could not copy property '{name}'")))?;
            if let Some(slot) = d.borrow_mut().fields.iter_mut().find(|(n, _)| *n == name) {
                slot.1 = v;
            }
        }
        Ok(())
    }
}

fn format_java(fmt: &str, args: &[Value]) -> String {
    let mut out = String::new();
    let mut it = fmt.chars().peekable();
    let mut next = args.iter();
    while let Some(c) = it.next() {
        if c == '%' {
            match it.next() {
                Some('%') => out.push('%'),
                Some('n') => out.push('\n'),
                Some(_) => out.push_str(&next.next().map(display).unwrap_or_default()),
                None => out.push('%'),
            }
        } else {
            out.push(c);
        }
    }
    out
}

fn string_method(s: &str, name: &str, args: &[Value]) -> Run<Value> {
    let str_arg = |i: usize| match args.get(i) {
        Some(Value::Str(x)) => Ok(x.to_string()),
        Some(Value::Char(c)) => Ok(c.to_string()),
        _ => Err(Fault::NullPointer(format!("String.{name}(null)"))),
    };
    let int_arg = |i: usize| match args.get(i) {
        Some(Value::Int(x)) => Ok(*x),
        _ => Err(Fault::NullPointer(format!("String.{name}(null)"))),
    };
    let chars: Vec<char> = s.chars().collect();
    let slice = |a: i64, b: i64| {
        if a < 0 || b < a || b as usize > chars.len() {
            Err(Fault::Thrown("StringIndexOutOfBoundsException".into()))
        } else {
            Ok(Value::Str(chars[a as usize..b as usize].iter().collect::<String>().into()))
        }
    };
    Ok(match name {
        "length" => Value::Int(chars.len() as i64),
        "isEmpty" => Value::Bool(s.is_empty()),
        "isBlank" => Value::Bool(s.trim().is_empty()),
        "trim" | "strip" => Value::Str(s.trim().into()),
        "toUpperCase" => Value::Str(s.to_uppercase().into()),
        "toLowerCase" => Value::Str(s.to_lowercase().into()),
        "equalsIgnoreCase" => Value::Bool(matches!(args.first(), Some(Value::Str(x)) if x.to_lowercase() == s.to_lowercase())),
        "contains" => Value::Bool(s.contains(&str_arg(0)?)),
        "startsWith" => Value::Bool(s.starts_with(&str_arg(0)?)),
        "endsWith" => Value::Bool(s.ends_with(&str_arg(0)?)),
        "concat" => Value::Str(format!("{s}{}", str_arg(0)?).into()),
        "replace" => Value::Str(s.replace(&str_arg(0)?, &str_arg(1)?).into()),
        "charAt" => {
            let i = int_arg(0)?;
            Value::Char(*chars.get(i as usize).filter(|_| i >= 0).ok_or_else(|| Fault::Thrown("StringIndexOutOfBoundsException".into()))?)
        }
        "substring" if args.len() == 2 => slice(int_arg(0)?, int_arg(1)?)?,
        "substring" => slice(int_arg(0)?, chars.len() as i64)?,
        _ => return Err(Fault::Unsupported(format!("String.{name}"))),
    })
}

fn binary(op: &str, l: &Value, r: &Value) -> Run<Value> {
    let npe = || Fault::NullPointer(format!("unboxing null in '{op}'"));
    match op {
        "+" if matches!(l, Value::Str(_)) || matches!(r, Value::Str(_)) => return Ok(Value::Str(format!("{}{}", display(l), display(r)).into())),
        "==" => return Ok(Value::Bool(same(l, r))),
        "!=" => return Ok(Value::Bool(!same(l, r))),
        "&&" | "||" | "&" | "|" | "^" if matches!(l, Value::Bool(_)) => {
            let (a, b) = (truthy(l)?, truthy(r)?);
            return Ok(Value::Bool(match op {
                "&&" | "&" => a && b,
                "||" | "|" => a || b,
                _ => a ^ b,
            }));
        }
        _ => {}
    }
    let (a, b) = (num(l).ok_or_else(npe)?, num(r).ok_or_else(npe)?);
    Ok(match (a, b) {
        (Num::I(x), Num::I(y)) => match op {
            "+" => Value::Int(x.wrapping_add(y)),
            "-" => Value::Int(x.wrapping_sub(y)),
            "*" => Value::Int(x.wrapping_mul(y)),
            "/" | "%" if y == 0 => return Err(Fault::Thrown("ArithmeticException: / by zero".into())),
            "/" => Value::Int(x.wrapping_div(y)),
            "%" => Value::Int(x.wrapping_rem(y)),
            "&" => Value::Int(x & y),
            "|" => Value::Int(x | y),
            "^" => Value::Int(x ^ y),
            "<<" => Value::Int(x.wrapping_shl(y as u32)),
            ">>" => Value::Int(x.wrapping_shr(y as u32)),
            ">>>" => Value::Int(((x as u64).wrapping_shr(y as u32)) as i64),
            "<" => Value::Bool(x < y),
            ">" => Value::Bool(x > y),
            "<=" => Value::Bool(x <= y),
            ">=" => Value::Bool(x >= y),
            _ => return Err(Fault::Unsupported(format!("operator {op}"))),
        },
        (a, b) => {
            let (x, y) = (a.as_f64(), b.as_f64());
            match op {
                "+" => Value::Float(x + y),
                "-" => Value::Float(x - y),
                "*" => Value::Float(x * y),
                "/" => Value::Float(x / y),
                "%" => Value::Float(x % y),
                "<" => Value::Bool(x < y),
                ">" => Value::Bool(x > y),
                "<=" => Value::Bool(x <= y),
                ">=" => Value::Bool(x >= y),
                _ => return Err(Fault::Unsupported(format!("operator {op}"))),
            }
        }
    })
}

/// Execute a script with the given inputs bound and return its result.
pub fn run(world: &World, script: &Snippet, inputs: Vec<(String, Ty, Value)>) -> Run<Value> {
    let mut it = Interp { world, scopes: vec![BTreeMap::new()], steps: 0 };
    for (n, t, v) in inputs {
        it.declare(&n, t, v);
    }
    it.scopes.push(BTreeMap::new());
    for item in &script.items {
        if let Item::Stmt(s) = item {
            match it.stmt(s)? {
                Flow::Return(v) => return Ok(v),
                Flow::Normal => {}
                _ => return Err(Fault::Unsupported("break outside a loop".into())),
            }
        }
    }
    Err(Fault::Unsupported("script finished without returning".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Value {
        Value::Str(x.into())
    }

    #[test]
    fn arithmetic_follows_java() {
        assert!(matches!(binary("/", &Value::Int(7), &Value::Int(2)), Ok(Value::Int(3))));
        assert!(matches!(binary("%", &Value::Int(-7), &Value::Int(2)), Ok(Value::Int(-1))));
        assert!(matches!(binary("/", &Value::Int(7), &Value::Float(2.0)), Ok(Value::Float(f)) if f == 3.5));
        assert!(matches!(binary("/", &Value::Int(1), &Value::Int(0)), Err(Fault::Thrown(_))));
        assert!(matches!(binary("+", &Value::Null, &Value::Int(0)), Err(Fault::NullPointer(_))));
    }

    #[test]
    fn concatenation() {
        let Ok(Value::Str(r)) = binary("+", &s("n="), &Value::Null) else { panic!() };
        assert_eq!(&*r, "n=null");
        let Ok(Value::Str(r)) = binary("+", &Value::Float(1.0), &s("x")) else { panic!() };
        assert_eq!(&*r, "1.0x");
    }

    #[test]
    fn literals() {
        assert!(matches!(literal(LitKind::Int, "0x1F"), Ok(Value::Int(31))));
        assert!(matches!(literal(LitKind::Int, "1_000L"), Ok(Value::Int(1000))));
        assert!(matches!(literal(LitKind::Char, "'\\n'"), Ok(Value::Char('\n'))));
        let Ok(Value::Str(r)) = literal(LitKind::Str, "\"a\\\"b\"") else { panic!() };
        assert_eq!(&*r, "a\"b");
    }

    #[test]
    fn coercion() {
        assert!(matches!(coerce(Value::Int(2), &Ty::Prim(Prim::Double), "x"), Ok(Value::Float(f)) if f == 2.0));
        assert!(matches!(coerce(Value::Null, &Ty::Prim(Prim::Int), "x"), Err(Fault::NullPointer(_))));
        assert!(matches!(coerce(Value::Null, &Ty::Boxed(Prim::Int), "x"), Ok(Value::Null)));
    }

    #[test]
    fn list_difference_is_reported() {
        let a = Value::List(Rc::new(RefCell::new(vec![s("x")])));
        let b = Value::List(Rc::new(RefCell::new(vec![s("y")])));
        assert_eq!(first_difference(&a, &b).unwrap(), "result[0]: x vs y");
        assert!(first_difference(&a, &a.clone()).is_none());
    }
}
