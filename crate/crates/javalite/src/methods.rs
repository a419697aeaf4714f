use ccci_core::model::simple_name;

use crate::world::{Prim, Ty, World};

pub enum Callee {
    Static(String),
    Instance(Ty),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Accessor {
    Get(String),
    Set(String),
}

/// Property name behind an accessor suffix: `SkuName` is `skuName`, `URL` stays `URL`.
fn property_candidates(suffix: &str) -> Vec<String> {
    let mut c = suffix.chars();
    let Some(first) = c.next() else { return Vec::new() };
    let lowered = first.to_lowercase().chain(c).collect::<String>();
    if lowered == suffix {
        vec![]
    } else {
        vec![lowered, suffix.to_string()]
    }
}

/// The field a synthesized getter or setter refers to.
pub fn bean_accessor(world: &World, class: &str, name: &str, argc: usize) -> Option<Accessor> {
    let (prefix, suffix) = ["get", "is", "set"].iter().find_map(|p| name.strip_prefix(p).map(|s| (*p, s)))?;
    let field = property_candidates(suffix).into_iter().find(|f| world.field(class, f).is_some())?;
    let ty = world.field_ty(class, &field)?;
    match (prefix, argc) {
        ("get", 0) => Some(Accessor::Get(field)),
        ("is", 0) if ty == Ty::Prim(Prim::Boolean) => Some(Accessor::Get(field)),
        ("set", 1) => Some(Accessor::Set(field)),
        _ => None,
    }
}

fn arity(name: &str, args: &[Ty], n: usize) -> Result<(), String> {
    if args.len() == n {
        Ok(())
    } else {
        Err(format!("method {name} cannot be applied to given types: expected {n} argument(s), found {}", args.len()))
    }
}

fn want(world: &World, name: &str, got: &Ty, to: &Ty) -> Result<(), String> {
    if world.assignable(got, to) {
        Ok(())
    } else {
        Err(format!("incompatible types in call to {name}: {got} cannot be converted to {to}"))
    }
}

const INT: Ty = Ty::Prim(Prim::Int);
const BOOL: Ty = Ty::Prim(Prim::Boolean);

fn object_method(name: &str, args: &[Ty]) -> Option<Ty> {
    match (name, args.len()) {
        ("equals", 1) => Some(BOOL),
        ("hashCode", 0) => Some(INT),
        ("toString", 0) => Some(Ty::Str),
        _ => None,
    }
}

/// Result type of a call, or a compiler message.
pub fn method_type(world: &World, callee: &Callee, name: &str, args: &[Ty]) -> Result<Ty, String> {
    let missing = |on: &dyn std::fmt::Display| Err(format!("cannot find symbol: method {name} in {on}"));
    let recv = match callee {
        Callee::Static(class) => return static_type(world, class, name, args),
        Callee::Instance(t) => t,
    };
    if let Some(t) = object_method(name, args) {
        if !matches!(recv, Ty::Prim(_) | Ty::Null | Ty::Void) {
            return Ok(t);
        }
    }
    match recv {
        Ty::Unknown => Ok(Ty::Unknown),
        Ty::Prim(p) => Err(format!("{} cannot be dereferenced", Ty::Prim(*p))),
        Ty::Null | Ty::Void => Err(format!("{recv} cannot be dereferenced")),
        Ty::Bean(class) => match bean_accessor(world, class, name, args.len()) {
            Some(Accessor::Get(f)) => Ok(world.field_ty(class, &f).unwrap_or(Ty::Unknown)),
            Some(Accessor::Set(f)) => {
                let ft = world.field_ty(class, &f).unwrap_or(Ty::Unknown);
                want(world, name, &args[0], &ft)?;
                Ok(Ty::Void)
            }
            None => missing(&simple_name(class)),
        },
        Ty::Str => {
            let r = match name {
                "length" => (0, INT),
                "isEmpty" | "isBlank" => (0, BOOL),
                "trim" | "strip" | "toUpperCase" | "toLowerCase" => (0, Ty::Str),
                "equalsIgnoreCase" | "contains" | "startsWith" | "endsWith" => (1, BOOL),
                "concat" => (1, Ty::Str),
                "charAt" => (1, Ty::Prim(Prim::Char)),
                "replace" => (2, Ty::Str),
                "substring" if args.len() == 2 => (2, Ty::Str),
                "substring" => (1, Ty::Str),
                _ => return missing(&"String"),
            };
            arity(name, args, r.0)?;
            Ok(r.1)
        }
        Ty::List(e) | Ty::Set(e) => {
            let is_list = matches!(recv, Ty::List(_));
            match (name, args.len()) {
                ("size", 0) => Ok(INT),
                ("isEmpty", 0) => Ok(BOOL),
                ("clear", 0) => Ok(Ty::Void),
                ("contains", 1) => Ok(BOOL),
                ("add", 1) => want(world, name, &args[0], e).map(|_| BOOL),
                ("addAll", 1) => match &args[0] {
                    Ty::List(x) | Ty::Set(x) if world.assignable(x, e) => Ok(BOOL),
                    Ty::Unknown => Ok(BOOL),
                    other => Err(format!("incompatible types in call to addAll: {other}")),
                },
                ("get", 1) if is_list => want(world, name, &args[0], &INT).map(|_| (**e).clone()),
                _ => missing(recv),
            }
        }
        Ty::Map(k, v) => match (name, args.len()) {
            ("size", 0) => Ok(INT),
            ("isEmpty", 0) => Ok(BOOL),
            ("get", 1) => Ok((**v).clone()),
            ("containsKey", 1) => Ok(BOOL),
            ("put", 2) => {
                want(world, name, &args[0], k)?;
                want(world, name, &args[1], v)?;
                Ok((**v).clone())
            }
            _ => missing(recv),
        },
        Ty::Boxed(p) => match (name, args.len()) {
            ("intValue", 0) => Ok(INT),
            ("longValue", 0) => Ok(Ty::Prim(Prim::Long)),
            ("doubleValue", 0) => Ok(Ty::Prim(Prim::Double)),
            ("booleanValue", 0) if *p == Prim::Boolean => Ok(BOOL),
            _ => missing(recv),
        },
        // library types outside the project are not modelled
        Ty::Opaque(n) if n.starts_with("java.") => Ok(Ty::Unknown),
        Ty::Opaque(_) | Ty::Object | Ty::Static(_) => missing(recv),
    }
}

fn static_type(world: &World, class: &str, name: &str, args: &[Ty]) -> Result<Ty, String> {
    let not_found = || Err(format!("cannot find symbol: method {name} in class {}", simple_name(class)));
    match (class, name) {
        ("BeanUtils", "copyProperties") => {
            if args.len() < 2 {
                return arity(name, args, 2).map(|_| Ty::Void);
            }
            for a in &args[..2] {
                if !a.is_reference() || matches!(a, Ty::Null) {
                    return Err(format!("incompatible types in call to copyProperties: {a} cannot be converted to Object"));
                }
            }
            Ok(Ty::Void)
        }
        ("Objects", "equals") => arity(name, args, 2).map(|_| BOOL),
        ("Objects", "isNull" | "nonNull") => arity(name, args, 1).map(|_| BOOL),
        ("Objects", "toString") => Ok(Ty::Str),
        ("Objects", "requireNonNull") if !args.is_empty() => Ok(args[0].clone()),
        ("Objects", "requireNonNullElse") => {
            arity(name, args, 2)?;
            Ok(if args[0] == Ty::Null { args[1].clone() } else { args[0].clone() })
        }
        ("String", "valueOf") => arity(name, args, 1).map(|_| Ty::Str),
        ("String", "format" | "join") if !args.is_empty() => Ok(Ty::Str),
        ("Integer", "valueOf") => arity(name, args, 1).map(|_| Ty::Boxed(Prim::Int)),
        ("Integer", "parseInt") => arity(name, args, 1).and_then(|_| want(world, name, &args[0], &Ty::Str)).map(|_| INT),
        ("Long", "valueOf") => arity(name, args, 1).map(|_| Ty::Boxed(Prim::Long)),
        ("Long", "parseLong") => arity(name, args, 1).and_then(|_| want(world, name, &args[0], &Ty::Str)).map(|_| Ty::Prim(Prim::Long)),
        ("Double", "valueOf") => arity(name, args, 1).map(|_| Ty::Boxed(Prim::Double)),
        ("Boolean", "valueOf") => arity(name, args, 1).map(|_| Ty::Boxed(Prim::Boolean)),
        ("Math", "max" | "min") => {
            arity(name, args, 2)?;
            match (args[0].numeric(), args[1].numeric()) {
                (Some(a), Some(b)) if a.is_numeric() && b.is_numeric() => Ok(Ty::Prim(Prim::promote(a, b))),
                _ => not_found(),
            }
        }
        ("Math", "abs") => {
            arity(name, args, 1)?;
            args[0].numeric().filter(|p| p.is_numeric()).map(|p| Ty::Prim(Prim::promote(p, Prim::Int))).map_or_else(not_found, Ok)
        }
        _ => not_found(),
    }
}

/// The class a bare name denotes when used as the target of a static call.
pub fn static_class(world: &World, name: &str) -> Option<String> {
    match world.ty(&ccci_core::model::TypeRef::named(name)) {
        Ty::Static(s) | Ty::Bean(s) => Some(s),
        Ty::Str => Some("String".into()),
        Ty::Boxed(_) => Some(simple_name(name).to_string()),
        _ => None,
    }
}
