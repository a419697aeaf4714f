use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use ccci_core::classifier::{ClassifierConfig, ProjectIndex};
use ccci_core::model::{parse_task_definition, simple_name, ClassInfo, FieldInfo, TaskDefinition, TypeRef};

use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Prim {
    Boolean,
    Char,
    Byte,
    Short,
    Int,
    Long,
    Float,
    Double,
}

impl Prim {
    pub fn from_name(n: &str) -> Option<Prim> {
        Some(match n {
            "boolean" => Prim::Boolean,
            "char" => Prim::Char,
            "byte" => Prim::Byte,
            "short" => Prim::Short,
            "int" => Prim::Int,
            "long" => Prim::Long,
            "float" => Prim::Float,
            "double" => Prim::Double,
            _ => return None,
        })
    }

    pub fn boxed_name(n: &str) -> Option<Prim> {
        Some(match n {
            "java.lang.Boolean" | "Boolean" => Prim::Boolean,
            "java.lang.Character" | "Character" => Prim::Char,
            "java.lang.Byte" | "Byte" => Prim::Byte,
            "java.lang.Short" | "Short" => Prim::Short,
            "java.lang.Integer" | "Integer" => Prim::Int,
            "java.lang.Long" | "Long" => Prim::Long,
            "java.lang.Float" | "Float" => Prim::Float,
            "java.lang.Double" | "Double" => Prim::Double,
            _ => return None,
        })
    }

    pub fn is_numeric(self) -> bool {
        !matches!(self, Prim::Boolean)
    }

    fn rank(self) -> u8 {
        match self {
            Prim::Boolean => 0,
            Prim::Byte => 1,
            Prim::Short | Prim::Char => 2,
            Prim::Int => 3,
            Prim::Long => 4,
            Prim::Float => 5,
            Prim::Double => 6,
        }
    }

    pub fn is_integral(self) -> bool {
        self.is_numeric() && self.rank() <= 4
    }

    /// Binary numeric promotion.
    pub fn promote(a: Prim, b: Prim) -> Prim {
        let p = if a.rank() >= b.rank() { a } else { b };
        if p.rank() < 3 {
            Prim::Int
        } else {
            p
        }
    }

    pub fn widens_to(self, to: Prim) -> bool {
        self == to || (self.is_numeric() && to.is_numeric() && self != Prim::Char && to != Prim::Char && self.rank() < to.rank()) || (self == Prim::Char && to.rank() >= 3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ty {
    Prim(Prim),
    Boxed(Prim),
    Str,
    /// A DTO class known to the project or its archives.
    Bean(String),
    List(Box<Ty>),
    Set(Box<Ty>),
    Map(Box<Ty>, Box<Ty>),
    /// Any other named type; only assignable to itself and `Object`.
    Opaque(String),
    Object,
    Null,
    Void,
    /// A type variable or an unresolvable name; checks are skipped.
    Unknown,
    /// A class used as the target of a static call.
    Static(String),
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Prim(p) | Ty::Boxed(p) => {
                let n = format!("{p:?}").to_lowercase();
                if matches!(self, Ty::Boxed(_)) {
                    write!(f, "boxed {n}")
                } else {
                    write!(f, "{n}")
                }
            }
            Ty::Str => write!(f, "String"),
            Ty::Bean(n) | Ty::Opaque(n) | Ty::Static(n) => write!(f, "{}", simple_name(n)),
            Ty::List(t) => write!(f, "List<{t}>"),
            Ty::Set(t) => write!(f, "Set<{t}>"),
            Ty::Map(k, v) => write!(f, "Map<{k}, {v}>"),
            Ty::Object => write!(f, "Object"),
            Ty::Null => write!(f, "null"),
            Ty::Void => write!(f, "void"),
            Ty::Unknown => write!(f, "?"),
        }
    }
}

impl Ty {
    pub fn is_reference(&self) -> bool {
        !matches!(self, Ty::Prim(_) | Ty::Void)
    }

    /// The primitive behind a primitive or boxed type.
    pub fn numeric(&self) -> Option<Prim> {
        match self {
            Ty::Prim(p) | Ty::Boxed(p) => Some(*p),
            _ => None,
        }
    }
}

/// Every class reachable from a task: project sources first, then archives.
pub struct World {
    pub task: TaskDefinition,
    index: ProjectIndex,
    cache: RefCell<BTreeMap<String, Option<ClassInfo>>>,
}

const LIST_TYPES: &[&str] = &["java.util.List", "java.util.ArrayList", "java.util.LinkedList", "java.util.Collection", "List", "ArrayList", "LinkedList", "Collection"];
const SET_TYPES: &[&str] = &["java.util.Set", "java.util.HashSet", "java.util.LinkedHashSet", "java.util.TreeSet", "Set", "HashSet", "LinkedHashSet", "TreeSet"];
const MAP_TYPES: &[&str] = &["java.util.Map", "java.util.HashMap", "java.util.LinkedHashMap", "java.util.TreeMap", "Map", "HashMap", "LinkedHashMap", "TreeMap"];
/// Classes with static helpers the interpreter implements.
pub const STATIC_CLASSES: &[&str] = &["BeanUtils", "Objects", "String", "Integer", "Long", "Boolean", "Double", "Math"];

pub const TASK_FILE: &str = "task.ccci-task";

impl World {
    /// Open the workspace's `task.ccci-task`.
    pub fn open(workspace: &Path) -> Result<World, Error> {
        World::from_task_file(&workspace.join(TASK_FILE))
    }

    /// Paths inside the task resolve against the file's directory.
    pub fn from_task_file(path: &Path) -> Result<World, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Setup(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        let task = parse_task_definition(&text).map_err(|e| Error::Setup(format!("{}: {e}", path.display())))?.resolve_paths(base);
        let index = ProjectIndex::build(&task, &ClassifierConfig::default()).map_err(|e| Error::Setup(e.to_string()))?;
        Ok(World { task, index, cache: RefCell::new(BTreeMap::new()) })
    }

    /// The class with its superclass fields appended, by simple or qualified name.
    pub fn class(&self, name: &str) -> Option<ClassInfo> {
        if let Some(hit) = self.cache.borrow().get(name) {
            return hit.clone();
        }
        let found = self.load(name, 0);
        self.cache.borrow_mut().insert(name.to_string(), found.clone());
        found
    }

    fn load(&self, name: &str, depth: usize) -> Option<ClassInfo> {
        let (q, origin) = self.index.locate(name).ok()?;
        let mut info = self.index.load(&q, &origin).ok()?;
        if let Some(sup) = info.superclass.clone().filter(|_| depth < 16) {
            if let Some(parent) = self.load(&sup, depth + 1) {
                let own: Vec<String> = info.fields.iter().map(|f| f.name.clone()).collect();
                let inherited: Vec<FieldInfo> = parent.fields.into_iter().filter(|f| !own.contains(&f.name)).collect();
                info.fields.extend(inherited);
            }
        }
        Some(info)
    }

    pub fn field(&self, class: &str, field: &str) -> Option<FieldInfo> {
        self.class(class)?.fields.into_iter().find(|f| f.name == field)
    }

    /// The class and its superclasses, nearest first.
    pub fn ancestry(&self, class: &str) -> Vec<String> {
        let mut out = Vec::new();
        let mut cur = self.class(class);
        while let Some(c) = cur {
            if out.contains(&c.qualified_name) {
                break;
            }
            out.push(c.qualified_name.clone());
            cur = c.superclass.as_deref().and_then(|s| self.class(s));
        }
        out
    }

    /// Resolve a written type. Names are looked up as builtins first, then
    /// in the project and archives.
    pub fn ty(&self, t: &TypeRef) -> Ty {
        if t.array_dims > 0 {
            return Ty::Opaque(format!("{}[]", t.name));
        }
        if t.wildcard.is_some() || t.name == "?" {
            return Ty::Unknown;
        }
        let n = t.name.as_str();
        let arg = |i: usize| t.args.get(i).map(|a| self.ty(a)).unwrap_or(Ty::Unknown);
        if let Some(p) = Prim::from_name(n) {
            return Ty::Prim(p);
        }
        if let Some(p) = Prim::boxed_name(n) {
            return Ty::Boxed(p);
        }
        match n {
            "void" => return Ty::Void,
            "String" | "java.lang.String" | "CharSequence" | "java.lang.CharSequence" => return Ty::Str,
            "Object" | "java.lang.Object" => return Ty::Object,
            "var" => return Ty::Unknown,
            _ => {}
        }
        if LIST_TYPES.contains(&n) {
            return Ty::List(Box::new(arg(0)));
        }
        if SET_TYPES.contains(&n) {
            return Ty::Set(Box::new(arg(0)));
        }
        if MAP_TYPES.contains(&n) {
            return Ty::Map(Box::new(arg(0)), Box::new(arg(1)));
        }
        if n.starts_with("java.") || n.starts_with("javax.") {
            return Ty::Opaque(n.to_string());
        }
        match self.class(n) {
            Some(c) => Ty::Bean(c.qualified_name),
            // an unqualified single capital is a type variable
            None if !n.contains('.') && n.len() == 1 => Ty::Unknown,
            None if STATIC_CLASSES.contains(&n) => Ty::Static(n.to_string()),
            None => Ty::Opaque(n.to_string()),
        }
    }

    pub fn field_ty(&self, class: &str, field: &str) -> Option<Ty> {
        self.field(class, field).map(|f| self.ty(&f.declared_type))
    }

    /// Assignment conversion: identity, widening, boxing, unboxing, subclass
    /// to superclass, null to any reference, anything to `Object`.
    pub fn assignable(&self, from: &Ty, to: &Ty) -> bool {
        match (from, to) {
            (Ty::Unknown, _) | (_, Ty::Unknown) => true,
            (Ty::Void, _) | (_, Ty::Void) => false,
            (Ty::Null, t) => t.is_reference(),
            (_, Ty::Object) => true,
            (Ty::Prim(a), Ty::Prim(b)) => a.widens_to(*b),
            (Ty::Prim(a), Ty::Boxed(b)) | (Ty::Boxed(a), Ty::Boxed(b)) => a == b,
            (Ty::Boxed(a), Ty::Prim(b)) => a.widens_to(*b),
            (Ty::Bean(a), Ty::Bean(b)) => a == b || self.ancestry(a).contains(b),
            (Ty::List(a), Ty::List(b)) | (Ty::Set(a), Ty::Set(b)) => self.generic_arg_compatible(a, b),
            (Ty::Map(k1, v1), Ty::Map(k2, v2)) => self.generic_arg_compatible(k1, k2) && self.generic_arg_compatible(v1, v2),
            (a, b) => a == b,
        }
    }

    /// Generic arguments are invariant, except that raw or inferred ones match anything.
    fn generic_arg_compatible(&self, a: &Ty, b: &Ty) -> bool {
        matches!(a, Ty::Unknown) || matches!(b, Ty::Unknown) || a == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widening() {
        assert!(Prim::Int.widens_to(Prim::Long));
        assert!(Prim::Char.widens_to(Prim::Int));
        assert!(!Prim::Short.widens_to(Prim::Char));
        assert!(!Prim::Long.widens_to(Prim::Int));
        assert!(!Prim::Boolean.widens_to(Prim::Int));
        assert_eq!(Prim::promote(Prim::Byte, Prim::Short), Prim::Int);
        assert_eq!(Prim::promote(Prim::Int, Prim::Double), Prim::Double);
    }
}
