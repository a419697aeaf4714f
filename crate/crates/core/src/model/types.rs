use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

/// Subject language grammar the toolchain understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubjectLanguage {
    #[default]
    Java,
}

impl SubjectLanguage {
    pub fn name(self) -> &'static str {
        match self {
            SubjectLanguage::Java => "java",
        }
    }

    pub fn source_extension(self) -> &'static str {
        match self {
            SubjectLanguage::Java => "java",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskDefinition {
    pub project_root: PathBuf,
    pub dependency_archives: Vec<PathBuf>,
    pub input_class_names: Vec<String>,
    pub output_class_name: String,
    pub additional_rules: Vec<String>,
    pub subject_language: SubjectLanguage,
}

impl TaskDefinition {
    /// Input names followed by the output name.
    pub fn all_class_names(&self) -> impl Iterator<Item = &str> {
        self.input_class_names.iter().map(String::as_str).chain(std::iter::once(self.output_class_name.as_str()))
    }

    /// Resolve relative project/archive paths against `base`.
    pub fn resolve_paths(mut self, base: &std::path::Path) -> Self {
        if self.project_root.is_relative() {
            self.project_root = base.join(&self.project_root);
        }
        for a in &mut self.dependency_archives {
            if a.is_relative() {
                *a = base.join(&*a);
            }
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Wildcard {
    /// `?`
    Unbounded,
    /// `? extends T`
    Extends,
    /// `? super T`
    Super,
}

/// A (possibly generic) type reference, fully qualified wherever the
/// qualification is known.
///
/// Renders in the same text form the JVM reflection API reports, e.g.
/// `java.util.List<com.xx.WarehouseArea>` or `long[][]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypeRef {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub args: Vec<TypeRef>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub array_dims: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wildcard: Option<Wildcard>,
}

fn is_zero(v: &u8) -> bool {
    *v == 0
}

pub const PRIMITIVES: &[&str] = &["boolean", "byte", "char", "double", "float", "int", "long", "short", "void"];

impl TypeRef {
    pub fn named(name: impl Into<String>) -> Self {
        TypeRef { name: name.into(), args: Vec::new(), array_dims: 0, wildcard: None }
    }

    pub fn generic(name: impl Into<String>, args: Vec<TypeRef>) -> Self {
        TypeRef { args, ..TypeRef::named(name) }
    }

    pub fn unbounded_wildcard() -> Self {
        TypeRef { wildcard: Some(Wildcard::Unbounded), ..TypeRef::named("?") }
    }

    pub fn is_primitive(&self) -> bool {
        self.array_dims == 0 && PRIMITIVES.contains(&self.name.as_str())
    }

    pub fn simple_name(&self) -> &str {
        simple_name(&self.name)
    }

    /// The same type without array dimensions or wildcard bound.
    pub fn base(&self) -> TypeRef {
        TypeRef { name: self.name.clone(), args: self.args.clone(), array_dims: 0, wildcard: None }
    }

    /// Rendering for prompts: `java.lang.` prefixes dropped, everything else qualified.
    pub fn short_display(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, true);
        out
    }

    /// Every named type mentioned, outermost first.
    pub fn referenced_names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        if self.wildcard != Some(Wildcard::Unbounded) {
            out.push(&self.name);
        }
        for a in &self.args {
            a.collect_names(out);
        }
    }

    fn write(&self, out: &mut String, short: bool) {
        match self.wildcard {
            Some(Wildcard::Unbounded) => {
                out.push('?');
                return;
            }
            Some(Wildcard::Extends) => out.push_str("? extends "),
            Some(Wildcard::Super) => out.push_str("? super "),
            None => {}
        }
        let name = if short { self.name.strip_prefix("java.lang.").unwrap_or(&self.name) } else { &self.name };
        out.push_str(name);
        if !self.args.is_empty() {
            out.push('<');
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                a.write(out, short);
            }
            out.push('>');
        }
        for _ in 0..self.array_dims {
            out.push_str("[]");
        }
    }

    /// Parse the rendered text form back into a `TypeRef`.
    pub fn parse(text: &str) -> Option<TypeRef> {
        let compact: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let t = parse_type(&compact, &mut pos)?;
        skip_ws(&compact, &mut pos);
        (pos == compact.len()).then_some(t)
    }
}

fn skip_ws(s: &[char], pos: &mut usize) {
    while s.get(*pos).is_some_and(|c| c.is_whitespace()) {
        *pos += 1;
    }
}

fn parse_type(s: &[char], pos: &mut usize) -> Option<TypeRef> {
    skip_ws(s, pos);
    if s.get(*pos) == Some(&'?') {
        *pos += 1;
        skip_ws(s, pos);
        for (kw, w) in [("extends", Wildcard::Extends), ("super", Wildcard::Super)] {
            let kw_chars: Vec<char> = kw.chars().collect();
            if s[*pos..].starts_with(&kw_chars) {
                *pos += kw_chars.len();
                let mut inner = parse_type(s, pos)?;
                inner.wildcard = Some(w);
                return Some(inner);
            }
        }
        return Some(TypeRef::unbounded_wildcard());
    }
    let start = *pos;
    while s.get(*pos).is_some_and(|c| c.is_alphanumeric() || matches!(c, '_' | '$' | '.')) {
        *pos += 1;
    }
    if start == *pos {
        return None;
    }
    let mut t = TypeRef::named(s[start..*pos].iter().collect::<String>());
    skip_ws(s, pos);
    if s.get(*pos) == Some(&'<') {
        *pos += 1;
        loop {
            t.args.push(parse_type(s, pos)?);
            skip_ws(s, pos);
            match s.get(*pos) {
                Some(',') => *pos += 1,
                Some('>') => {
                    *pos += 1;
                    break;
                }
                _ => return None,
            }
        }
    }
    loop {
        skip_ws(s, pos);
        if s.get(*pos) == Some(&'[') && s.get(*pos + 1) == Some(&']') {
            *pos += 2;
            t.array_dims += 1;
        } else {
            break;
        }
    }
    Some(t)
}

impl fmt::Display for TypeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.write(&mut out, false);
        f.write_str(&out)
    }
}

pub fn simple_name(qualified: &str) -> &str {
    qualified.rsplit('.').next().unwrap_or(qualified)
}

pub fn package_of(qualified: &str) -> &str {
    qualified.rsplit_once('.').map(|(p, _)| p).unwrap_or("")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContainerKind {
    Scalar,
    List,
    Optional,
    ResponseWrapper,
}

/// Simple names of generic single-argument types treated as response wrappers.
pub const DEFAULT_RESPONSE_WRAPPERS: &[&str] =
    &["ResponseList", "Response", "ResponseEntity", "Result", "PageResult", "Page", "PageInfo"];

const LIST_TYPES: &[&str] = &[
    "java.util.List", "java.util.ArrayList", "java.util.LinkedList", "java.util.Collection",
    "java.util.Set", "java.util.HashSet", "java.util.LinkedHashSet", "java.util.TreeSet",
    "java.lang.Iterable", "List", "ArrayList", "LinkedList", "Collection", "Set", "HashSet",
    "LinkedHashSet", "TreeSet", "Iterable",
];

/// Work out how a declared type wraps its payload.
///
/// Returns the container kind and, for anything but scalars, the element type.
pub fn container_of(ty: &TypeRef, wrappers: &[&str]) -> (ContainerKind, Option<TypeRef>) {
    if ty.array_dims > 0 {
        // byte[]/char[] are opaque scalars (binary blobs, text).
        if ty.array_dims == 1 && matches!(ty.name.as_str(), "byte" | "char") {
            return (ContainerKind::Scalar, None);
        }
        let elem = TypeRef { array_dims: ty.array_dims - 1, ..ty.clone() };
        return (ContainerKind::List, Some(elem));
    }
    let arg = || ty.args.first().map(unwrap_wildcard);
    if ty.args.len() == 1 {
        if LIST_TYPES.contains(&ty.name.as_str()) {
            return (ContainerKind::List, arg());
        }
        if matches!(ty.name.as_str(), "java.util.Optional" | "Optional") {
            return (ContainerKind::Optional, arg());
        }
        if wrappers.contains(&ty.simple_name()) {
            return (ContainerKind::ResponseWrapper, arg());
        }
    }
    (ContainerKind::Scalar, None)
}

fn unwrap_wildcard(t: &TypeRef) -> TypeRef {
    match t.wildcard {
        Some(Wildcard::Unbounded) => TypeRef::named("java.lang.Object"),
        Some(_) => TypeRef { wildcard: None, ..t.clone() },
        None => t.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub name: String,
    pub declared_type: TypeRef,
    pub container_kind: ContainerKind,
    pub element_type: Option<TypeRef>,
    pub comment: Option<String>,
    pub annotations: Vec<String>,
}

impl FieldInfo {
    pub fn new(name: impl Into<String>, declared_type: TypeRef) -> Self {
        let (container_kind, element_type) = container_of(&declared_type, DEFAULT_RESPONSE_WRAPPERS);
        FieldInfo { name: name.into(), declared_type, container_kind, element_type, comment: None, annotations: Vec::new() }
    }

    pub fn with_comment(mut self, comment: impl Into<String>) -> Self {
        self.comment = Some(comment.into());
        self
    }

    /// The type whose structure the field carries: the element type for
    /// containers, the declared type otherwise.
    pub fn payload_type(&self) -> &TypeRef {
        self.element_type.as_ref().unwrap_or(&self.declared_type)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "path")]
pub enum Origin {
    /// Found in the project sources; carries the source file.
    Local(PathBuf),
    /// Found in a dependency archive; carries the archive.
    External(PathBuf),
}

impl Origin {
    pub fn is_local(&self) -> bool {
        matches!(self, Origin::Local(_))
    }

    pub fn path(&self) -> &std::path::Path {
        match self {
            Origin::Local(p) | Origin::External(p) => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub qualified_name: String,
    pub simple_name: String,
    pub package: String,
    pub comment: Option<String>,
    /// Own fields in declaration order, then fields inherited from the
    /// direct superclass once the hierarchy has been resolved.
    pub fields: Vec<FieldInfo>,
    /// Number of leading entries of `fields` declared by this class itself.
    pub declared_field_count: usize,
    pub superclass: Option<String>,
    pub origin: Origin,
}

impl ClassInfo {
    pub fn new(qualified_name: impl Into<String>, origin: Origin) -> Self {
        let qualified_name = qualified_name.into();
        ClassInfo {
            simple_name: simple_name(&qualified_name).to_string(),
            package: package_of(&qualified_name).to_string(),
            qualified_name,
            comment: None,
            fields: Vec::new(),
            declared_field_count: 0,
            superclass: None,
            origin,
        }
    }

    pub fn with_fields(mut self, fields: Vec<FieldInfo>) -> Self {
        self.declared_field_count = fields.len();
        self.fields = fields;
        self
    }

    pub fn own_fields(&self) -> &[FieldInfo] {
        &self.fields[..self.declared_field_count.min(self.fields.len())]
    }

    pub fn field(&self, name: &str) -> Option<&FieldInfo> {
        self.fields.iter().find(|f| f.name == name)
    }

    /// Append inherited fields, skipping any the class shadows.
    pub fn append_inherited(&mut self, inherited: &[FieldInfo]) {
        for f in inherited {
            if self.field(&f.name).is_none() {
                self.fields.push(f.clone());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub owner: String,
    pub field: String,
    pub child: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGraph {
    pub nodes: BTreeMap<String, ClassInfo>,
    pub edges: Vec<Edge>,
    pub roots: Vec<String>,
    /// (owner, field) pairs whose edge closes a cycle and was not expanded.
    pub cycle_marks: BTreeSet<(String, String)>,
}

impl ClassGraph {
    pub fn node(&self, qualified_name: &str) -> Option<&ClassInfo> {
        self.nodes.get(qualified_name)
    }

    /// The child class reached through `owner.field`, if that field is an edge.
    pub fn child_of(&self, owner: &str, field: &str) -> Option<&str> {
        self.edges.iter().find(|e| e.owner == owner && e.field == field).map(|e| e.child.as_str())
    }

    pub fn incoming(&self, qualified_name: &str) -> usize {
        self.edges.iter().filter(|e| e.child == qualified_name).count()
    }

    /// Breadth-first node order from the roots; ties broken lexicographically.
    pub fn bfs_order(&self) -> Vec<&str> {
        let mut seen = BTreeSet::new();
        let mut order = Vec::new();
        let mut frontier: Vec<&str> = Vec::new();
        for r in &self.roots {
            if self.nodes.contains_key(r) && seen.insert(r.as_str()) {
                frontier.push(r);
            }
        }
        while !frontier.is_empty() {
            order.extend(frontier.iter().copied());
            let mut next: Vec<&str> = Vec::new();
            for owner in &frontier {
                for e in self.edges.iter().filter(|e| e.owner == *owner) {
                    if seen.insert(e.child.as_str()) {
                        next.push(e.child.as_str());
                    }
                }
            }
            next.sort_unstable();
            frontier = next;
        }
        order
    }

    /// Check the structural invariants: edge endpoints exist, every node is
    /// reachable from a root, and the graph minus cycle marks is acyclic.
    pub fn validate(&self) -> Result<(), String> {
        for e in &self.edges {
            if !self.nodes.contains_key(&e.owner) || !self.nodes.contains_key(&e.child) {
                return Err(format!("edge {}.{} -> {} has a missing endpoint", e.owner, e.field, e.child));
            }
        }
        let reached = self.bfs_order().len();
        if reached != self.nodes.len() {
            return Err(format!("{} of {} nodes unreachable from roots", self.nodes.len() - reached, self.nodes.len()));
        }
        // Kahn's algorithm over the edges that were expanded.
        let mut indeg: BTreeMap<&str, usize> = self.nodes.keys().map(|k| (k.as_str(), 0)).collect();
        for e in &self.edges {
            *indeg.get_mut(e.child.as_str()).unwrap() += 1;
        }
        let mut ready: Vec<&str> = indeg.iter().filter(|(_, d)| **d == 0).map(|(k, _)| *k).collect();
        let mut removed = 0;
        while let Some(n) = ready.pop() {
            removed += 1;
            for e in self.edges.iter().filter(|e| e.owner == n) {
                let d = indeg.get_mut(e.child.as_str()).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.push(e.child.as_str());
                }
            }
        }
        if removed != self.nodes.len() {
            return Err("graph contains a cycle outside the cycle marks".into());
        }
        Ok(())
    }
}

/// A field reached from a root DTO through a chain of field names.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FieldPath {
    /// Qualified name of the root DTO.
    pub class_name: String,
    pub segments: Vec<String>,
}

impl FieldPath {
    pub fn new(class_name: impl Into<String>, segments: Vec<String>) -> Self {
        FieldPath { class_name: class_name.into(), segments }
    }

    pub fn terminal(&self) -> &str {
        self.segments.last().map(String::as_str).unwrap_or("")
    }

    /// `sku.ownName`
    pub fn relative(&self) -> String {
        self.segments.join(".")
    }

    /// `com.xx.InventoryResponseDTO.sku.ownName`, the ordering key.
    pub fn qualified(&self) -> String {
        format!("{}.{}", self.class_name, self.relative())
    }

    /// Walk the segments through the graph; returns the class owning the
    /// terminal field.
    pub fn resolve<'g>(&self, graph: &'g ClassGraph) -> Option<&'g ClassInfo> {
        let mut owner = graph.node(&self.class_name)?;
        let (last, init) = self.segments.split_last()?;
        for seg in init {
            owner.field(seg)?;
            owner = graph.node(graph.child_of(&owner.qualified_name, seg)?)?;
        }
        owner.field(last).map(|_| owner)
    }
}

/// `InventoryResponseDTO.sku.ownName`
impl fmt::Display for FieldPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", simple_name(&self.class_name), self.relative())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cardinality {
    #[serde(rename = "1:1")]
    OneToOne,
    #[serde(rename = "1:N")]
    OneToMany,
    #[serde(rename = "N:M")]
    ManyToMany,
}

impl Cardinality {
    pub fn as_str(self) -> &'static str {
        match self {
            Cardinality::OneToOne => "1:1",
            Cardinality::OneToMany => "1:N",
            Cardinality::ManyToMany => "N:M",
        }
    }
}

impl std::str::FromStr for Cardinality {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s.to_ascii_uppercase().as_str() {
            "1:1" => Ok(Cardinality::OneToOne),
            "1:N" => Ok(Cardinality::OneToMany),
            "N:M" | "M:N" => Ok(Cardinality::ManyToMany),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub domain: Option<String>,
    pub parent: Table,
    pub child: Table,
    pub cardinality: Cardinality,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationGraph {
    pub domains: Vec<String>,
    pub relations: Vec<Relation>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_text_roundtrip() {
        for text in [
            "int",
            "java.util.List<com.xx.WarehouseArea>",
            "java.util.Map<java.lang.String, java.lang.Integer>",
            "java.util.List<? extends com.wms.basics.Area>",
            "java.util.List<?>",
            "long[][]",
            "com.xx.ResponseList<com.xx.InventorySkuItemFlow>",
        ] {
            let t = TypeRef::parse(text).unwrap();
            assert_eq!(t.to_string(), text);
        }
        assert!(TypeRef::parse("List<").is_none());
    }

    #[test]
    fn containers() {
        let list = TypeRef::parse("java.util.List<com.xx.WarehouseArea>").unwrap();
        assert_eq!(container_of(&list, DEFAULT_RESPONSE_WRAPPERS), (ContainerKind::List, Some(TypeRef::named("com.xx.WarehouseArea"))));
        let wrapped = TypeRef::parse("com.xx.ResponseList<com.xx.Flow>").unwrap();
        assert_eq!(container_of(&wrapped, DEFAULT_RESPONSE_WRAPPERS).0, ContainerKind::ResponseWrapper);
        let opt = TypeRef::parse("java.util.Optional<java.lang.String>").unwrap();
        assert_eq!(container_of(&opt, DEFAULT_RESPONSE_WRAPPERS).0, ContainerKind::Optional);
        let arr = TypeRef::parse("long[][]").unwrap();
        assert_eq!(container_of(&arr, DEFAULT_RESPONSE_WRAPPERS), (ContainerKind::List, Some(TypeRef::parse("long[]").unwrap())));
        let map = TypeRef::parse("java.util.Map<K, V>").unwrap();
        assert_eq!(container_of(&map, DEFAULT_RESPONSE_WRAPPERS), (ContainerKind::Scalar, None));
        let bounded = TypeRef::parse("java.util.List<? extends com.A>").unwrap();
        assert_eq!(container_of(&bounded, DEFAULT_RESPONSE_WRAPPERS).1, Some(TypeRef::named("com.A")));
    }

    #[test]
    fn field_info_invariant() {
        let f = FieldInfo::new("areas", TypeRef::parse("java.util.List<com.A>").unwrap());
        assert_ne!(f.container_kind, ContainerKind::Scalar);
        assert!(f.element_type.is_some());
        assert_eq!(f.payload_type().name, "com.A");
    }

    #[test]
    fn short_display_drops_java_lang() {
        let t = TypeRef::parse("java.util.List<java.lang.String>").unwrap();
        assert_eq!(t.short_display(), "java.util.List<String>");
    }

    #[test]
    fn field_path_rendering() {
        let p = FieldPath::new("com.xx.InventoryResponseDTO", vec!["sku".into(), "ownName".into()]);
        assert_eq!(p.to_string(), "InventoryResponseDTO.sku.ownName");
        assert_eq!(p.relative(), "sku.ownName");
        assert_eq!(p.terminal(), "ownName");
    }

    fn node(name: &str, fields: &[(&str, &str)]) -> ClassInfo {
        ClassInfo::new(name, Origin::Local(PathBuf::from("x")))
            .with_fields(fields.iter().map(|(n, t)| FieldInfo::new(*n, TypeRef::named(*t))).collect())
    }

    #[test]
    fn graph_validation_and_resolution() {
        let mut g = ClassGraph::default();
        g.nodes.insert("A".into(), node("A", &[("b", "B"), ("x", "int")]));
        g.nodes.insert("B".into(), node("B", &[("y", "int")]));
        g.roots.push("A".into());
        g.edges.push(Edge { owner: "A".into(), field: "b".into(), child: "B".into() });
        assert!(g.validate().is_ok());
        let p = FieldPath::new("A", vec!["b".into(), "y".into()]);
        assert_eq!(p.resolve(&g).unwrap().qualified_name, "B");
        assert!(FieldPath::new("A", vec!["b".into(), "nope".into()]).resolve(&g).is_none());

        g.edges.push(Edge { owner: "B".into(), field: "y".into(), child: "A".into() });
        assert!(g.validate().is_err());

        let mut orphan = g.clone();
        orphan.edges.pop();
        orphan.nodes.insert("C".into(), node("C", &[]));
        assert!(orphan.validate().unwrap_err().contains("unreachable"));
    }
}
