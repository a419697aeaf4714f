//! Field correspondences between the input DTOs and the output DTO.

mod concepts;
mod embed;
mod exact;
mod semantic;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use concepts::{generate_definitions, select_concepts, ConceptDefinition};
pub use embed::{cosine_similarity, normalize_text, EmbeddingProvider, EmbeddingVector, HttpEmbedder, TrigramEmbedder, EMBED_KEY_ENV};
pub use exact::exact_match;
pub use semantic::{candidate_text, semantic_match};

use crate::model::{ClassGraph, ClassInfo, FieldInfo, FieldPath};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MatchError {
    #[error("embedding provider unavailable: {0}")]
    ProviderUnavailable(String),
    #[error("embedding dimension {found} does not match {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cannot compare an all-zero vector")]
    ZeroVector,
    #[error("nothing to embed in an empty text")]
    EmptyText,
    #[error("output field {0} mapped twice")]
    DuplicateOutput(String),
    #[error("class {0} is not in the class graph")]
    UnknownClass(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MatchKind {
    Exact,
    Semantic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MappingEntry {
    pub input: FieldPath,
    pub output: FieldPath,
    pub kind: MatchKind,
    pub score: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MappingTable {
    pub entries: Vec<MappingEntry>,
    pub unmatched_outputs: Vec<FieldPath>,
}

impl MappingTable {
    pub fn exact(&self) -> impl Iterator<Item = &MappingEntry> {
        self.entries.iter().filter(|e| e.kind == MatchKind::Exact)
    }
}

/// Two aligned columns under an `Input Field → Output Field` header, then any
/// unmatched outputs.
impl fmt::Display for MappingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let header = "Input Field";
        let width = self.entries.iter().map(|e| e.input.to_string().chars().count()).max().unwrap_or(0).max(header.len());
        writeln!(f, "{header:width$} → Output Field")?;
        for e in &self.entries {
            writeln!(f, "{:width$} → {}", e.input.to_string(), e.output)?;
        }
        for u in &self.unmatched_outputs {
            writeln!(f, "(unmatched) → {u}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatcherConfig {
    pub threshold: f64,
    pub top_k: usize,
    /// Remove an input field from the candidates once it has been used.
    pub exclusive: bool,
}

impl Default for MatcherConfig {
    fn default() -> Self {
        MatcherConfig { threshold: 0.5, top_k: 1, exclusive: false }
    }
}

/// A leaf field reached from a root: its path, the class declaring it, and the field.
#[derive(Debug, Clone, Copy)]
pub struct Leaf<'g> {
    pub owner: &'g ClassInfo,
    pub field: &'g FieldInfo,
}

/// Leaf fields under `root` in declaration order, descending depth-first into
/// fields that are graph edges.
pub fn leaves<'g>(graph: &'g ClassGraph, root: &str) -> Result<Vec<(FieldPath, Leaf<'g>)>, MatchError> {
    fn walk<'g>(graph: &'g ClassGraph, class: &'g ClassInfo, prefix: &mut Vec<String>, root: &str, on_path: &mut BTreeSet<&'g str>, out: &mut Vec<(FieldPath, Leaf<'g>)>) {
        for f in &class.fields {
            prefix.push(f.name.clone());
            match graph.child_of(&class.qualified_name, &f.name).and_then(|c| graph.node(c)) {
                Some(child) if !on_path.contains(child.qualified_name.as_str()) => {
                    on_path.insert(&child.qualified_name);
                    walk(graph, child, prefix, root, on_path, out);
                    on_path.remove(child.qualified_name.as_str());
                }
                _ => out.push((FieldPath::new(root, prefix.clone()), Leaf { owner: class, field: f })),
            }
            prefix.pop();
        }
    }
    let node = graph.node(root).ok_or_else(|| MatchError::UnknownClass(root.to_string()))?;
    let mut out = Vec::new();
    let mut on_path = BTreeSet::from([node.qualified_name.as_str()]);
    walk(graph, node, &mut Vec::new(), root, &mut on_path, &mut out);
    Ok(out)
}

/// Combine exact and semantic entries in output-field declaration order.
/// Output leaves without an entry become `unmatched_outputs`.
pub fn merge_mappings(exact: Vec<MappingEntry>, semantic: Vec<MappingEntry>, output_leaves: &[FieldPath]) -> Result<MappingTable, MatchError> {
    let mut seen = BTreeSet::new();
    for e in exact.iter().chain(&semantic) {
        if !seen.insert(e.output.clone()) {
            return Err(MatchError::DuplicateOutput(e.output.to_string()));
        }
    }
    let mut pool: Vec<MappingEntry> = exact.into_iter().chain(semantic).collect();
    let mut table = MappingTable::default();
    for leaf in output_leaves {
        match pool.iter().position(|e| &e.output == leaf) {
            Some(i) => table.entries.push(pool.swap_remove(i)),
            None => table.unmatched_outputs.push(leaf.clone()),
        }
    }
    // entries for paths outside the leaf list keep their relative order at the end
    table.entries.extend(pool);
    Ok(table)
}

/// Exact matching, then semantic matching of what is left, then merge.
pub fn match_fields(graph: &ClassGraph, inputs: &[String], output: &str, provider: &dyn EmbeddingProvider, cfg: &MatcherConfig) -> Result<MappingTable, MatchError> {
    let out_leaves: Vec<FieldPath> = leaves(graph, output)?.into_iter().map(|(p, _)| p).collect();
    let exact = exact_match(graph, inputs, output)?;
    let covered: BTreeSet<&FieldPath> = exact.iter().map(|e| &e.output).collect();
    let rest: Vec<FieldPath> = out_leaves.iter().filter(|p| !covered.contains(p)).cloned().collect();
    let mut candidates = Vec::new();
    for i in inputs {
        candidates.extend(leaves(graph, i)?.into_iter().map(|(p, _)| p));
    }
    if cfg.exclusive {
        let used: BTreeSet<&FieldPath> = exact.iter().map(|e| &e.input).collect();
        candidates.retain(|c| !used.contains(c));
    }
    let semantic = semantic_match(&rest, &candidates, graph, provider, cfg)?;
    merge_mappings(exact, semantic, &out_leaves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Edge, Origin, TypeRef};
    use proptest::prelude::*;

    const NAMES: [&str; 8] = ["name", "code", "skuName", "ownerName", "quantity", "phone", "address", "label"];

    fn class(q: &str, fields: &[(usize, &str)]) -> ClassInfo {
        let fields = fields.iter().map(|(n, ty)| FieldInfo::new(NAMES[*n], TypeRef::named(*ty))).collect();
        ClassInfo::new(q, Origin::Local("X.java".into())).with_fields(fields)
    }

    /// Inputs `p.In0..`, output `p.Out` with a nested `p.Part` under field `part`.
    fn graph(inputs: &[Vec<usize>], out: &[usize], part: &[usize]) -> (ClassGraph, Vec<String>, String) {
        let mut g = ClassGraph::default();
        let mut names = Vec::new();
        for (i, fs) in inputs.iter().enumerate() {
            let q = format!("p.In{i}");
            let fs: Vec<(usize, &str)> = fs.iter().map(|n| (*n, "String")).collect();
            g.nodes.insert(q.clone(), class(&q, &fs));
            names.push(q);
        }
        let mut of: Vec<(usize, &str)> = out.iter().map(|n| (*n, "String")).collect();
        of.retain(|(n, _)| *n != 6);
        of.push((6, "Part"));
        let mut o = class("p.Out", &of);
        o.fields.last_mut().unwrap().name = "part".into();
        g.nodes.insert("p.Out".into(), o);
        let pf: Vec<(usize, &str)> = part.iter().map(|n| (*n, "String")).collect();
        g.nodes.insert("p.Part".into(), class("p.Part", &pf));
        g.edges.push(Edge { owner: "p.Out".into(), field: "part".into(), child: "p.Part".into() });
        g.roots = names.iter().cloned().chain(["p.Out".to_string()]).collect();
        (g, names, "p.Out".into())
    }

    fn dedup(v: Vec<usize>) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        v.into_iter().filter(|n| seen.insert(*n)).collect()
    }

    struct Scaled(TrigramEmbedder, f64);

    impl EmbeddingProvider for Scaled {
        fn name(&self) -> &str {
            "scaled"
        }
        fn dimension(&self) -> usize {
            self.0.dimension()
        }
        fn embed(&self, texts: &[String]) -> Result<Vec<EmbeddingVector<f64>>, MatchError> {
            Ok(self.0.embed(texts)?.iter().map(|v| v.scaled(self.1)).collect())
        }
    }

    fn field_sets() -> impl Strategy<Value = (Vec<Vec<usize>>, Vec<usize>, Vec<usize>)> {
        let set = || proptest::collection::vec(0usize..8, 1..6).prop_map(dedup);
        (proptest::collection::vec(set(), 1..4), set(), set())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn coverage_partition((inputs, out, part) in field_sets(), threshold in 0.0f64..1.0) {
            let (g, ins, o) = graph(&inputs, &out, &part);
            let cfg = MatcherConfig { threshold, ..MatcherConfig::default() };
            let table = match_fields(&g, &ins, &o, &TrigramEmbedder::default(), &cfg).unwrap();
            let leaves: Vec<FieldPath> = leaves(&g, &o).unwrap().into_iter().map(|(p, _)| p).collect();
            let mapped: Vec<FieldPath> = table.entries.iter().map(|e| e.output.clone()).collect();
            let mut all: Vec<FieldPath> = mapped.iter().chain(&table.unmatched_outputs).cloned().collect();
            let distinct: BTreeSet<String> = all.iter().map(|p| p.qualified()).collect();
            prop_assert_eq!(distinct.len(), all.len());
            all.sort_by_key(|p| p.qualified());
            let mut want = leaves.clone();
            want.sort_by_key(|p| p.qualified());
            prop_assert_eq!(all, want);
            for e in table.entries.iter().filter(|e| e.kind == MatchKind::Semantic) {
                prop_assert!(e.score >= threshold);
            }
        }

        #[test]
        fn top1_ignores_vector_scale((inputs, out, part) in field_sets(), k in 0.01f64..100.0) {
            let (g, ins, o) = graph(&inputs, &out, &part);
            let cfg = MatcherConfig::default();
            let a = match_fields(&g, &ins, &o, &TrigramEmbedder::default(), &cfg).unwrap();
            let b = match_fields(&g, &ins, &o, &Scaled(TrigramEmbedder::default(), k), &cfg).unwrap();
            let pairs = |t: &MappingTable| t.entries.iter().map(|e| (e.input.qualified(), e.output.qualified(), e.kind)).collect::<Vec<_>>();
            prop_assert_eq!(pairs(&a), pairs(&b));
        }
    }
}
