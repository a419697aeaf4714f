use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::RetrieveError;
use crate::classifier::{ClassificationMap, ClassifyError, ProjectIndex};
use crate::model::{ClassGraph, ClassInfo, Edge, Origin, TypeRef, PRIMITIVES};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HierarchyConfig {
    /// Number of layers expanded, the roots being layer 1.
    pub max_depth: usize,
    /// Log unresolvable field types instead of failing.
    pub unresolved_as_warning: bool,
}

impl Default for HierarchyConfig {
    fn default() -> Self {
        HierarchyConfig { max_depth: 8, unresolved_as_warning: false }
    }
}

/// Primitives, their boxes, text, dates, numbers, and anything else from the
/// platform library terminate expansion.
pub fn is_scalar_type(t: &TypeRef) -> bool {
    PRIMITIVES.contains(&t.name.as_str()) || t.name.starts_with("java.") || t.name.starts_with("javax.") || t.name == "?"
}

struct Builder<'a> {
    index: &'a ProjectIndex,
    cmap: &'a ClassificationMap,
    cfg: &'a HierarchyConfig,
    graph: ClassGraph,
    children: BTreeMap<String, BTreeSet<String>>,
}

impl Builder<'_> {
    fn origin_of(&self, name: &str) -> Result<Option<(String, Origin)>, RetrieveError> {
        if let Some(q) = self.cmap.qualified_for(name) {
            return Ok(Some((q.to_string(), self.cmap.get(q).unwrap().clone())));
        }
        match self.index.locate(name) {
            Ok(found) => Ok(Some(found)),
            Err(ClassifyError::Unresolved(n)) if self.cfg.unresolved_as_warning => {
                log::warn!("type {n} not found, kept as a leaf");
                Ok(None)
            }
            Err(e) => Err(e.into()),
        }
    }

    fn load(&self, qualified: &str, origin: &Origin) -> Result<ClassInfo, RetrieveError> {
        let mut info = self.index.load(qualified, origin)?;
        if let Some(sup) = info.superclass.clone().filter(|s| !is_scalar_type(&TypeRef::named(s.as_str()))) {
            match self.origin_of(&sup)? {
                Some((q, o)) => {
                    let parent = self.index.load(&q, &o)?;
                    info.append_inherited(parent.own_fields());
                }
                None => {}
            }
        }
        Ok(info)
    }

    fn reaches(&self, from: &str, to: &str) -> bool {
        let mut stack = vec![from];
        let mut seen = BTreeSet::new();
        while let Some(n) = stack.pop() {
            if n == to {
                return true;
            }
            if seen.insert(n) {
                if let Some(cs) = self.children.get(n) {
                    stack.extend(cs.iter().map(String::as_str));
                }
            }
        }
        false
    }
}

/// Breadth-first expansion of the roots into a class graph.
///
/// A field whose payload type is scalar or a type variable is a leaf. Any
/// other payload becomes an edge to its class, located through `cmap` first
/// and the project index otherwise. An edge that would close a cycle is
/// recorded in `cycle_marks` instead.
pub fn resolve_hierarchy(roots: &[String], cmap: &ClassificationMap, index: &ProjectIndex, cfg: &HierarchyConfig) -> Result<ClassGraph, RetrieveError> {
    assert!(cfg.max_depth >= 1, "max_depth must be positive");
    let mut b = Builder { index, cmap, cfg, graph: ClassGraph::default(), children: BTreeMap::new() };
    let mut layer = Vec::new();
    for r in roots {
        let (q, origin) = b.origin_of(r)?.ok_or_else(|| ClassifyError::Unresolved(r.clone()))?;
        if !b.graph.nodes.contains_key(&q) {
            let info = b.load(&q, &origin)?;
            b.graph.nodes.insert(q.clone(), info);
            layer.push(q.clone());
        }
        if !b.graph.roots.contains(&q) {
            b.graph.roots.push(q);
        }
    }
    let mut depth = 1;
    while !layer.is_empty() && depth < cfg.max_depth {
        layer.sort();
        let mut next = Vec::new();
        for owner in &layer {
            let fields = b.graph.nodes[owner].fields.clone();
            for f in &fields {
                let payload = f.payload_type();
                if is_scalar_type(payload) || payload.array_dims > 0 {
                    continue;
                }
                if !payload.name.contains('.') && !index.contains(&payload.name) && cmap.qualified_for(&payload.name).is_none() {
                    // type variable
                    continue;
                }
                let child = if b.graph.nodes.contains_key(&payload.name) {
                    payload.name.clone()
                } else {
                    let Some((q, origin)) = b.origin_of(&payload.name)? else { continue };
                    if !b.graph.nodes.contains_key(&q) {
                        let info = b.load(&q, &origin)?;
                        b.graph.nodes.insert(q.clone(), info);
                        next.push(q.clone());
                    }
                    q
                };
                if &child == owner || b.reaches(&child, owner) {
                    b.graph.cycle_marks.insert((owner.clone(), f.name.clone()));
                    continue;
                }
                b.children.entry(owner.clone()).or_default().insert(child.clone());
                b.graph.edges.push(Edge { owner: owner.clone(), field: f.name.clone(), child });
            }
        }
        layer = next;
        depth += 1;
    }
    Ok(b.graph)
}
