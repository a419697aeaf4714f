use serde::{Deserialize, Serialize};

use crate::model::{ClassGraph, ClassInfo, FieldInfo};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptDefinition {
    pub concept: String,
    pub definition_text: String,
}

/// Each reachable class once, in breadth-first order. A subclass whose
/// superclass is already selected is dropped unless it declares a field of
/// its own.
pub fn select_concepts(graph: &ClassGraph) -> Vec<String> {
    let mut selected: Vec<String> = Vec::new();
    for name in graph.bfs_order() {
        let node = &graph.nodes[name];
        let redundant = node.superclass.as_ref().is_some_and(|s| selected.contains(s)) && node.declared_field_count == 0;
        if !redundant {
            selected.push(name.to_string());
        }
    }
    selected
}

/// `name : type : comment`, the comment slot omitted when there is none and
/// annotations appended as a last slot.
pub fn field_line(f: &FieldInfo) -> String {
    let mut parts = vec![f.name.clone(), f.declared_type.short_display()];
    if let Some(c) = &f.comment {
        parts.push(c.clone());
    }
    if !f.annotations.is_empty() {
        parts.push(f.annotations.iter().map(|a| format!("@{}", crate::model::simple_name(a))).collect::<Vec<_>>().join(" "));
    }
    parts.join(" : ")
}

pub fn class_definition(c: &ClassInfo) -> String {
    let mut text = match &c.comment {
        Some(comment) => format!("{} : {comment}", c.simple_name),
        None => c.simple_name.clone(),
    };
    for f in &c.fields {
        text.push('\n');
        text.push_str(&field_line(f));
    }
    text
}

pub fn generate_definitions(concepts: &[String], graph: &ClassGraph) -> Vec<ConceptDefinition> {
    concepts
        .iter()
        .filter_map(|c| graph.node(c))
        .map(|node| ConceptDefinition { concept: node.qualified_name.clone(), definition_text: class_definition(node) })
        .collect()
}
