//! The `.ccci-relations` file: database table relations in indented form.
//!
//! ```text
//! Warehouse Domain:
//! - warehouse (Warehouse)
//!   |-> warehouse_area (Warehouse Area): 1:N relationship
//! ```
//!
//! An indented line that is neither a parent (`- `) nor a child (`|->`)
//! continues the previous child line, so hard-wrapped descriptions parse.

use std::fmt::Write as _;

use super::types::{Cardinality, Relation, RelationGraph, Table};
use super::ModelError;

fn parse_table(text: &str) -> Table {
    let text = text.trim();
    match text.split_once('(') {
        Some((name, rest)) => Table {
            name: name.trim().to_string(),
            label: Some(rest.trim_end().trim_end_matches(')').trim().to_string()).filter(|l| !l.is_empty()),
        },
        None => Table { name: text.to_string(), label: None },
    }
}

struct PendingChild {
    line: usize,
    text: String,
}

fn finish_child(
    pending: PendingChild,
    parent: &Table,
    domain: &Option<String>,
    out: &mut Vec<Relation>,
) -> Result<(), ModelError> {
    let mut body = pending.text.trim().to_string();
    if body.to_ascii_lowercase().ends_with("relationship") {
        body.truncate(body.len() - "relationship".len());
    }
    let body = body.trim_end();
    let (head, card) = body.rsplit_once(char::is_whitespace).unwrap_or(("", body));
    let cardinality = card
        .parse::<Cardinality>()
        .map_err(|_| ModelError::UnknownCardinality { line: pending.line, value: card.to_string() })?;
    let child = parse_table(head.trim_end().trim_end_matches(':'));
    if child.name.is_empty() {
        return Err(ModelError::MalformedRelation { line: pending.line });
    }
    out.push(Relation { domain: domain.clone(), parent: parent.clone(), child, cardinality });
    Ok(())
}

pub fn parse_db_relations(text: &str) -> Result<RelationGraph, ModelError> {
    let mut graph = RelationGraph::default();
    let mut domain: Option<String> = None;
    let mut parent: Option<Table> = None;
    let mut pending: Option<PendingChild> = None;

    let flush = |pending: &mut Option<PendingChild>, parent: &Option<Table>, domain: &Option<String>, rels: &mut Vec<Relation>| {
        if let Some(p) = pending.take() {
            let Some(parent) = parent else {
                return Err(ModelError::DanglingChild { line: p.line });
            };
            finish_child(p, parent, domain, rels)?;
        }
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("|->") {
            flush(&mut pending, &parent, &domain, &mut graph.relations)?;
            if parent.is_none() {
                return Err(ModelError::DanglingChild { line: line_no });
            }
            pending = Some(PendingChild { line: line_no, text: rest.to_string() });
        } else if let Some(rest) = trimmed.strip_prefix("- ") {
            flush(&mut pending, &parent, &domain, &mut graph.relations)?;
            parent = Some(parse_table(rest));
        } else if !raw.starts_with(char::is_whitespace) && trimmed.ends_with(':') {
            flush(&mut pending, &parent, &domain, &mut graph.relations)?;
            let name = trimmed.trim_end_matches(':').trim().to_string();
            graph.domains.push(name.clone());
            domain = Some(name);
            parent = None;
        } else if let Some(p) = pending.as_mut() {
            p.text.push(' ');
            p.text.push_str(trimmed);
        } else {
            return Err(ModelError::MalformedRelation { line: line_no });
        }
    }
    flush(&mut pending, &parent, &domain, &mut graph.relations)?;
    Ok(graph)
}

/// Render relations in the same indented layout, one line per child.
pub fn format_db_relations(graph: &RelationGraph) -> String {
    let mut out = String::new();
    let mut last_domain: Option<&str> = None;
    let mut last_parent: Option<&str> = None;
    let label = |t: &Table| match &t.label {
        Some(l) => format!("{} ({})", t.name, l),
        None => t.name.clone(),
    };
    for r in &graph.relations {
        if r.domain.as_deref() != last_domain {
            if let Some(d) = &r.domain {
                let _ = writeln!(out, "{d}:");
            }
            last_domain = r.domain.as_deref();
            last_parent = None;
        }
        if last_parent != Some(r.parent.name.as_str()) {
            let _ = writeln!(out, "- {}", label(&r.parent));
            last_parent = Some(&r.parent.name);
        }
        let _ = writeln!(out, "  |-> {}: {} relationship", label(&r.child), r.cardinality.as_str());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    // Hard-wrapped exactly as typeset.
    const LISTING_5: &str = "\
Warehouse Domain:
- warehouse (Warehouse)
  |-> warehouse_area (Warehouse Area):
  1:N relationship
  |-> warehouse_dock (Dock):
  1:N relationship
- warehouse_area (Warehouse Area)
  |-> warehouse_location (Warehouse
  Location): 1:N relationship
";

    fn triples(g: &RelationGraph) -> Vec<(&str, &str, &str)> {
        g.relations.iter().map(|r| (r.parent.name.as_str(), r.child.name.as_str(), r.cardinality.as_str())).collect()
    }

    #[test]
    fn listing_five() {
        let g = parse_db_relations(LISTING_5).unwrap();
        assert_eq!(g.domains, vec!["Warehouse Domain"]);
        assert_eq!(
            triples(&g),
            vec![
                ("warehouse", "warehouse_area", "1:N"),
                ("warehouse", "warehouse_dock", "1:N"),
                ("warehouse_area", "warehouse_location", "1:N"),
            ]
        );
        assert_eq!(g.relations[2].child.label.as_deref(), Some("Warehouse Location"));
    }

    #[test]
    fn empty_file() {
        let g = parse_db_relations("").unwrap();
        assert!(g.domains.is_empty() && g.relations.is_empty());
    }

    #[test]
    fn unknown_cardinality() {
        let err = parse_db_relations("- a\n  |-> b: 2:3 relationship\n").unwrap_err();
        assert_eq!(err, ModelError::UnknownCardinality { line: 2, value: "2:3".into() });
    }

    #[test]
    fn dangling_child() {
        let err = parse_db_relations("D:\n  |-> b: 1:N relationship\n").unwrap_err();
        assert_eq!(err, ModelError::DanglingChild { line: 2 });
    }

    #[test]
    fn other_cardinalities() {
        let g = parse_db_relations("- a\n  |-> b: 1:1 relationship\n  |-> c: N:M relationship\n").unwrap();
        assert_eq!(triples(&g), vec![("a", "b", "1:1"), ("a", "c", "N:M")]);
        assert_eq!(g.relations[0].domain, None);
    }

    #[test]
    fn format_reparses() {
        let g = parse_db_relations(LISTING_5).unwrap();
        assert_eq!(parse_db_relations(&format_db_relations(&g)).unwrap(), g);
    }
}
