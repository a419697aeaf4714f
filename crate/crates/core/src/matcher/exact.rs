use super::{leaves, MappingEntry, MatchError, MatchKind};
use crate::model::ClassGraph;

/// An output leaf is matched when exactly one input leaf carries the same
/// terminal name. Several candidates leave it to the semantic step.
pub fn exact_match(graph: &ClassGraph, inputs: &[String], output: &str) -> Result<Vec<MappingEntry>, MatchError> {
    let mut input_leaves = Vec::new();
    for i in inputs {
        input_leaves.extend(leaves(graph, i)?.into_iter().map(|(p, _)| p));
    }
    let mut out = Vec::new();
    for (path, _) in leaves(graph, output)? {
        let mut hits = input_leaves.iter().filter(|c| c.terminal() == path.terminal());
        if let (Some(only), None) = (hits.next(), hits.next()) {
            out.push(MappingEntry { input: only.clone(), output: path, kind: MatchKind::Exact, score: 1.0 });
        }
    }
    Ok(out)
}
