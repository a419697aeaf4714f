use std::collections::BTreeMap;

use super::{cosine_similarity, EmbeddingProvider, EmbeddingVector, MappingEntry, MatchError, MatchKind, MatcherConfig};
use crate::model::{ClassGraph, ClassInfo, FieldInfo, FieldPath};

/// `simpleClassName fieldName fieldType comment`
pub fn candidate_text(owner: &ClassInfo, field: &FieldInfo) -> String {
    let mut t = format!("{} {} {}", owner.simple_name, field.name, field.declared_type.short_display());
    if let Some(c) = &field.comment {
        t.push(' ');
        t.push_str(c);
    }
    t
}

fn path_text(path: &FieldPath, graph: &ClassGraph) -> Option<String> {
    let owner = path.resolve(graph)?;
    Some(candidate_text(owner, owner.field(path.terminal())?))
}

/// Rank every candidate for each output path by cosine similarity of their
/// contextual texts and keep the best one at or above the threshold. Equal
/// scores go to the lexicographically smaller qualified path.
pub fn semantic_match(outputs: &[FieldPath], candidates: &[FieldPath], graph: &ClassGraph, provider: &dyn EmbeddingProvider, cfg: &MatcherConfig) -> Result<Vec<MappingEntry>, MatchError> {
    if outputs.is_empty() || candidates.is_empty() {
        return Ok(Vec::new());
    }
    let text_of = |p: &FieldPath| path_text(p, graph).ok_or_else(|| MatchError::UnknownClass(p.qualified()));
    let out_texts = outputs.iter().map(text_of).collect::<Result<Vec<_>, _>>()?;
    let cand_texts = candidates.iter().map(text_of).collect::<Result<Vec<_>, _>>()?;

    // one embedding per distinct text; a class reached along several paths is embedded once
    let mut distinct: BTreeMap<&str, usize> = BTreeMap::new();
    for t in out_texts.iter().chain(&cand_texts) {
        let n = distinct.len();
        distinct.entry(t.as_str()).or_insert(n);
    }
    let mut ordered: Vec<(&str, usize)> = distinct.iter().map(|(t, i)| (*t, *i)).collect();
    ordered.sort_by_key(|(_, i)| *i);
    let texts: Vec<String> = ordered.iter().map(|(t, _)| t.to_string()).collect();
    let vectors = provider.embed(&texts)?;
    if vectors.len() != texts.len() {
        return Err(MatchError::ProviderUnavailable(format!("{} vectors for {} texts", vectors.len(), texts.len())));
    }
    let vec_of = |t: &str| -> &EmbeddingVector<f64> { &vectors[distinct[t]] };

    let mut by_key: Vec<(String, &FieldPath, &str)> = candidates.iter().zip(&cand_texts).map(|(p, t)| (p.qualified(), p, t.as_str())).collect();
    by_key.sort_by(|a, b| a.0.cmp(&b.0));
    let mut consumed = vec![false; by_key.len()];
    let mut out = Vec::new();
    for (path, text) in outputs.iter().zip(&out_texts) {
        let u = vec_of(text);
        let mut best: Option<(usize, f64)> = None;
        for (i, (_, _, ct)) in by_key.iter().enumerate() {
            if consumed[i] {
                continue;
            }
            let s = cosine_similarity(u, vec_of(ct))?;
            // strict `>` over sorted candidates keeps the smallest path on ties
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((i, s));
            }
        }
        if let Some((i, score)) = best.filter(|(_, s)| *s >= cfg.threshold) {
            if cfg.exclusive {
                consumed[i] = true;
            }
            out.push(MappingEntry { input: by_key[i].1.clone(), output: path.clone(), kind: MatchKind::Semantic, score });
        }
    }
    Ok(out)
}
