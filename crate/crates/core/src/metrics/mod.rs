//! Similarity between generated and reference code.

mod bleu;
mod dataflow;
mod tokens;
mod tree;

use num_traits::Float;
use serde::{Deserialize, Serialize};

pub use bleu::{bleu4, weighted_ngram_match, KEYWORD_WEIGHT};
pub use dataflow::{flow_edges, FlowEdge};
pub use tokens::{tokenize_code, CodeToken, TokenStream};
pub use tree::{multiset_overlap, snippet_tree, Tree, ANON};

use crate::syntax::ast::{parse_snippet, Snippet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("reference is empty")]
    EmptyReference,
    #[error("reference does not parse: {0}")]
    ReferenceUnparseable(String),
    #[error("weights must be non-negative and sum to 1")]
    BadWeights,
}

pub(crate) fn lit<T: Float>(x: f64) -> T {
    T::from(x).expect("f64 constant fits the scalar type")
}

/// A structural score plus whether the candidate parsed at all. An
/// unparseable candidate scores zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Structural<T> {
    pub value: T,
    pub candidate_parsed: bool,
}

fn parse_pair(candidate: &str, reference: &str) -> Result<(Option<Snippet>, Snippet), MetricError> {
    let r = parse_snippet(reference).map_err(|e| MetricError::ReferenceUnparseable(e.to_string()))?;
    Ok((parse_snippet(candidate).ok(), r))
}

fn ratio<T: Float>(hit: usize, of: usize, candidate_size: usize) -> T {
    if of == 0 {
        return if candidate_size == 0 { T::one() } else { T::zero() };
    }
    lit::<T>(hit as f64) / lit(of as f64)
}

/// Share of the reference's anonymised subtrees (depth two or more) also
/// present in the candidate, counted as multisets.
pub fn ast_match<T: Float>(candidate: &str, reference: &str) -> Result<Structural<T>, MetricError> {
    let (c, r) = parse_pair(candidate, reference)?;
    let Some(c) = c else { return Ok(Structural { value: T::zero(), candidate_parsed: false }) };
    let (cs, rs) = (snippet_tree(&c).subtrees(), snippet_tree(&r).subtrees());
    Ok(Structural { value: ratio(multiset_overlap(&rs, &cs), rs.len(), cs.len()), candidate_parsed: true })
}

/// Share of the reference's def-use edges present in the candidate. With no
/// reference edges the score is 1 exactly when the candidate has none either.
pub fn dataflow_match<T: Float>(candidate: &str, reference: &str) -> Result<Structural<T>, MetricError> {
    let (c, r) = parse_pair(candidate, reference)?;
    let Some(c) = c else { return Ok(Structural { value: T::zero(), candidate_parsed: false }) };
    let key = |e: &FlowEdge| format!("{}>{:?}", e.0, e.1);
    let ce: Vec<String> = flow_edges(&c).iter().map(key).collect();
    let re: Vec<String> = flow_edges(&r).iter().map(key).collect();
    Ok(Structural { value: ratio(multiset_overlap(&re, &ce), re.len(), ce.len()), candidate_parsed: true })
}

/// 1 − levenshtein / longer length, over characters.
pub fn edit_similarity<T: Float>(a: &str, b: &str) -> T {
    let longest = a.chars().count().max(b.chars().count());
    if longest == 0 {
        return T::one();
    }
    T::one() - lit::<T>(strsim::levenshtein(a, b) as f64) / lit(longest as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CodeBleuWeights<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
    pub delta: T,
}

impl<T: Float> Default for CodeBleuWeights<T> {
    fn default() -> Self {
        let q = lit(0.25);
        CodeBleuWeights { alpha: q, beta: q, gamma: q, delta: q }
    }
}

impl<T: Float> CodeBleuWeights<T> {
    pub fn new(alpha: T, beta: T, gamma: T, delta: T) -> Result<Self, MetricError> {
        let w = CodeBleuWeights { alpha, beta, gamma, delta };
        let all = [alpha, beta, gamma, delta];
        let sum = all.iter().fold(T::zero(), |a, &b| a + b);
        if all.iter().any(|x| !(*x >= T::zero())) || (sum - T::one()).abs() > lit(1e-9) {
            return Err(MetricError::BadWeights);
        }
        Ok(w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricScores<T> {
    pub bleu4: T,
    pub weighted_ngram: T,
    pub ast_match: T,
    pub dataflow_match: T,
    pub codebleu: T,
    pub edit_similarity: T,
    pub candidate_parsed: bool,
}

impl<T: Float> MetricScores<T> {
    /// All zero; the row recorded for a script whose pipeline failed.
    pub fn zero() -> Self {
        let z = T::zero();
        MetricScores { bleu4: z, weighted_ngram: z, ast_match: z, dataflow_match: z, codebleu: z, edit_similarity: z, candidate_parsed: false }
    }
}

pub fn combine<T: Float>(w: &CodeBleuWeights<T>, bleu4: T, weighted: T, ast: T, dataflow: T) -> T {
    w.alpha * bleu4 + w.beta * weighted + w.gamma * ast + w.delta * dataflow
}

pub fn codebleu<T: Float>(candidate: &str, reference: &str, weights: &CodeBleuWeights<T>) -> Result<MetricScores<T>, MetricError> {
    let (ct, rt) = (tokenize_code(candidate), tokenize_code(reference));
    let b = bleu4(&ct, &rt)?;
    let wn = weighted_ngram_match(&ct, &rt)?;
    let ast = ast_match(candidate, reference)?;
    let df = dataflow_match(candidate, reference)?;
    Ok(MetricScores {
        bleu4: b,
        weighted_ngram: wn,
        ast_match: ast.value,
        dataflow_match: df.value,
        codebleu: combine(weights, b, wn, ast.value, df.value),
        edit_similarity: edit_similarity(candidate, reference),
        candidate_parsed: ast.candidate_parsed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SCRIPT: &str = "\
InventoryResponseDTO response = new InventoryResponseDTO();
BeanUtils.copyProperties(inventoryInfoDTO, response);
response.setName(inventoryInfoDTO.getInventoryName());
SKUInfo sku = new SKUInfo();
sku.setOwnName(skuInfoDTO.getUser().getName());
response.setSku(sku);
return response;";

    /// Consistent renaming of every identifier; the initial keeps its case.
    fn renamed(text: &str) -> String {
        let mut seen: Vec<String> = Vec::new();
        crate::syntax::lex(text)
            .into_iter()
            .map(|t| {
                if t.kind != crate::syntax::TokenKind::Identifier {
                    return t.text;
                }
                let i = seen.iter().position(|s| *s == t.text).unwrap_or_else(|| {
                    seen.push(t.text.clone());
                    seen.len() - 1
                });
                let head = if t.text.starts_with(char::is_uppercase) { "Id" } else { "id" };
                format!("{head}{i}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    #[test]
    fn identity_scores_one() {
        let s = codebleu::<f64>(SCRIPT, SCRIPT, &CodeBleuWeights::default()).unwrap();
        for v in [s.bleu4, s.weighted_ngram, s.ast_match, s.dataflow_match, s.codebleu, s.edit_similarity] {
            assert_eq!(v, 1.0);
        }
        assert!(s.candidate_parsed);
    }

    #[test]
    fn renaming_invariance() {
        let r = renamed(SCRIPT);
        assert_eq!(ast_match::<f64>(&r, SCRIPT).unwrap().value, 1.0);
        assert_eq!(dataflow_match::<f64>(&r, SCRIPT).unwrap().value, 1.0);
        assert_eq!(dataflow_match::<f64>("x = 1; y = x; z = y;", "a = 1; b = a; c = b;").unwrap().value, 1.0);
    }

    #[test]
    fn subtree_ratio() {
        // reference subtrees, enumerated by hand:
        //  1 (snippet ...)                         6 (expr_stmt (assign _ = (binary _ + 1)))
        //  2 (local int (var _ 1))                 7 (assign _ = (binary _ + 1))
        //  3 (var _ 1)                             8 (binary _ + 1)
        //  4 (local int (var _ 2))                 9 (return (binary _ * 2))
        //  5 (var _ 2)                            10 (binary _ * 2)
        let reference = "int a = 1; int b = 2; a = a + 1; return a * 2;";
        let subs = snippet_tree(&parse_snippet(reference).unwrap()).subtrees();
        assert_eq!(subs.len(), 10);
        for s in ["(var _ 1)", "(var _ 2)", "(binary _ + 1)", "(binary _ * 2)", "(return (binary _ * 2))", "(local int (var _ 1))"] {
            assert!(subs.contains(&s.to_string()), "{s}");
        }
        // keeps 2,3,4,5,6,7,8; loses the snippet root and both return subtrees
        let candidate = "int a = 1; int b = 2; a = a + 1; return a - 3;";
        assert!((ast_match::<f64>(candidate, reference).unwrap().value - 0.7).abs() < 1e-12);
    }

    #[test]
    fn dropped_flow_edge() {
        // reference edges: a→b, a→c, b→c
        let reference = "a = 1; b = a; c = a + b;";
        let candidate = "a = 1; b = a; c = b;";
        assert_eq!(flow_edges(&parse_snippet(reference).unwrap()), [(0, Some(1)), (0, Some(2)), (1, Some(2))]);
        assert!((dataflow_match::<f64>(candidate, reference).unwrap().value - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(dataflow_match::<f64>("int x = 1;", "int x = 1;").unwrap().value, 1.0);
        assert_eq!(dataflow_match::<f64>("a = 1; b = a;", "int x = 1;").unwrap().value, 0.0);
    }

    #[test]
    fn unparseable_candidate() {
        let s = ast_match::<f64>("int = = ;", "int a = 1;").unwrap();
        assert_eq!(s, Structural { value: 0.0, candidate_parsed: false });
        assert!(matches!(ast_match::<f64>("int a = 1;", "int = = ;"), Err(MetricError::ReferenceUnparseable(_))));
        let all = codebleu::<f64>("int = = ;", "int a = 1;", &CodeBleuWeights::default()).unwrap();
        assert!(!all.candidate_parsed);
    }

    #[test]
    fn weights() {
        let c = "int a = 1; return a;";
        let r = "int a = 2; return a + 1;";
        let only_bleu = codebleu::<f64>(c, r, &CodeBleuWeights::new(1.0, 0.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(only_bleu.codebleu, only_bleu.bleu4);
        assert_eq!(CodeBleuWeights::new(0.5, 0.5, 0.5, 0.0), Err(MetricError::BadWeights));
        assert_eq!(CodeBleuWeights::new(1.5, -0.5, 0.0, 0.0), Err(MetricError::BadWeights));
        assert!((combine(&CodeBleuWeights::default(), 0.5, 0.5, 0.8, 1.0) - 0.70).abs() < 1e-12);
    }

    /// Full-table Levenshtein, the textbook recurrence.
    fn dp_levenshtein(a: &str, b: &str) -> usize {
        let (a, b): (Vec<char>, Vec<char>) = (a.chars().collect(), b.chars().collect());
        let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
        for (i, row) in d.iter_mut().enumerate() {
            row[0] = i;
        }
        for j in 0..=b.len() {
            d[0][j] = j;
        }
        for i in 1..=a.len() {
            for j in 1..=b.len() {
                let sub = d[i - 1][j - 1] + usize::from(a[i - 1] != b[j - 1]);
                d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
            }
        }
        d[a.len()][b.len()]
    }

    #[test]
    fn edit_examples() {
        assert_eq!(edit_similarity::<f64>("same", "same"), 1.0);
        assert_eq!(edit_similarity::<f64>("", ""), 1.0);
        assert!((edit_similarity::<f64>("abc", "abd") - 0.6667).abs() < 1e-4);
        assert_eq!(edit_similarity::<f64>("abc", ""), 0.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn levenshtein_matches_table(a in "[a-cé ]{0,64}", b in "[a-cé ]{0,64}") {
            prop_assert_eq!(strsim::levenshtein(&a, &b), dp_levenshtein(&a, &b));
            let s = edit_similarity::<f64>(&a, &b);
            prop_assert_eq!(s, edit_similarity::<f64>(&b, &a));
            prop_assert!((0.0..=1.0).contains(&s));
        }

        #[test]
        fn composite_is_linear(b in 0.0f64..1.0, w in 0.0f64..1.0, a in 0.0f64..1.0, d in 0.0f64..1.0, k in 0.1f64..4.0) {
            // scale alpha by k and renormalise
            let total = k * 0.25 + 0.75;
            let wt = CodeBleuWeights::new(k * 0.25 / total, 0.25 / total, 0.25 / total, 0.25 / total).unwrap();
            let expected = (k * 0.25 * b + 0.25 * w + 0.25 * a + 0.25 * d) / total;
            prop_assert!((combine(&wt, b, w, a, d) - expected).abs() < 1e-12);
        }

        #[test]
        fn structural_scores_ignore_renaming(
            stmts in proptest::collection::vec((0usize..4, 0usize..4, 0usize..4, 0u8..3), 1..8)
        ) {
            let names = ["alpha", "beta", "gamma", "delta"];
            let mut text = String::new();
            for (t, x, y, op) in &stmts {
                let op = ["+", "*", "-"][*op as usize];
                text.push_str(&format!("{} = {} {op} {};\n", names[*t], names[*x], names[*y]));
            }
            text.push_str("return alpha;");
            let r = renamed(&text);
            prop_assert_eq!(ast_match::<f64>(&r, &text).unwrap().value, 1.0);
            prop_assert_eq!(dataflow_match::<f64>(&r, &text).unwrap().value, 1.0);
            let s = codebleu::<f64>(&r, &text, &CodeBleuWeights::default()).unwrap();
            for v in [s.bleu4, s.weighted_ngram, s.ast_match, s.dataflow_match, s.codebleu, s.edit_similarity] {
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }
    }
}
