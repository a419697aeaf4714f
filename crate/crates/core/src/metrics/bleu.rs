use std::collections::BTreeMap;

use num_traits::Float;

use super::{lit, MetricError, TokenStream};
use crate::syntax::TokenKind;

pub const KEYWORD_WEIGHT: f64 = 4.0;

/// Shared BLEU core. `weight(i)` is the weight of candidate token `i`; an
/// n-gram weighs the mean of its tokens.
fn bleu_with<T: Float>(candidate: &TokenStream, reference: &TokenStream, weight: impl Fn(usize) -> T) -> Result<T, MetricError> {
    if reference.is_empty() {
        return Err(MetricError::EmptyReference);
    }
    let cand: Vec<&str> = candidate.tokens.iter().map(|t| t.lexeme.as_str()).collect();
    let refr: Vec<&str> = reference.tokens.iter().map(|t| t.lexeme.as_str()).collect();
    if cand.is_empty() {
        return Ok(T::zero());
    }
    let mut log_sum = T::zero();
    for n in 1..=4 {
        let mut ref_counts: BTreeMap<&[&str], usize> = BTreeMap::new();
        for g in refr.windows(n) {
            *ref_counts.entry(g).or_default() += 1;
        }
        let (mut matched, mut total) = (T::zero(), T::zero());
        // distinct candidate n-grams with their count and first position
        let mut cand_counts: BTreeMap<&[&str], (usize, usize)> = BTreeMap::new();
        for (i, g) in cand.windows(n).enumerate() {
            cand_counts.entry(g).or_insert((0, i)).0 += 1;
        }
        for (gram, (count, first)) in cand_counts {
            let w = (first..first + n).fold(T::zero(), |a, i| a + weight(i)) / lit(n as f64);
            let clip = count.min(ref_counts.get(gram).copied().unwrap_or(0));
            matched = matched + w * lit(clip as f64);
            total = total + w * lit(count as f64);
        }
        let p = if matched > T::zero() {
            matched / total
        } else if n == 1 {
            return Ok(T::zero());
        } else {
            T::one() / (total + T::one())
        };
        log_sum = log_sum + p.ln() / lit(4.0);
    }
    let (c, r) = (lit::<T>(cand.len() as f64), lit::<T>(refr.len() as f64));
    let bp = if c > r { T::one() } else { (T::one() - r / c).exp() };
    Ok((bp * log_sum.exp()).max(T::zero()).min(T::one()))
}

/// Cumulative 4-gram BLEU with brevity penalty. A zero higher-order
/// precision is smoothed to 1/(total+1).
pub fn bleu4<T: Float>(candidate: &TokenStream, reference: &TokenStream) -> Result<T, MetricError> {
    bleu_with(candidate, reference, |_| T::one())
}

/// BLEU with keyword tokens weighted by [`KEYWORD_WEIGHT`].
pub fn weighted_ngram_match<T: Float>(candidate: &TokenStream, reference: &TokenStream) -> Result<T, MetricError> {
    let kw = lit::<T>(KEYWORD_WEIGHT);
    bleu_with(candidate, reference, |i| if candidate.tokens[i].kind == TokenKind::Keyword { kw } else { T::one() })
}
