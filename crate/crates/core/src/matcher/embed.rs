use std::time::Duration;

use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::MatchError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingVector<T> {
    pub values: Vec<T>,
}

impl<T: Float> EmbeddingVector<T> {
    pub fn new(values: Vec<T>) -> Self {
        EmbeddingVector { values }
    }

    pub fn dimension(&self) -> usize {
        self.values.len()
    }

    pub fn norm(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, &v| acc + v * v).sqrt()
    }

    pub fn scaled(&self, k: T) -> Self {
        EmbeddingVector { values: self.values.iter().map(|&v| v * k).collect() }
    }
}

pub fn cosine_similarity<T: Float>(u: &EmbeddingVector<T>, v: &EmbeddingVector<T>) -> Result<T, MatchError> {
    if u.dimension() != v.dimension() {
        return Err(MatchError::DimensionMismatch { expected: u.dimension(), found: v.dimension() });
    }
    let (nu, nv) = (u.norm(), v.norm());
    if nu == T::zero() || nv == T::zero() {
        return Err(MatchError::ZeroVector);
    }
    let dot = u.values.iter().zip(&v.values).fold(T::zero(), |acc, (&a, &b)| acc + a * b);
    // rounding can push |cos| a hair past 1
    Ok((dot / (nu * nv)).max(-T::one()).min(T::one()))
}

pub trait EmbeddingProvider: Send + Sync {
    fn name(&self) -> &str;
    fn dimension(&self) -> usize;
    /// One vector per text, in input order.
    fn embed(&self, texts: &[String]) -> Result<Vec<EmbeddingVector<f64>>, MatchError>;
}

/// Hashed character-trigram frequencies, L2-normalised.
#[derive(Debug, Clone)]
pub struct TrigramEmbedder {
    pub dimension: usize,
}

impl Default for TrigramEmbedder {
    fn default() -> Self {
        TrigramEmbedder { dimension: 512 }
    }
}

/// Lowercased words with camelCase and acronym boundaries split and
/// punctuation removed: `SKUInfoDTO.ownName` gives `sku info dto own name`.
pub fn normalize_text(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut words = Vec::new();
    let mut cur = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if !c.is_alphanumeric() {
            if !cur.is_empty() {
                words.push(std::mem::take(&mut cur));
            }
            continue;
        }
        if c.is_uppercase() && !cur.is_empty() {
            let prev = chars[i - 1];
            let next_lower = chars.get(i + 1).is_some_and(|n| n.is_lowercase());
            if prev.is_lowercase() || prev.is_ascii_digit() || (prev.is_uppercase() && next_lower) {
                words.push(std::mem::take(&mut cur));
            }
        }
        cur.extend(c.to_lowercase());
    }
    if !cur.is_empty() {
        words.push(cur);
    }
    words
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

impl TrigramEmbedder {
    pub fn embed_one(&self, text: &str) -> Result<EmbeddingVector<f64>, MatchError> {
        let words = normalize_text(text);
        if words.is_empty() {
            return Err(MatchError::EmptyText);
        }
        let mut values = vec![0.0f64; self.dimension];
        for w in words {
            let padded: Vec<char> = format!(" {w} ").chars().collect();
            for tri in padded.windows(3) {
                let s: String = tri.iter().collect();
                values[(fnv1a(s.as_bytes()) % self.dimension as u64) as usize] += 1.0;
            }
        }
        let v = EmbeddingVector::new(values);
        let n = v.norm();
        Ok(v.scaled(1.0 / n))
    }
}

impl EmbeddingProvider for TrigramEmbedder {
    fn name(&self) -> &str {
        "trigram"
    }

    fn dimension(&self) -> usize {
        self.dimension
    }

    fn embed(&self, texts: &[String]) -> Result<Vec<EmbeddingVector<f64>>, MatchError> {
        texts.iter().map(|t| self.embed_one(t)).collect()
    }
}

/// Remote embeddings endpoint speaking `{model, input}` → `{data:[{embedding}]}`.
#[derive(Debug, Clone)]
pub struct HttpEmbedder {
    pub endpoint: String,
    pub model: String,
    pub dimension: usize,
    pub timeout: Duration,
    pub api_key: Option<String>,
}

pub const EMBED_KEY_ENV: &str = "CCCI_EMBED_KEY";

#[derive(Serialize)]
struct EmbedRequest<'a> {
    model: &'a str,
    input: &'a [String],
}

#[derive(Deserialize)]
struct EmbedResponse {
    data: Vec<EmbedDatum>,
}

#[derive(Deserialize)]
struct EmbedDatum {
    embedding: Vec<f64>,
}

impl HttpEmbedder {
    pub fn new(endpoint: impl Into<String>, model: impl Into<String>, dimension: usize) -> Self {
        HttpEmbedder { endpoint: endpoint.into(), model: model.into(), dimension, timeout: Duration::from_secs(30), api_key: std::env::var(EMBED_KEY_ENV).ok() }
    }
}

impl EmbeddingProvider for HttpEmbedder {
    fn name(&self) -> &str {
        &self.model
    }

    fn dimension(&self) -> usize {
        self.dimension
    }

    fn embed(&self, texts: &[String]) -> Result<Vec<EmbeddingVector<f64>>, MatchError> {
        if texts.is_empty() {
            return Ok(Vec::new());
        }
        let agent = ureq::AgentBuilder::new().timeout(self.timeout).build();
        let mut req = agent.post(&self.endpoint).set("Content-Type", "application/json");
        if let Some(k) = &self.api_key {
            req = req.set("Authorization", &format!("Bearer {k}"));
        }
        let resp: EmbedResponse = req
            .send_json(EmbedRequest { model: &self.model, input: texts })
            .map_err(|e| MatchError::ProviderUnavailable(e.to_string()))?
            .into_json()
            .map_err(|e| MatchError::ProviderUnavailable(format!("bad embeddings response: {e}")))?;
        if resp.data.len() != texts.len() {
            return Err(MatchError::ProviderUnavailable(format!("{} embeddings for {} inputs", resp.data.len(), texts.len())));
        }
        resp.data
            .into_iter()
            .map(|d| {
                if d.embedding.len() != self.dimension {
                    Err(MatchError::DimensionMismatch { expected: self.dimension, found: d.embedding.len() })
                } else {
                    Ok(EmbeddingVector::new(d.embedding))
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn vec_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        (1usize..32).prop_flat_map(|n| (proptest::collection::vec(-10.0f64..10.0, n), proptest::collection::vec(-10.0f64..10.0, n)))
    }

    proptest! {
        #[test]
        fn cosine_symmetric_and_scale_free((a, b) in vec_pair(), k in 0.001f64..1000.0) {
            let (u, v) = (EmbeddingVector::new(a), EmbeddingVector::new(b));
            prop_assume!(u.norm() > 1e-6 && v.norm() > 1e-6);
            let s = cosine_similarity(&u, &v).unwrap();
            prop_assert_eq!(s, cosine_similarity(&v, &u).unwrap());
            prop_assert!((s - cosine_similarity(&u.scaled(k), &v).unwrap()).abs() < 1e-9);
            prop_assert!((-1.0..=1.0).contains(&s));
        }

        #[test]
        fn top1_same_after_scaling(q in proptest::collection::vec(-5.0f64..5.0, 8), cands in proptest::collection::vec((proptest::collection::vec(-5.0f64..5.0, 8), 0.01f64..100.0), 1..8)) {
            let q = EmbeddingVector::new(q);
            prop_assume!(q.norm() > 1e-6 && cands.iter().all(|(c, _)| EmbeddingVector::new(c.clone()).norm() > 1e-6));
            let best = |vs: Vec<EmbeddingVector<f64>>| {
                let s: Vec<f64> = vs.iter().map(|v| cosine_similarity(&q, v).unwrap()).collect();
                (0..s.len()).fold(0, |b, i| if s[i] > s[b] + 1e-12 { i } else { b })
            };
            let raw: Vec<f64> = cands.iter().map(|(c, _)| cosine_similarity(&q, &EmbeddingVector::new(c.clone())).unwrap()).collect();
            prop_assume!(raw.iter().enumerate().all(|(i, a)| raw[..i].iter().all(|b| (a - b).abs() > 1e-9 || a == b)));
            let plain = best(cands.iter().map(|(c, _)| EmbeddingVector::new(c.clone())).collect());
            let scaled = best(cands.iter().map(|(c, k)| EmbeddingVector::new(c.clone()).scaled(*k)).collect());
            prop_assert_eq!(plain, scaled);
        }
    }

    #[test]
    fn cosine_examples() {
        let u = EmbeddingVector::new(vec![1.0, 0.0]);
        let v = EmbeddingVector::new(vec![1.0, 1.0]);
        assert_abs_diff_eq!(cosine_similarity(&u, &v).unwrap(), 0.70710678, epsilon = 1e-8);
        assert_eq!(cosine_similarity(&u, &u).unwrap(), 1.0);
        assert_eq!(cosine_similarity(&u, &EmbeddingVector::new(vec![0.0, 3.0])).unwrap(), 0.0);
        assert!(matches!(cosine_similarity(&u, &EmbeddingVector::new(vec![1.0])), Err(MatchError::DimensionMismatch { .. })));
        assert!(matches!(cosine_similarity(&u, &EmbeddingVector::new(vec![0.0, 0.0])), Err(MatchError::ZeroVector)));
        let uf = EmbeddingVector::new(vec![1.0f32, 0.0]);
        let vf = EmbeddingVector::new(vec![1.0f32, 1.0]);
        assert_abs_diff_eq!(cosine_similarity(&uf, &vf).unwrap(), std::f32::consts::FRAC_1_SQRT_2, epsilon = 1e-6);
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_text("SKUInfoDTO.ownName"), ["sku", "info", "dto", "own", "name"]);
        assert_eq!(normalize_text("inventoryName : String"), ["inventory", "name", "string"]);
        assert_eq!(normalize_text("sku2Name"), ["sku2", "name"]);
        assert!(normalize_text(" :: ").is_empty());
    }

    #[test]
    fn trigram_embedder_contract() {
        let e = TrigramEmbedder::default();
        let a = e.embed_one("inventoryName").unwrap();
        assert_eq!(a, e.embed_one("inventoryName").unwrap());
        assert_eq!(a.dimension(), 512);
        assert_abs_diff_eq!(a.norm(), 1.0, epsilon = 1e-9);
        assert!(matches!(e.embed_one("  "), Err(MatchError::EmptyText)));
    }

    /// Independent trigram counter: plain maps keyed by the trigram string.
    fn brute_cosine(a: &str, b: &str) -> f64 {
        use std::collections::HashMap;
        let grams = |t: &str| {
            let mut m: HashMap<String, f64> = HashMap::new();
            for w in normalize_text(t) {
                let p: Vec<char> = format!(" {w} ").chars().collect();
                for i in 0..p.len() - 2 {
                    *m.entry(p[i..i + 3].iter().collect()).or_default() += 1.0;
                }
            }
            m
        };
        let (ga, gb) = (grams(a), grams(b));
        let dot: f64 = ga.iter().map(|(k, v)| v * gb.get(k).unwrap_or(&0.0)).sum();
        let n = |g: &HashMap<String, f64>| g.values().map(|v| v * v).sum::<f64>().sqrt();
        dot / (n(&ga) * n(&gb))
    }

    #[test]
    fn trigram_similarity_ordering() {
        let e = TrigramEmbedder::default();
        let s = |a: &str, b: &str| cosine_similarity(&e.embed_one(a).unwrap(), &e.embed_one(b).unwrap()).unwrap();
        let near = brute_cosine("inventoryName", "name of inventory");
        let far = brute_cosine("inventoryName", "contactInfo");
        assert!(near > far);
        assert!(s("inventoryName", "name of inventory") > s("inventoryName", "contactInfo"));
    }
}
