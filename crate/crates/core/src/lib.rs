//! Context-aware code generation for data transfer scripts.

pub mod classifier;
pub mod completer;
pub mod constructor;
pub mod evaluator;
pub mod matcher;
pub mod metrics;
pub mod model;
pub mod retriever;
pub mod syntax;

/// Scalar used by the concrete pipeline.
pub type Real = f64;
pub type MetricScores = metrics::MetricScores<Real>;
pub type CodeBleuWeights = metrics::CodeBleuWeights<Real>;
pub type EmbeddingVector = matcher::EmbeddingVector<Real>;
pub type Structural = metrics::Structural<Real>;
