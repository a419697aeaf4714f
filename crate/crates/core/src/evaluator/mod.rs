//! Build pass, corpus runs and reports.

mod harness;
mod pipeline;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use harness::{build_pass, BuildPassResult, HarnessConfig, Stage};
pub use pipeline::{classify_task, generate, load_relations, load_task, match_task, prepare, retrieve, roots, PipelineConfig, Prepared, PromptMode};

use crate::classifier::ClassifyError;
use crate::completer::{ChatProvider, CompleteError};
use crate::constructor::ConstructError;
use crate::matcher::{EmbeddingProvider, MatchError};
use crate::metrics::{codebleu, CodeBleuWeights, MetricError, MetricScores};
use crate::model::ModelError;
use crate::retriever::RetrieveError;

pub const TASK_FILE: &str = "task.ccci-task";
pub const RELATIONS_FILE: &str = "relations.ccci-relations";
pub const REFERENCE_FILE: &str = "reference.txt";
pub const HARNESS_FILE: &str = "harness.toml";

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("workspace setup failed: {0}")]
    WorkspaceSetupFailed(String),
    #[error("no corpus entries in {0}")]
    EmptyCorpus(PathBuf),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{path}: {message}")]
    Config { path: PathBuf, message: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Retrieve(#[from] RetrieveError),
    #[error(transparent)]
    Match(#[from] MatchError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Complete(#[from] CompleteError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

impl EvalError {
    pub(crate) fn io(path: &Path, e: std::io::Error) -> Self {
        EvalError::Io { path: path.to_path_buf(), message: e.to_string() }
    }
}

/// One corpus directory: a task with its project, archives and reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub dir: PathBuf,
    pub relations: Option<PathBuf>,
    pub reference: String,
}

impl CorpusEntry {
    pub fn task_path(&self) -> PathBuf {
        self.dir.join(TASK_FILE)
    }
}

impl AsRef<str> for CorpusEntry {
    fn as_ref(&self) -> &str {
        &self.reference
    }
}

/// Entries are the subdirectories holding a task file, ordered by name.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>, EvalError> {
    let mut out = Vec::new();
    let rd = std::fs::read_dir(dir).map_err(|e| EvalError::io(dir, e))?;
    let mut dirs: Vec<PathBuf> = rd.filter_map(Result::ok).map(|e| e.path()).filter(|p| p.join(TASK_FILE).is_file()).collect();
    dirs.sort();
    for d in dirs {
        let reference_path = d.join(REFERENCE_FILE);
        let reference = std::fs::read_to_string(&reference_path).map_err(|e| EvalError::io(&reference_path, e))?;
        let relations = Some(d.join(RELATIONS_FILE)).filter(|p| p.is_file());
        let id = d.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        out.push(CorpusEntry { id, dir: d, relations, reference });
    }
    Ok(out)
}

/// Keep scripts whose length in characters lies in `[min_len, max_len]`.
pub fn filter_corpus<S: AsRef<str>>(scripts: Vec<S>, min_len: usize, max_len: usize) -> Vec<S> {
    scripts
        .into_iter()
        .filter(|s| {
            let n = s.as_ref().chars().count();
            n >= min_len && n <= max_len
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct CorpusConfig {
    pub pipeline: PipelineConfig,
    /// When absent, `harness.toml` in the corpus directory is used.
    pub harness: Option<HarnessConfig>,
    pub weights: CodeBleuWeights<f64>,
    pub workers: usize,
    pub min_len: usize,
    pub max_len: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { pipeline: PipelineConfig::default(), harness: None, weights: CodeBleuWeights::default(), workers: 4, min_len: 300, max_len: 700 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScriptRow {
    pub id: String,
    pub scores: MetricScores<f64>,
    pub build_pass: BuildPassResult,
    /// Set when the pipeline failed before scoring; the row then scores zero.
    pub error: Option<String>,
    pub code: String,
}

/// Means over the rows, as percentages.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Aggregates {
    pub bleu4: f64,
    pub codebleu: f64,
    pub edit_similarity: f64,
    pub build_pass: f64,
}

impl Aggregates {
    pub fn of(rows: &[ScriptRow]) -> Self {
        let n = rows.len().max(1) as f64;
        let mean = |f: fn(&ScriptRow) -> f64| 100.0 * rows.iter().map(f).sum::<f64>() / n;
        Aggregates {
            bleu4: mean(|r| r.scores.bleu4),
            codebleu: mean(|r| r.scores.codebleu),
            edit_similarity: mean(|r| r.scores.edit_similarity),
            build_pass: mean(|r| if r.build_pass.pass { 1.0 } else { 0.0 }),
        }
    }

    pub fn rounded(&self) -> Self {
        let r = |x: f64| (x * 10.0).round() / 10.0;
        Aggregates { bleu4: r(self.bleu4), codebleu: r(self.codebleu), edit_similarity: r(self.edit_similarity), build_pass: r(self.build_pass) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub model_name: String,
    pub mode: PromptMode,
    pub corpus_size: usize,
    pub per_script: Vec<ScriptRow>,
    /// One decimal.
    pub aggregates: Aggregates,
    pub aggregates_exact: Aggregates,
}

impl EvaluationReport {
    pub fn from_rows(model_name: impl Into<String>, mode: PromptMode, per_script: Vec<ScriptRow>) -> Self {
        let exact = Aggregates::of(&per_script);
        EvaluationReport { model_name: model_name.into(), mode, corpus_size: per_script.len(), per_script, aggregates: exact.rounded(), aggregates_exact: exact }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn evaluate_entry(entry: &CorpusEntry, cfg: &CorpusConfig, harness: &HarnessConfig, embedder: &dyn EmbeddingProvider, chat: &dyn ChatProvider) -> ScriptRow {
    let failed = |error: String, code: String| ScriptRow { id: entry.id.clone(), scores: MetricScores::zero(), build_pass: BuildPassResult::failed(), error: Some(error), code };
    let generated = (|| {
        let task = load_task(&entry.task_path())?;
        let relations = entry.relations.as_deref().map(load_relations).transpose()?;
        generate(task, relations.as_ref(), embedder, chat, &cfg.pipeline).map(|(_, code)| code)
    })();
    let code = match generated {
        Ok(c) => c,
        Err(e) => return failed(e.to_string(), String::new()),
    };
    let scores = match codebleu(&code.code, &entry.reference, &cfg.weights) {
        Ok(s) => s,
        Err(e) => return failed(e.to_string(), code.code),
    };
    let build = build_pass(&code, &entry.dir, harness).unwrap_or_else(|e| BuildPassResult { compiler_output: e.to_string(), ..BuildPassResult::failed() });
    ScriptRow { id: entry.id.clone(), scores, build_pass: build, error: None, code: code.code }
}

/// Run every entry of the corpus through the pipeline, score it and build it.
/// Rows keep corpus order whatever the worker count.
pub fn run_corpus(dir: &Path, cfg: &CorpusConfig, embedder: &dyn EmbeddingProvider, chat: &dyn ChatProvider) -> Result<EvaluationReport, EvalError> {
    let entries = filter_corpus(load_corpus(dir)?, cfg.min_len, cfg.max_len);
    if entries.is_empty() {
        return Err(EvalError::EmptyCorpus(dir.to_path_buf()));
    }
    let harness = match &cfg.harness {
        Some(h) => h.clone(),
        None => HarnessConfig::load(&dir.join(HARNESS_FILE))?,
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.workers.max(1)).build().map_err(|e| EvalError::WorkspaceSetupFailed(e.to_string()))?;
    let rows: Vec<ScriptRow> = pool.install(|| entries.par_iter().map(|e| evaluate_entry(e, cfg, &harness, embedder, chat)).collect());
    Ok(EvaluationReport::from_rows(cfg.pipeline.model.model_name.clone(), cfg.pipeline.mode, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize) -> String {
        "x".repeat(n)
    }

    #[test]
    fn length_filter_bounds() {
        let kept = filter_corpus(vec![s(250), s(299), s(300), s(500), s(700), s(701)], 300, 700);
        let lens: Vec<usize> = kept.iter().map(String::len).collect();
        assert_eq!(lens, [300, 500, 700]);
        assert!(filter_corpus(Vec::<String>::new(), 300, 700).is_empty());
        // characters, not bytes
        assert_eq!(filter_corpus(vec!["é".repeat(300)], 300, 300).len(), 1);
    }

    fn row(id: &str, b: f64, cb: f64, es: f64, pass: bool) -> ScriptRow {
        let mut scores = MetricScores::zero();
        scores.bleu4 = b;
        scores.codebleu = cb;
        scores.edit_similarity = es;
        ScriptRow { id: id.into(), scores, build_pass: BuildPassResult { compiled: pass, tested: pass, pass, ..BuildPassResult::failed() }, error: None, code: String::new() }
    }

    #[test]
    fn aggregates_are_percent_means() {
        let r = EvaluationReport::from_rows("m", PromptMode::Ccci, vec![row("a", 0.2, 0.41, 0.3674, true), row("b", 0.206, 0.41, 0.3666, false)]);
        assert_eq!(r.corpus_size, 2);
        assert!((r.aggregates_exact.bleu4 - 20.3).abs() < 1e-9);
        assert_eq!(r.aggregates.edit_similarity, 36.7);
        assert_eq!(r.aggregates.build_pass, 50.0);
        assert_eq!(r.aggregates.codebleu, 41.0);
    }

    #[test]
    fn report_json_shape() {
        let r = EvaluationReport::from_rows("m", PromptMode::Original, vec![row("a", 0.1056, 0.169, 0.055, false)]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["aggregates"]["bleu4"], 10.6);
        assert_eq!(v["aggregates"]["build_pass"], 0.0);
        assert_eq!(v["mode"], "original");
        assert_eq!(v["per_script"][0]["id"], "a");
        assert_eq!(v["per_script"][0]["build_pass"]["pass"], false);
    }

    #[test]
    fn empty_corpus() {
        let d = tempfile::tempdir().unwrap();
        let e = run_corpus(d.path(), &CorpusConfig::default(), &crate::matcher::TrigramEmbedder::default(), &crate::completer::CannedProvider("x".into()));
        assert!(matches!(e, Err(EvalError::EmptyCorpus(_))));
    }
}
