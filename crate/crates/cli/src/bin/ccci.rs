use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ccci_core::completer::{complete, Cassette, ChatProvider, HttpProvider, MockProvider, ModelConfig, Recorder};
use ccci_core::constructor::{render_entity_context, write_prompt_dump};
use ccci_core::evaluator::{self, build_pass, load_relations, load_task, CorpusConfig, EvalError, HarnessConfig, PipelineConfig, PromptMode, HARNESS_FILE};
use ccci_core::matcher::{EmbeddingProvider, HttpEmbedder, TrigramEmbedder};
use ccci_core::metrics::codebleu;
use ccci_core::CodeBleuWeights;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "ccci", version, about = "Context-aware generation and evaluation of DTO mapping scripts")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Use the offline embedder and completer.
    #[arg(long, global = true)]
    mock: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct TaskArgs {
    #[arg(long)]
    task: PathBuf,
    #[arg(long)]
    relations: Option<PathBuf>,
    /// Cosine threshold for semantic matches.
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    embed_endpoint: Option<String>,
    #[arg(long, default_value = "text-embedding-3-small")]
    embed_model: String,
    #[arg(long, default_value_t = 1536)]
    embed_dim: usize,
}

#[derive(Args, Clone)]
struct ModelArgs {
    /// Context-free prompt with class names and rules only.
    #[arg(long)]
    original: bool,
    /// TOML file with completion model settings.
    #[arg(long)]
    model_config: Option<PathBuf>,
    /// Replay completions from a cassette instead of calling the endpoint.
    #[arg(long, conflicts_with = "record")]
    cassette: Option<PathBuf>,
    /// Record live completions into a cassette.
    #[arg(long)]
    record: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Local/External origin of each task class.
    Classify {
        #[command(flatten)]
        task: TaskArgs,
    },
    /// Class and field context reachable from the task classes.
    Retrieve {
        #[command(flatten)]
        task: TaskArgs,
    },
    /// Exact and semantic field mapping table.
    Match {
        #[command(flatten)]
        task: TaskArgs,
    },
    /// Prompt for the completion model.
    Prompt {
        #[command(flatten)]
        task: TaskArgs,
        #[command(flatten)]
        model: ModelArgs,
        /// Write `<out>.system.txt` and `<out>.user.txt`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a mapping script.
    Complete {
        #[command(flatten)]
        task: TaskArgs,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// BLEU-4, CodeBLEU and edit similarity of a candidate.
    Score {
        #[arg(long)]
        candidate: PathBuf,
        #[arg(long)]
        reference: PathBuf,
    },
    /// Compile and test a script in a copy of a scaffold directory.
    Buildpass {
        #[arg(long)]
        scaffold: PathBuf,
        #[arg(long)]
        script: PathBuf,
        /// Defaults to `harness.toml` in the scaffold or its parent.
        #[arg(long)]
        harness: Option<PathBuf>,
    },
    /// Run the pipeline over a corpus and report.
    Eval {
        #[arg(long)]
        corpus: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        harness: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        workers: usize,
        #[arg(long, default_value_t = 300)]
        min_len: usize,
        #[arg(long, default_value_t = 700)]
        max_len: usize,
        #[arg(long)]
        embed_endpoint: Option<String>,
        #[arg(long, default_value = "text-embedding-3-small")]
        embed_model: String,
        #[arg(long, default_value_t = 1536)]
        embed_dim: usize,
        /// Where to write the report JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

type Res<T> = Result<T, EvalError>;

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        print!("{}", text());
    }
}

fn embedder(mock: bool, endpoint: &Option<String>, model: &str, dim: usize) -> Box<dyn EmbeddingProvider> {
    match endpoint {
        Some(e) if !mock => Box::new(HttpEmbedder::new(e.clone(), model, dim)),
        _ => Box::new(TrigramEmbedder::default()),
    }
}

fn pipeline_config(task: Option<&TaskArgs>, model: Option<&ModelArgs>, mock: bool) -> Res<PipelineConfig> {
    let mut cfg = PipelineConfig::default();
    if let Some(t) = task.and_then(|t| t.threshold) {
        cfg.matcher.threshold = t;
    }
    if let Some(m) = model {
        cfg.mode = if m.original { PromptMode::Original } else { PromptMode::Ccci };
        if let Some(p) = &m.model_config {
            let text = std::fs::read_to_string(p).map_err(|e| EvalError::Io { path: p.clone(), message: e.to_string() })?;
            cfg.model = toml::from_str(&text).map_err(|e| EvalError::Config { path: p.clone(), message: e.to_string() })?;
        }
    }
    if mock {
        cfg.model.model_name = ModelConfig::default().model_name;
    }
    Ok(cfg)
}

/// The completion provider chosen by the flags, plus where to save a recording.
enum Chat {
    Plain(Box<dyn ChatProvider>),
    Recording(Box<dyn ChatProvider>, PathBuf),
}

fn chat(mock: bool, args: &ModelArgs, cfg: &PipelineConfig) -> Res<Chat> {
    if mock {
        return Ok(Chat::Plain(Box::new(MockProvider { bulk_copy_helper: cfg.prompt.bulk_copy_helper.clone() })));
    }
    if let Some(c) = &args.cassette {
        return Ok(Chat::Plain(Box::new(Cassette::load(c)?)));
    }
    if cfg.model.endpoint.is_empty() {
        return Err(EvalError::Config { path: args.model_config.clone().unwrap_or_default(), message: "no completion endpoint configured; pass --mock, --cassette or a model config with an endpoint".into() });
    }
    let live = Box::new(HttpProvider::new(cfg.model.endpoint.clone(), cfg.model.request_timeout));
    Ok(match &args.record {
        Some(p) => Chat::Recording(live, p.clone()),
        None => Chat::Plain(live),
    })
}

fn with_chat<T>(c: Chat, f: impl FnOnce(&dyn ChatProvider) -> Res<T>) -> Res<T> {
    match c {
        Chat::Plain(p) => f(p.as_ref()),
        Chat::Recording(p, path) => {
            let rec = Recorder::new(p.as_ref());
            let out = f(&rec);
            rec.into_cassette().save(&path)?;
            out
        }
    }
}

fn relations(t: &TaskArgs) -> Res<Option<ccci_core::model::RelationGraph>> {
    t.relations.as_deref().map(load_relations).transpose()
}

/// `{javalite}` in harness templates defaults to the checker installed next to this binary.
fn with_default_vars(mut h: HarnessConfig) -> HarnessConfig {
    if !h.vars.contains_key("javalite") {
        let sibling = std::env::current_exe().ok().and_then(|p| p.parent().map(|d| d.join("ccci-javalite")));
        if let Some(p) = sibling {
            h.vars.insert("javalite".into(), p.to_string_lossy().into_owned());
        }
    }
    h
}

fn find_harness(explicit: Option<PathBuf>, dirs: &[&Path]) -> Res<HarnessConfig> {
    let path = explicit.or_else(|| dirs.iter().map(|d| d.join(HARNESS_FILE)).find(|p| p.is_file()));
    let h = match path {
        Some(p) => HarnessConfig::load(&p)?,
        None => HarnessConfig::default(),
    };
    Ok(with_default_vars(h))
}

fn run(cli: Cli) -> Res<()> {
    let (json, mock) = (cli.json, cli.mock);
    match cli.cmd {
        Cmd::Classify { task } => {
            let t = load_task(&task.task)?;
            let (_, cmap) = evaluator::classify_task(&t, &pipeline_config(Some(&task), None, mock)?)?;
            emit(json, &cmap, || cmap.to_string());
        }
        Cmd::Retrieve { task } => {
            let t = load_task(&task.task)?;
            let (_, graph) = evaluator::retrieve(&t, &pipeline_config(Some(&task), None, mock)?)?;
            emit(json, &graph, || render_entity_context(&graph));
        }
        Cmd::Match { task } => {
            let t = load_task(&task.task)?;
            let emb = embedder(mock, &task.embed_endpoint, &task.embed_model, task.embed_dim);
            let (_, _, table) = evaluator::match_task(&t, emb.as_ref(), &pipeline_config(Some(&task), None, mock)?)?;
            emit(json, &table, || {
                let mut s = table.to_string();
                for u in &table.unmatched_outputs {
                    s.push_str(&format!("unmatched: {u}\n"));
                }
                s
            });
        }
        Cmd::Prompt { task, model, out } => {
            let cfg = pipeline_config(Some(&task), Some(&model), mock)?;
            let emb = embedder(mock, &task.embed_endpoint, &task.embed_model, task.embed_dim);
            let p = evaluator::prepare(load_task(&task.task)?, relations(&task)?.as_ref(), emb.as_ref(), &cfg)?;
            if let Some(out) = out {
                write_prompt_dump(&p.prompt, &out)?;
            }
            emit(json, &p.prompt, || format!("{}\n\n{}", p.prompt.system_text.trim_end(), p.prompt.user_text));
        }
        Cmd::Complete { task, model } => {
            let cfg = pipeline_config(Some(&task), Some(&model), mock)?;
            let emb = embedder(mock, &task.embed_endpoint, &task.embed_model, task.embed_dim);
            let p = evaluator::prepare(load_task(&task.task)?, relations(&task)?.as_ref(), emb.as_ref(), &cfg)?;
            let code = with_chat(chat(mock, &model, &cfg)?, |c| Ok(complete(&p.prompt, &cfg.model, c)?))?;
            emit(json, &code, || format!("{}\n", code.code));
        }
        Cmd::Score { candidate, reference } => {
            let read = |p: &PathBuf| std::fs::read_to_string(p).map_err(|e| EvalError::Io { path: p.clone(), message: e.to_string() });
            let s = codebleu(&read(&candidate)?, &read(&reference)?, &CodeBleuWeights::default())?;
            emit(json, &s, || {
                format!(
                    "bleu4           {:.4}\nweighted_ngram  {:.4}\nast_match       {:.4}\ndataflow_match  {:.4}\ncodebleu        {:.4}\nedit_similarity {:.4}\n",
                    s.bleu4, s.weighted_ngram, s.ast_match, s.dataflow_match, s.codebleu, s.edit_similarity
                )
            });
        }
        Cmd::Buildpass { scaffold, script, harness } => {
            let parent = scaffold.parent().unwrap_or(Path::new("."));
            let h = find_harness(harness, &[&scaffold, parent])?;
            let text = std::fs::read_to_string(&script).map_err(|e| EvalError::Io { path: script.clone(), message: e.to_string() })?;
            let code = ccci_core::completer::GeneratedCode { raw_response: text.clone(), code: text, model_name: String::new(), latency: Default::default() };
            let r = build_pass(&code, &scaffold, &h)?;
            emit(json, &r, || {
                let stage = |ok: bool| if ok { "ok" } else { "failed" };
                let mut s = format!("compile: {}\n", stage(r.compiled));
                if r.compiled {
                    s.push_str(&format!("test: {}\n", stage(r.tested)));
                }
                for out in [&r.compiler_output, &r.test_output].into_iter().filter(|o| !o.is_empty()) {
                    s.push_str(out);
                    if !out.ends_with('\n') {
                        s.push('\n');
                    }
                }
                s.push_str(&format!("pass: {}\n", r.pass));
                s
            });
        }
        Cmd::Eval { corpus, model, harness, workers, min_len, max_len, embed_endpoint, embed_model, embed_dim, out } => {
            let pipeline = pipeline_config(None, Some(&model), mock)?;
            let emb = embedder(mock, &embed_endpoint, &embed_model, embed_dim);
            let h = find_harness(harness, &[&corpus])?;
            let cfg = CorpusConfig { pipeline, harness: Some(h), workers, min_len, max_len, ..CorpusConfig::default() };
            let chat = chat(mock, &model, &cfg.pipeline)?;
            let report = with_chat(chat, |c| evaluator::run_corpus(&corpus, &cfg, emb.as_ref(), c))?;
            let text = report.to_json();
            if let Some(out) = &out {
                std::fs::write(out, format!("{text}\n")).map_err(|e| EvalError::Io { path: out.clone(), message: e.to_string() })?;
            }
            if json {
                println!("{text}");
            } else {
                let a = report.aggregates;
                println!("{:<24} {:>6} {:>6} {:>6} {:>6}", "script", "B4", "CB", "ES", "BP");
                for r in &report.per_script {
                    let s = &r.scores;
                    let bp = if r.build_pass.pass { "pass" } else { "fail" };
                    println!("{:<24} {:>6.1} {:>6.1} {:>6.1} {:>6}", r.id, 100.0 * s.bleu4, 100.0 * s.codebleu, 100.0 * s.edit_similarity, bp);
                }
                println!("{:<24} {:>6.1} {:>6.1} {:>6.1} {:>6.1}", format!("{} ({})", report.model_name, report.corpus_size), a.bleu4, a.codebleu, a.edit_similarity, a.build_pass);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ccci: {e}");
            ExitCode::from(1)
        }
    }
}
