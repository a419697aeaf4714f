use std::path::Path;

use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::classifier::{classify_in, ClassificationMap, ClassifierConfig, ProjectIndex};
use crate::completer::{complete, ChatProvider, GeneratedCode, ModelConfig};
use crate::constructor::{build_original_prompt, build_prompt, PromptConfig, PromptDocument};
use crate::matcher::{match_fields, EmbeddingProvider, MappingTable, MatcherConfig};
use crate::model::{parse_db_relations, parse_task_definition, ClassGraph, RelationGraph, TaskDefinition};
use crate::retriever::{resolve_hierarchy, HierarchyConfig};

/// Which prompt the completion model sees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PromptMode {
    /// Mapping table, entity context and relations.
    #[default]
    Ccci,
    /// Class names and rules only.
    Original,
}

#[derive(Debug, Clone, Default)]
pub struct PipelineConfig {
    pub mode: PromptMode,
    pub classifier: ClassifierConfig,
    pub hierarchy: HierarchyConfig,
    pub matcher: MatcherConfig,
    pub prompt: PromptConfig,
    pub model: ModelConfig,
}

pub fn load_task(path: &Path) -> Result<TaskDefinition, EvalError> {
    let text = std::fs::read_to_string(path).map_err(|e| EvalError::io(path, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    Ok(parse_task_definition(&text)?.resolve_paths(base))
}

pub fn load_relations(path: &Path) -> Result<RelationGraph, EvalError> {
    let text = std::fs::read_to_string(path).map_err(|e| EvalError::io(path, e))?;
    Ok(parse_db_relations(&text)?)
}

/// Everything the stages up to prompt construction produce.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub task: TaskDefinition,
    pub classification: ClassificationMap,
    pub graph: ClassGraph,
    pub table: MappingTable,
    pub prompt: PromptDocument,
}

pub fn classify_task(task: &TaskDefinition, cfg: &PipelineConfig) -> Result<(ProjectIndex, ClassificationMap), EvalError> {
    let index = ProjectIndex::build(task, &cfg.classifier)?;
    let cmap = classify_in(task, &index)?;
    Ok((index, cmap))
}

/// Qualified names of the task's inputs followed by its output.
pub fn roots(task: &TaskDefinition, cmap: &ClassificationMap) -> Vec<String> {
    task.all_class_names().map(|n| cmap.qualified_for(n).unwrap_or(n).to_string()).collect()
}

pub fn retrieve(task: &TaskDefinition, cfg: &PipelineConfig) -> Result<(ClassificationMap, ClassGraph), EvalError> {
    let (index, cmap) = classify_task(task, cfg)?;
    let graph = resolve_hierarchy(&roots(task, &cmap), &cmap, &index, &cfg.hierarchy)?;
    Ok((cmap, graph))
}

pub fn match_task(task: &TaskDefinition, embedder: &dyn EmbeddingProvider, cfg: &PipelineConfig) -> Result<(ClassificationMap, ClassGraph, MappingTable), EvalError> {
    let (cmap, graph) = retrieve(task, cfg)?;
    let mut r = roots(task, &cmap);
    let output = r.pop().expect("a task has an output");
    let table = match_fields(&graph, &r, &output, embedder, &cfg.matcher)?;
    Ok((cmap, graph, table))
}

/// Classify, retrieve, match and construct the prompt for one task.
pub fn prepare(task: TaskDefinition, relations: Option<&RelationGraph>, embedder: &dyn EmbeddingProvider, cfg: &PipelineConfig) -> Result<Prepared, EvalError> {
    let (classification, graph, table) = match_task(&task, embedder, cfg)?;
    let prompt = match cfg.mode {
        PromptMode::Ccci => build_prompt(&task, &table, &graph, relations, &cfg.prompt)?,
        PromptMode::Original => build_original_prompt(&task, &cfg.prompt)?,
    };
    Ok(Prepared { task, classification, graph, table, prompt })
}

/// The full pipeline through completion.
pub fn generate(task: TaskDefinition, relations: Option<&RelationGraph>, embedder: &dyn EmbeddingProvider, chat: &dyn ChatProvider, cfg: &PipelineConfig) -> Result<(Prepared, GeneratedCode), EvalError> {
    let prepared = prepare(task, relations, embedder, cfg)?;
    let code = complete(&prepared.prompt, &cfg.model, chat)?;
    Ok((prepared, code))
}
