//! Shared domain types and the two user-facing context documents.

mod relations;
mod task;
mod types;

pub use relations::{format_db_relations, parse_db_relations};
pub use task::{format_task_definition, parse_task_definition};
pub use types::*;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("task definition declares no output class")]
    MissingOutput,
    #[error("task definition declares no input classes")]
    MissingInputs,
    #[error("line {line}: unknown section header {header:?}")]
    MalformedSection { line: usize, header: String },
    #[error("line {line}: {text:?} is not a class name")]
    InvalidClassName { line: usize, text: String },
    #[error("line {line}: a second output class is declared")]
    MultipleOutputs { line: usize },
    #[error("line {line}: unsupported subject language {language:?}")]
    UnsupportedLanguage { line: usize, language: String },
    #[error("line {line}: unknown cardinality {value:?} (expected 1:1, 1:N or N:M)")]
    UnknownCardinality { line: usize, value: String },
    #[error("line {line}: child relation without a parent table")]
    DanglingChild { line: usize },
    #[error("line {line}: unrecognised relation line")]
    MalformedRelation { line: usize },
}
