//! Class metadata extraction from project sources and compiled archives, and
//! recursive expansion into a class graph.

pub mod archive;
pub mod classfile;
mod hierarchy;
mod source;

use std::path::{Path, PathBuf};

pub use hierarchy::{is_scalar_type, resolve_hierarchy, HierarchyConfig};
pub use source::{declared_qualified_names, parse_source_class, parse_source_class_with};

use crate::classifier::ClassifyError;
use crate::model::{ClassInfo, FieldInfo, Origin};
use crate::syntax::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceUnit {
    pub path: PathBuf,
    pub text: String,
    /// Dotted nested paths of every declared type (`Outer`, `Outer.Inner`).
    pub declared_classes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledClass {
    pub archive: PathBuf,
    pub entry: String,
    pub bytes: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RetrieveError {
    #[error("not a classfile (bad magic number)")]
    BadMagic,
    #[error("classfile truncated at byte {offset}")]
    TruncatedClassfile { offset: usize },
    #[error("classfile major version {found} exceeds supported {max}")]
    UnsupportedMajorVersion { found: u16, max: u16 },
    #[error("malformed classfile: {0}")]
    MalformedClassfile(String),
    #[error("{}: {error}", path.display())]
    Syntax { path: PathBuf, error: SyntaxError },
    #[error("class {class} not found in {}", path.display())]
    ClassNotFound { class: String, path: PathBuf },
    #[error("{}: {message}", path.display())]
    Io { path: PathBuf, message: String },
    #[error("{}: {message}", path.display())]
    Archive { path: PathBuf, message: String },
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

impl RetrieveError {
    pub(crate) fn io(path: &Path, e: std::io::Error) -> Self {
        RetrieveError::Io { path: path.to_path_buf(), message: e.to_string() }
    }
}

/// Decode a compiled class. Static and synthetic fields are skipped; the
/// comment is always absent.
pub fn extract_class_from_archive(cc: &CompiledClass) -> Result<ClassInfo, RetrieveError> {
    extract_class_with_ceiling(cc, classfile::DEFAULT_MAX_MAJOR)
}

pub fn extract_class_with_ceiling(cc: &CompiledClass, max_major: u16) -> Result<ClassInfo, RetrieveError> {
    let raw = classfile::parse_classfile(&cc.bytes, max_major)?;
    let mut fields = Vec::new();
    for f in raw.fields.iter().filter(|f| !f.is_static() && !f.is_synthetic()) {
        let mut fi = FieldInfo::new(f.name.clone(), f.field_type()?);
        fi.annotations = f.annotations.clone();
        fields.push(fi);
    }
    let mut info = ClassInfo::new(raw.this_class, Origin::External(cc.archive.clone())).with_fields(fields);
    info.superclass = raw.super_class.filter(|s| s != "java.lang.Object");
    Ok(info)
}
