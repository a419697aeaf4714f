//! Local/External tagging of the task's classes.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::model::{simple_name, ClassInfo, Origin, TaskDefinition};
use crate::retriever::archive::Archive;
use crate::retriever::{declared_qualified_names, extract_class_from_archive, parse_source_class_with, RetrieveError, SourceUnit};
use crate::syntax::decl::parse_compilation_unit;

pub const DEFAULT_IGNORE: &[&str] = &["target", "build", ".git"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("class {0} found neither in the project nor in any dependency archive")]
    Unresolved(String),
    #[error("class {name} is declared by several project files: {}", files.iter().map(|f| f.display().to_string()).collect::<Vec<_>>().join(", "))]
    AmbiguousLocal { name: String, files: Vec<PathBuf> },
    #[error("{}: {message}", path.display())]
    Unreadable { path: PathBuf, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifierConfig {
    /// Directory names skipped during the project scan, in addition to hidden ones.
    pub ignore: Vec<String>,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig { ignore: DEFAULT_IGNORE.iter().map(|s| s.to_string()).collect() }
    }
}

/// Qualified class name to origin for every class named by a task.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationMap {
    pub entries: BTreeMap<String, Origin>,
}

impl ClassificationMap {
    pub fn get(&self, qualified: &str) -> Option<&Origin> {
        self.entries.get(qualified)
    }

    /// Qualified name registered for a task-supplied (simple or qualified) name.
    pub fn qualified_for(&self, name: &str) -> Option<&str> {
        if self.entries.contains_key(name) {
            return self.entries.get_key_value(name).map(|(k, _)| k.as_str());
        }
        self.entries.keys().find(|k| simple_name(k) == name).map(String::as_str)
    }
}

/// `InventoryInfoDTO: Local` / `UserDTO: External (user-api.jar)`, one line per
/// class sorted by simple name.
impl fmt::Display for ClassificationMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rows: Vec<(&str, &Origin)> = self.entries.iter().map(|(k, v)| (simple_name(k), v)).collect();
        rows.sort();
        for (name, origin) in rows {
            match origin {
                Origin::Local(_) => writeln!(f, "{name}: Local")?,
                Origin::External(p) => writeln!(f, "{name}: External ({})", p.file_name().map(|n| n.to_string_lossy()).unwrap_or_default())?,
            }
        }
        Ok(())
    }
}

/// Every class the project sources declare plus the archives in declaration
/// order. Built once per run and shared by classification and retrieval.
#[derive(Debug, Clone)]
pub struct ProjectIndex {
    local: BTreeMap<String, Vec<PathBuf>>,
    archives: Vec<Archive>,
}

fn is_ignored(name: &str, cfg: &ClassifierConfig) -> bool {
    (name.starts_with('.') && name.len() > 1) || cfg.ignore.iter().any(|i| i == name)
}

impl ProjectIndex {
    pub fn build(task: &TaskDefinition, cfg: &ClassifierConfig) -> Result<Self, ClassifyError> {
        let root = &task.project_root;
        if !root.is_dir() {
            return Err(ClassifyError::Unreadable { path: root.clone(), message: "project root is not a directory".into() });
        }
        let ext = task.subject_language.source_extension();
        let files: Vec<PathBuf> = walkdir::WalkDir::new(root)
            .sort_by_file_name()
            .into_iter()
            .filter_entry(|e| e.depth() == 0 || !(e.file_type().is_dir() && is_ignored(&e.file_name().to_string_lossy(), cfg)))
            .filter_map(Result::ok)
            .filter(|e| e.file_type().is_file() && e.path().extension().is_some_and(|x| x == ext))
            .map(|e| e.into_path())
            .collect();
        let declared: Vec<(PathBuf, Vec<String>)> = files
            .into_par_iter()
            .filter_map(|path| {
                let text = std::fs::read_to_string(&path).ok()?;
                match parse_compilation_unit(&text) {
                    Ok(cu) => Some((path, declared_qualified_names(&cu))),
                    Err(e) => {
                        log::warn!("{}: skipped, {e}", path.display());
                        None
                    }
                }
            })
            .collect();
        let mut local: BTreeMap<String, Vec<PathBuf>> = BTreeMap::new();
        for (path, names) in declared {
            for n in names {
                local.entry(n).or_default().push(path.clone());
            }
        }
        let archives = task
            .dependency_archives
            .iter()
            .map(|p| Archive::open(p).map_err(|e| ClassifyError::Unreadable { path: p.clone(), message: e.to_string() }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ProjectIndex { local, archives })
    }

    pub fn archives(&self) -> &[Archive] {
        &self.archives
    }

    pub fn contains(&self, qualified: &str) -> bool {
        self.local.contains_key(qualified) || self.archives.iter().any(|a| a.contains(qualified))
    }

    /// Resolve a simple or qualified name. Local sources are consulted first;
    /// archives only on a miss, in declaration order.
    pub fn locate(&self, name: &str) -> Result<(String, Origin), ClassifyError> {
        let qualified = name.contains('.');
        let local: Vec<(&String, &Vec<PathBuf>)> = if qualified {
            self.local.get_key_value(name).into_iter().collect()
        } else {
            self.local.iter().filter(|(k, _)| simple_name(k) == name).collect()
        };
        let mut hits: Vec<(String, PathBuf)> = local.iter().flat_map(|(k, files)| files.iter().map(move |f| ((*k).clone(), f.clone()))).collect();
        if hits.len() > 1 {
            return Err(ClassifyError::AmbiguousLocal { name: name.to_string(), files: hits.into_iter().map(|(_, f)| f).collect() });
        }
        if let Some((q, f)) = hits.pop() {
            return Ok((q, Origin::Local(f)));
        }
        for a in &self.archives {
            let found = if qualified { a.contains(name).then(|| name.to_string()) } else { a.by_simple_name(name).next().map(str::to_string) };
            if let Some(q) = found {
                return Ok((q, Origin::External(a.path.clone())));
            }
        }
        Err(ClassifyError::Unresolved(name.to_string()))
    }

    /// Extract the class located at `origin`.
    pub fn load(&self, qualified: &str, origin: &Origin) -> Result<ClassInfo, RetrieveError> {
        match origin {
            Origin::Local(path) => {
                let unit = SourceUnit::load(path)?;
                parse_source_class_with(&unit, qualified, &|q| self.contains(q))
            }
            Origin::External(path) => {
                let archive = self.archives.iter().find(|a| &a.path == path).ok_or_else(|| RetrieveError::ClassNotFound { class: qualified.to_string(), path: path.clone() })?;
                extract_class_from_archive(&archive.read(qualified)?)
            }
        }
    }
}

pub fn classify(task: &TaskDefinition) -> Result<ClassificationMap, ClassifyError> {
    classify_with(task, &ClassifierConfig::default())
}

pub fn classify_with(task: &TaskDefinition, cfg: &ClassifierConfig) -> Result<ClassificationMap, ClassifyError> {
    let index = ProjectIndex::build(task, cfg)?;
    classify_in(task, &index)
}

pub fn classify_in(task: &TaskDefinition, index: &ProjectIndex) -> Result<ClassificationMap, ClassifyError> {
    let names: Vec<&str> = task.all_class_names().collect();
    let located = names.par_iter().map(|n| index.locate(n)).collect::<Vec<_>>();
    let mut map = ClassificationMap::default();
    for r in located {
        let (q, origin) = r?;
        map.entries.insert(q, origin);
    }
    Ok(map)
}
