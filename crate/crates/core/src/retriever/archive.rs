//! Dependency archives: ZIP containers of compiled classes.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::Read;
use std::path::{Path, PathBuf};

use super::{CompiledClass, RetrieveError};

/// The class entries of one archive, keyed by qualified binary name
/// (`com.xx.Outer$Inner`).
#[derive(Debug, Clone)]
pub struct Archive {
    pub path: PathBuf,
    entries: BTreeMap<String, String>,
}

impl Archive {
    pub fn open(path: &Path) -> Result<Self, RetrieveError> {
        let zip = zip::ZipArchive::new(File::open(path).map_err(|e| RetrieveError::io(path, e))?)
            .map_err(|e| RetrieveError::Archive { path: path.to_path_buf(), message: e.to_string() })?;
        let mut entries = BTreeMap::new();
        for name in zip.file_names() {
            if let Some(stem) = name.strip_suffix(".class") {
                if stem.ends_with("module-info") || stem.ends_with("package-info") || stem.starts_with("META-INF/") {
                    continue;
                }
                entries.insert(stem.replace('/', "."), name.to_string());
            }
        }
        Ok(Archive { path: path.to_path_buf(), entries })
    }

    pub fn file_name(&self) -> String {
        self.path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
    }

    pub fn contains(&self, qualified: &str) -> bool {
        self.entries.contains_key(qualified)
    }

    pub fn class_names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Qualified names whose simple name matches, in sorted order.
    pub fn by_simple_name<'a>(&'a self, simple: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.class_names().filter(move |q| crate::model::simple_name(q) == simple)
    }

    pub fn read(&self, qualified: &str) -> Result<CompiledClass, RetrieveError> {
        let entry = self.entries.get(qualified).ok_or_else(|| RetrieveError::ClassNotFound { class: qualified.to_string(), path: self.path.clone() })?;
        let file = File::open(&self.path).map_err(|e| RetrieveError::io(&self.path, e))?;
        let mut zip = zip::ZipArchive::new(file).map_err(|e| RetrieveError::Archive { path: self.path.clone(), message: e.to_string() })?;
        let mut f = zip.by_name(entry).map_err(|e| RetrieveError::Archive { path: self.path.clone(), message: e.to_string() })?;
        let mut bytes = Vec::with_capacity(f.size() as usize);
        f.read_to_end(&mut bytes).map_err(|e| RetrieveError::io(&self.path, e))?;
        Ok(CompiledClass { archive: self.path.clone(), entry: entry.clone(), bytes })
    }
}
