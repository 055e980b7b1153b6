//! Flat JSON cache for final reported counts, keyed by a canonical request
//! string. Entries are reused only when configuration, mode, method,
//! convention flags, and artifact version all match (they are all part of
//! the key, and the version is stored again in the entry).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::report::ARTIFACT_VERSION;

#[derive(Default, Serialize, Deserialize)]
pub struct CacheFile {
    entries: BTreeMap<String, CacheEntry>,
}

#[derive(Clone, Serialize, Deserialize)]
pub struct CacheEntry {
    pub count: String,
    pub artifact_version: String,
}

pub struct Cache {
    path: PathBuf,
    file: CacheFile,
}

pub fn request_key(
    configuration: &str,
    mode: &str,
    method: &str,
    edge_interaction: &str,
    candidates: &str,
) -> String {
    format!("v{ARTIFACT_VERSION}|{configuration}|{mode}|{method}|{edge_interaction}|{candidates}")
}

impl Cache {
    pub fn open(path: &Path) -> Result<Self, CliError> {
        let file = if path.exists() {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Validation(format!("malformed cache {}: {e}", path.display())))?
        } else {
            CacheFile::default()
        };
        Ok(Cache { path: path.to_path_buf(), file })
    }

    pub fn lookup(&self, key: &str) -> Option<String> {
        let entry = self.file.entries.get(key)?;
        (entry.artifact_version == ARTIFACT_VERSION).then(|| entry.count.clone())
    }

    pub fn store(&mut self, key: String, count: String) -> Result<(), CliError> {
        self.file.entries.insert(
            key,
            CacheEntry { count, artifact_version: ARTIFACT_VERSION.to_string() },
        );
        let text = serde_json::to_string_pretty(&self.file).expect("cache serialization");
        std::fs::write(&self.path, text).map_err(|e| CliError::io(&self.path, e))
    }
}
