//! A single JSON document mapping request keys to per-length results.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const CACHE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "/1");

#[derive(Serialize, Deserialize, Debug, Default, PartialEq)]
struct Document {
    version: String,
    entries: BTreeMap<String, BTreeMap<String, Value>>,
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    doc: Document,
    dirty: bool,
}

/// `--cache`, then `FISHBURN_LAB_CACHE`, then the user data directory.
pub fn default_path(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    if let Some(p) = std::env::var_os("FISHBURN_LAB_CACHE").filter(|p| !p.is_empty()) {
        return Some(PathBuf::from(p));
    }
    dirs::data_dir().map(|d| d.join("fishburn-lab").join("cache.json"))
}

impl Cache {
    /// Loads `path`; a missing file starts empty, and a corrupt or
    /// out-of-date one is discarded with a warning.
    pub fn open(path: PathBuf) -> Self {
        let fresh = Document {
            version: CACHE_VERSION.to_string(),
            entries: BTreeMap::new(),
        };
        let doc = match fs::read_to_string(&path) {
            Err(_) => fresh,
            Ok(text) => match serde_json::from_str::<Document>(&text) {
                Ok(doc) if doc.version == CACHE_VERSION => doc,
                Ok(_) => fresh,
                Err(e) => {
                    eprintln!("warning: ignoring unreadable cache {}: {e}", path.display());
                    fresh
                }
            },
        };
        Self { path, doc, dirty: false }
    }

    pub fn get(&self, key: &str, n: usize) -> Option<&Value> {
        self.doc.entries.get(key)?.get(&n.to_string())
    }

    pub fn put(&mut self, key: &str, n: usize, value: Value) {
        self.doc.entries.entry(key.to_string()).or_default().insert(n.to_string(), value);
        self.dirty = true;
    }

    /// Writes to a sibling temporary file, then renames over the target.
    pub fn save(&mut self) -> Result<(), CliError> {
        if !self.dirty {
            return Ok(());
        }
        let fail = |e: std::io::Error| CliError::Compute(format!("cannot write cache {}: {e}", self.path.display()));
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(fail)?;
        }
        let mut tmp = self.path.clone().into_os_string();
        tmp.push(format!(".tmp{}", std::process::id()));
        let tmp = PathBuf::from(tmp);
        let text = serde_json::to_string(&self.doc).expect("cache serializes");
        fs::write(&tmp, text).map_err(fail)?;
        fs::rename(&tmp, &self.path).map_err(fail)?;
        self.dirty = false;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_keeps_decimal_strings() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        let mut c = Cache::open(path.clone());
        c.put("count|F()", 30, Value::String("123456789012345678901234567890".into()));
        c.save().unwrap();
        let c = Cache::open(path);
        assert_eq!(c.get("count|F()", 30).unwrap(), "123456789012345678901234567890");
        assert!(c.get("count|F()", 29).is_none());
    }

    #[test]
    fn stale_and_corrupt_files_start_empty() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        fs::write(&path, r#"{"version":"0.0.0/0","entries":{"k":{"1":"9"}}}"#).unwrap();
        assert!(Cache::open(path.clone()).get("k", 1).is_none());
        fs::write(&path, "{not json").unwrap();
        assert!(Cache::open(path).get("k", 1).is_none());
    }
}
