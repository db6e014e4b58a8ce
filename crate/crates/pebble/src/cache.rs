//! Append-only JSON-lines cache of computed pebbling numbers.
//!
//! Keys come from the graph's family descriptor and the query, never from
//! graph canonization. Records written by another engine version are
//! ignored. A file with unreadable lines is rewritten with the good ones.

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub key: String,
    pub value: u64,
    /// Label of the vertex attaining the value.
    pub target: String,
    pub witness: Option<Vec<u32>>,
    /// Search effort of the original computation, so warmed output matches.
    pub checked: u64,
    pub engine_version: String,
}

/// Key for a (rooted or global) `t`-pebbling number.
pub fn number_key(family: &str, root: Option<&str>, t: u32, no_symmetry: bool) -> String {
    let root = root.unwrap_or("*");
    let sym = if no_symmetry { "|nosym" } else { "" };
    format!("{family}|number|root={root}|t={t}{sym}")
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    version: String,
    records: HashMap<String, CacheRecord>,
    /// Problems met while loading.
    pub warnings: Vec<String>,
}

impl Cache {
    pub fn open(path: impl AsRef<Path>) -> io::Result<Self> {
        Self::open_with_version(path, pebble_core::ENGINE_VERSION)
    }

    pub fn open_with_version(path: impl AsRef<Path>, version: &str) -> io::Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut cache = Cache {
            path,
            version: version.to_string(),
            records: HashMap::new(),
            warnings: Vec::new(),
        };
        let text = match fs::read_to_string(&cache.path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(e) if e.kind() == io::ErrorKind::InvalidData => {
                cache
                    .warnings
                    .push(format!("{}: not UTF-8, rebuilding", cache.path.display()));
                fs::write(&cache.path, "")?;
                return Ok(cache);
            }
            Err(e) => return Err(e),
        };
        let mut good = Vec::new();
        let mut bad = 0usize;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            match serde_json::from_str::<CacheRecord>(line) {
                Ok(r) => {
                    good.push(line);
                    if r.engine_version == cache.version {
                        cache.records.entry(r.key.clone()).or_insert(r);
                    }
                }
                Err(_) => bad += 1,
            }
        }
        if bad > 0 {
            cache.warnings.push(format!(
                "{}: ignored {bad} corrupt line(s), rebuilding",
                cache.path.display()
            ));
            let mut out = good.join("\n");
            if !out.is_empty() {
                out.push('\n');
            }
            let tmp = cache.path.with_extension("tmp");
            fs::write(&tmp, out)?;
            fs::rename(&tmp, &cache.path)?;
        }
        Ok(cache)
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn lookup(&self, key: &str) -> Option<&CacheRecord> {
        self.records.get(key)
    }

    /// Appends a record unless the key is already cached; the stored
    /// version is always this cache's.
    pub fn store(&mut self, mut record: CacheRecord) -> io::Result<()> {
        if self.records.contains_key(&record.key) {
            return Ok(());
        }
        record.engine_version = self.version.clone();
        let mut line = serde_json::to_string(&record).expect("records serialize");
        line.push('\n');
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        f.write_all(line.as_bytes())?;
        self.records.insert(record.key.clone(), record);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(key: &str, value: u64) -> CacheRecord {
        CacheRecord {
            key: key.into(),
            value,
            target: "v0".into(),
            witness: Some(vec![0, 0, 0, 5, 5, 0, 0]),
            checked: 42,
            engine_version: String::new(),
        }
    }

    #[test]
    fn store_then_lookup() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let key = number_key("cycle:7", None, 1, false);
        let mut c = Cache::open(&path).unwrap();
        assert!(c.lookup(&key).is_none());
        c.store(rec(&key, 11)).unwrap();
        assert_eq!(c.lookup(&key).unwrap().value, 11);
        let c = Cache::open(&path).unwrap();
        assert_eq!(c.lookup(&key).unwrap().value, 11);
        assert!(c.lookup("cycle:8|number|root=*|t=1").is_none());
        assert!(c.warnings.is_empty());
    }

    #[test]
    fn version_bump_hides_entries() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let mut c = Cache::open_with_version(&path, "old").unwrap();
        c.store(rec("k", 3)).unwrap();
        let c = Cache::open_with_version(&path, "new").unwrap();
        assert!(c.lookup("k").is_none());
    }

    #[test]
    fn corrupt_lines_are_dropped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let mut c = Cache::open(&path).unwrap();
        c.store(rec("good", 5)).unwrap();
        let mut f = OpenOptions::new().append(true).open(&path).unwrap();
        f.write_all(b"{not json\n").unwrap();
        let c = Cache::open(&path).unwrap();
        assert_eq!(c.warnings.len(), 1);
        assert_eq!(c.lookup("good").unwrap().value, 5);
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(Cache::open(&path).unwrap().warnings.is_empty());
    }
}
