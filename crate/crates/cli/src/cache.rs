//! Append-only JSON-lines store of computed values.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CacheKey {
    pub route: String,
    pub m: u32,
    pub g: u32,
    pub mu: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    #[serde(flatten)]
    pub key: CacheKey,
    /// exact value as "p/q"
    pub value: String,
    pub version: String,
    pub timestamp: u64,
}

impl CacheEntry {
    pub fn new(key: CacheKey, value: String) -> Self {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        CacheEntry { key, value, version: env!("CARGO_PKG_VERSION").to_string(), timestamp }
    }
}

pub struct Cache {
    path: PathBuf,
}

/// Entries read back, with the number of lines that did not parse.
pub struct Loaded {
    pub entries: Vec<CacheEntry>,
    pub bad_lines: usize,
}

impl Cache {
    pub fn open(path: impl AsRef<Path>) -> Self {
        Cache { path: path.as_ref().to_path_buf() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn load(&self) -> std::io::Result<Loaded> {
        let mut out = Loaded { entries: Vec::new(), bad_lines: 0 };
        let f = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(e),
        };
        for line in BufReader::new(f).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str(&line) {
                Ok(e) => out.entries.push(e),
                Err(_) => out.bad_lines += 1,
            }
        }
        Ok(out)
    }

    /// Latest entry for the key, if any.
    pub fn get(&self, key: &CacheKey) -> std::io::Result<Option<CacheEntry>> {
        Ok(self.load()?.entries.into_iter().rev().find(|e| &e.key == key))
    }

    pub fn append(&self, e: &CacheEntry) -> std::io::Result<()> {
        if let Some(dir) = self.path.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)?;
            }
        }
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut line = serde_json::to_string(e).expect("entries serialize");
        line.push('\n');
        f.write_all(line.as_bytes())
    }

    /// Keeps the latest entry per key and drops unparsable lines; returns (kept, removed).
    pub fn gc(&self) -> std::io::Result<(usize, usize)> {
        let loaded = self.load()?;
        let total = loaded.entries.len() + loaded.bad_lines;
        let mut latest: BTreeMap<CacheKey, CacheEntry> = BTreeMap::new();
        for e in loaded.entries {
            latest.insert(e.key.clone(), e);
        }
        let tmp = self.path.with_extension("tmp");
        {
            let mut f = File::create(&tmp)?;
            for e in latest.values() {
                writeln!(f, "{}", serde_json::to_string(e).expect("entries serialize"))?;
            }
        }
        std::fs::rename(&tmp, &self.path)?;
        Ok((latest.len(), total - latest.len()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_gc() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::open(dir.path().join("c.jsonl"));
        let key = CacheKey { route: "fock".into(), m: 2, g: 1, mu: vec![3] };
        assert!(c.get(&key).unwrap().is_none());
        c.append(&CacheEntry::new(key.clone(), "1/3".into())).unwrap();
        c.append(&CacheEntry::new(key.clone(), "1/3".into())).unwrap();
        assert_eq!(c.get(&key).unwrap().unwrap().value, "1/3");
        assert_eq!(c.gc().unwrap(), (1, 1));
        assert_eq!(c.load().unwrap().entries.len(), 1);
    }
}
