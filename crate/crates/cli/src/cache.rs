//! Content-addressed result cache. An entry is keyed by the SHA-256 of the
//! bundle bytes, operation name, canonical parameters and engine version, and
//! stores the exact output bytes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::thread;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

pub struct Cache {
    dir: PathBuf,
}

#[derive(Clone, Debug)]
pub struct Key {
    pub hash: String,
    pub operation: String,
    pub params: Value,
    pub bundle_source: String,
    pub bundle_sha: String,
}

impl Key {
    pub fn new(bundle_bytes: &[u8], bundle_source: &str, operation: &str, params: Value) -> Key {
        let bundle_sha = hex::encode(Sha256::digest(bundle_bytes));
        let mut h = Sha256::new();
        h.update(bundle_sha.as_bytes());
        h.update([0]);
        h.update(operation.as_bytes());
        h.update([0]);
        // serde_json maps are ordered, so this rendering is canonical
        h.update(params.to_string().as_bytes());
        h.update([0]);
        h.update(ENGINE_VERSION.as_bytes());
        Key {
            hash: hex::encode(h.finalize()),
            operation: operation.into(),
            params,
            bundle_source: bundle_source.into(),
            bundle_sha,
        }
    }
}

pub struct Entry {
    pub key: Key,
    pub payload: String,
    pub exit: i32,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Cache> {
        fs::create_dir_all(dir).with_context(|| format!("cannot create cache directory {}", dir.display()))?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    fn path(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.json"))
    }

    pub fn get(&self, key: &Key) -> Option<(String, i32)> {
        let text = fs::read_to_string(self.path(&key.hash)).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        let payload = v.get("payload")?.as_str()?.to_string();
        let exit = v.get("exit").and_then(Value::as_i64).unwrap_or(0) as i32;
        Some((payload, exit))
    }

    /// Write under a lock file, via a temporary file and an atomic rename.
    pub fn put(&self, key: &Key, payload: &str, exit: i32) -> Result<()> {
        let lock_path = self.dir.join(format!("{}.lock", key.hash));
        let mut lock = None;
        for _ in 0..50 {
            match fs::OpenOptions::new().write(true).create_new(true).open(&lock_path) {
                Ok(f) => {
                    lock = Some(f);
                    break;
                }
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => thread::sleep(Duration::from_millis(20)),
                Err(e) => return Err(e).context("cannot create cache lock"),
            }
        }
        if lock.is_none() {
            // another writer holds the lock; its entry will have identical bytes
            return Ok(());
        }
        let result = (|| -> Result<()> {
            let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            let entry = json!({
                "engine_version": ENGINE_VERSION,
                "operation": key.operation,
                "params": key.params,
                "bundle_source": key.bundle_source,
                "bundle_sha256": key.bundle_sha,
                "timestamp": stamp,
                "exit": exit,
                "payload": payload,
            });
            let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
            tmp.write_all(serde_json::to_string_pretty(&entry)?.as_bytes())?;
            tmp.persist(self.path(&key.hash))?;
            Ok(())
        })();
        let _ = fs::remove_file(&lock_path);
        result
    }

    pub fn entries(&self) -> Result<Vec<Entry>> {
        let mut out = Vec::new();
        let mut paths: Vec<PathBuf> = fs::read_dir(&self.dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for p in paths {
            let v: Value = serde_json::from_str(&fs::read_to_string(&p)?)
                .with_context(|| format!("corrupt cache entry {}", p.display()))?;
            let hash = p.file_stem().unwrap_or_default().to_string_lossy().to_string();
            let s = |k: &str| v.get(k).and_then(Value::as_str).unwrap_or_default().to_string();
            out.push(Entry {
                key: Key {
                    hash,
                    operation: s("operation"),
                    params: v.get("params").cloned().unwrap_or(Value::Null),
                    bundle_source: s("bundle_source"),
                    bundle_sha: s("bundle_sha256"),
                },
                payload: s("payload"),
                exit: v.get("exit").and_then(Value::as_i64).unwrap_or(0) as i32,
            });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn put_then_get() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = Key::new(b"bundle", "builtin:z2", "slf", json!({"args": {}}));
        assert!(cache.get(&key).is_none());
        cache.put(&key, "{\"dim\":2}", 0).unwrap();
        assert_eq!(cache.get(&key), Some(("{\"dim\":2}".to_string(), 0)));
        let entries = cache.entries().unwrap();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].key.hash, key.hash);
        assert_eq!(entries[0].key.bundle_source, "builtin:z2");
        assert!(!dir.path().join(format!("{}.lock", key.hash)).exists());
    }

    #[test]
    fn key_covers_inputs() {
        let base = Key::new(b"bundle", "a", "slf", json!({"x": 1}));
        assert_eq!(base.hash, Key::new(b"bundle", "elsewhere", "slf", json!({"x": 1})).hash);
        assert_ne!(base.hash, Key::new(b"bundle2", "a", "slf", json!({"x": 1})).hash);
        assert_ne!(base.hash, Key::new(b"bundle", "a", "qchar", json!({"x": 1})).hash);
        assert_ne!(base.hash, Key::new(b"bundle", "a", "slf", json!({"x": 2})).hash);
    }

    #[test]
    fn held_lock_skips_the_write() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = Key::new(b"b", "s", "op", json!(null));
        fs::write(dir.path().join(format!("{}.lock", key.hash)), "").unwrap();
        cache.put(&key, "payload", 0).unwrap();
        assert!(cache.get(&key).is_none());
    }
}
