//! Content-addressed cache for computed artifacts.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

pub fn key(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

fn path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// A missing or unreadable entry is treated as a miss.
pub fn load(dir: Option<&Path>, key: &str) -> Option<Value> {
    let text = fs::read_to_string(path(dir?, key)).ok()?;
    serde_json::from_str(&text).ok()
}

pub fn store(dir: Option<&Path>, key: &str, value: &Value) -> std::io::Result<()> {
    let Some(dir) = dir else { return Ok(()) };
    fs::create_dir_all(dir)?;
    // write then rename so a concurrent reader never sees a partial file
    let tmp = dir.join(format!("{key}.{}.tmp", std::process::id()));
    fs::write(&tmp, value.to_string())?;
    fs::rename(tmp, path(dir, key))
}
