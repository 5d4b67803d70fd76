//! Canonical output and the run manifest.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Rounds every non-integer number to 6 decimals. `serde_json` maps are
/// ordered, so serializing the result gives sorted keys.
pub fn canonical(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            serde_json::Number::from_f64((x * 1e6).round() / 1e6)
                .map(Value::Number)
                .unwrap_or(Value::Null)
        }
        Value::Array(v) => Value::Array(v.into_iter().map(canonical).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, canonical(v))).collect()),
        other => other,
    }
}

pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = canonical(serde_json::to_value(value)?);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

/// Writes to `path`, or stdout when `None`.
pub fn write_output(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub seed: u64,
    pub versions: BTreeMap<String, String>,
    /// SHA-256 of every input file, keyed by the path as given.
    pub input_digests: BTreeMap<String, String>,
    pub output_digest: String,
    pub output_paths: Vec<PathBuf>,
    pub wall_clock_seconds: f64,
    pub exit_code: i32,
}

pub fn versions() -> BTreeMap<String, String> {
    let mut v = BTreeMap::new();
    v.insert("diffset".into(), env!("CARGO_PKG_VERSION").into());
    v.insert("diffset-cli".into(), env!("CARGO_PKG_VERSION").into());
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_are_rounded_and_keys_sorted() {
        let v = serde_json::json!({"b": 1.23456789, "a": [2, 0.1 + 0.2], "c": {"z": 1, "y": 2}});
        let s = serde_json::to_string(&canonical(v)).unwrap();
        assert_eq!(s, r#"{"a":[2,0.3],"b":1.234568,"c":{"y":2,"z":1}}"#);
    }

    #[test]
    fn digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
