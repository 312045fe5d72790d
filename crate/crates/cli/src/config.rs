//! Config files hold `key = value` lines (`#` starts a comment). A key
//! `emit-every` or `emit_every` stands for the variable `PRL_EMIT_EVERY`,
//! and is applied only where that variable is unset, so that flags beat
//! the environment and the environment beats the file.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

pub fn parse(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: expected key=value, got {line:?}", i + 1);
        };
        let key = key.trim();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
            bail!("config line {}: bad key {key:?}", i + 1);
        }
        out.insert(env_name(key), value.trim().to_string());
    }
    Ok(out)
}

pub fn env_name(key: &str) -> String {
    format!("PRL_{}", key.to_ascii_uppercase().replace('-', "_"))
}

/// The `--config` value from raw arguments, else `PRL_CONFIG`.
pub fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--" {
            break;
        }
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(v) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(v));
        }
    }
    std::env::var_os("PRL_CONFIG").map(PathBuf::from)
}

/// Export the file's entries as `PRL_*` variables where those are unset.
/// Must run before any other thread starts.
pub fn apply(path: &Path) -> Result<()> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    for (name, value) in parse(&text)? {
        if std::env::var_os(&name).is_none() {
            std::env::set_var(name, value);
        }
    }
    Ok(())
}
