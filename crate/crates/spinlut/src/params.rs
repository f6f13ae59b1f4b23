//! Flat key/value parameter documents.
//!
//! Both parameter files (device and technology) and Monte Carlo summaries use
//! the same line-oriented format:
//!
//! ```text
//! # comment
//! key = value
//! ```
//!
//! Keys are `[a-z0-9_]+`, values are free text (typically a number). Loaders
//! built on top of [`Document`] validate ranges and reject unknown keys so a
//! typo in a file fails loudly instead of silently using a default.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// A parsed key/value document. Preserves nothing but the entries; comments
/// are dropped on parse and re-emitted by writers as they see fit.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Document {
    entries: BTreeMap<String, String>,
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses document text. Duplicate keys are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::config(
                    format!("line {}", lineno + 1),
                    format!("expected `key = value`, got `{line}`"),
                ));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() || !key.bytes().all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_') {
                return Err(Error::config(&key, "keys must be lowercase [a-z0-9_]+"));
            }
            if entries.insert(key.clone(), value).is_some() {
                return Err(Error::config(&key, "duplicate key"));
            }
        }
        Ok(Document { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::config(path.display().to_string(), format!("cannot read file: {e}"))
        })?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.entries.insert(key.to_string(), value.to_string());
    }

    pub fn get_str(&self, key: &str) -> Result<&str> {
        self.entries
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::config(key, "missing required key"))
    }

    pub fn get_str_opt(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn get_f64(&self, key: &str) -> Result<f64> {
        parse_f64(key, self.get_str(key)?)
    }

    pub fn get_f64_opt(&self, key: &str) -> Result<Option<f64>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(v) => parse_f64(key, v).map(Some),
        }
    }

    pub fn get_u64(&self, key: &str) -> Result<u64> {
        let raw = self.get_str(key)?;
        raw.parse::<u64>()
            .map_err(|_| Error::config(key, format!("expected an unsigned integer, got `{raw}`")))
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Rejects any key that is not in `known`. Loaders call this after
    /// extracting everything they understand.
    pub fn ensure_known(&self, known: &[&str]) -> Result<()> {
        for key in self.entries.keys() {
            if !known.contains(&key.as_str()) {
                return Err(Error::config(key, "unknown key"));
            }
        }
        Ok(())
    }

    /// Renders the document with keys in sorted order. `f64` values written
    /// through [`Document::set`] use Rust's shortest round-trip formatting,
    /// so emit-then-parse reproduces the exact value.
    pub fn to_text(&self, header: &str) -> String {
        let mut out = String::new();
        for line in header.lines() {
            let _ = writeln!(out, "# {line}");
        }
        for (key, value) in &self.entries {
            let _ = writeln!(out, "{key} = {value}");
        }
        out
    }
}

fn parse_f64(key: &str, raw: &str) -> Result<f64> {
    let value: f64 = raw
        .parse()
        .map_err(|_| Error::config(key, format!("expected a number, got `{raw}`")))?;
    if !value.is_finite() {
        return Err(Error::config(key, "value must be finite"));
    }
    Ok(value)
}
