//! Flat key-value run-configuration files.
//!
//! Grammar (line oriented, no nesting):
//!
//! ```text
//! # comment                 full-line comments only
//! [section]                 section header
//! key = value               scalar entry; value runs to end of line
//! ```
//!
//! Keys are unique within their section. Every key must belong to a
//! section. Commands reject sections and keys they do not know.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default)]
pub struct FlatConfig {
    sections: BTreeMap<String, BTreeMap<String, String>>,
    raw: String,
}

impl FlatConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut sections: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        let mut current: Option<String> = None;
        for (lineno, raw_line) in text.lines().enumerate() {
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| {
                        Error::config(format!("line {}: unterminated section", lineno + 1))
                    })?
                    .trim();
                if name.is_empty() {
                    return Err(Error::config(format!(
                        "line {}: empty section name",
                        lineno + 1
                    )));
                }
                sections.entry(name.to_string()).or_default();
                current = Some(name.to_string());
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() {
                return Err(Error::config(format!("line {}: empty key", lineno + 1)));
            }
            let section = current.clone().ok_or_else(|| {
                Error::config(format!(
                    "line {}: key `{key}` outside any section",
                    lineno + 1
                ))
            })?;
            let entry = sections.entry(section.clone()).or_default();
            if entry.insert(key.to_string(), value.to_string()).is_some() {
                return Err(Error::config(format!(
                    "line {}: duplicate key `{key}` in [{section}]",
                    lineno + 1
                )));
            }
        }
        Ok(FlatConfig {
            sections,
            raw: text.to_string(),
        })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
        FlatConfig::parse(&text)
    }

    /// The verbatim config text, echoed into run metadata so a run can be
    /// reproduced from its JSON output alone.
    pub fn raw(&self) -> &str {
        &self.raw
    }

    /// Reject sections or keys not in the allow-list `(section, keys)`.
    pub fn check_known(&self, allowed: &[(&str, &[&str])]) -> Result<()> {
        for (section, keys) in &self.sections {
            let spec = allowed
                .iter()
                .find(|(name, _)| name == section)
                .ok_or_else(|| Error::config(format!("unknown section [{section}]")))?;
            for key in keys.keys() {
                if !spec.1.contains(&key.as_str()) {
                    return Err(Error::config(format!("unknown key `{key}` in [{section}]")));
                }
            }
        }
        Ok(())
    }

    pub fn get_str(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .get(section)
            .and_then(|s| s.get(key))
            .map(|s| s.as_str())
    }

    pub fn get_f64(&self, section: &str, key: &str) -> Result<Option<f64>> {
        match self.get_str(section, key) {
            None => Ok(None),
            Some(v) => v
                .parse::<f64>()
                .map(Some)
                .map_err(|_| Error::config(format!("[{section}] {key} = {v}: not a number"))),
        }
    }

    pub fn f64_or(&self, section: &str, key: &str, default: f64) -> Result<f64> {
        Ok(self.get_f64(section, key)?.unwrap_or(default))
    }

    pub fn require_f64(&self, section: &str, key: &str) -> Result<f64> {
        self.get_f64(section, key)?
            .ok_or_else(|| Error::config(format!("missing required key `{key}` in [{section}]")))
    }

    pub fn get_usize(&self, section: &str, key: &str) -> Result<Option<usize>> {
        match self.get_str(section, key) {
            None => Ok(None),
            Some(v) => v.parse::<usize>().map(Some).map_err(|_| {
                Error::config(format!(
                    "[{section}] {key} = {v}: not a non-negative integer"
                ))
            }),
        }
    }

    pub fn usize_or(&self, section: &str, key: &str, default: usize) -> Result<usize> {
        Ok(self.get_usize(section, key)?.unwrap_or(default))
    }

    pub fn str_or<'a>(&'a self, section: &str, key: &str, default: &'a str) -> &'a str {
        self.get_str(section, key).unwrap_or(default)
    }
}
