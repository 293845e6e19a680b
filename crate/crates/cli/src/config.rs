//! Flat `key = value` config files. Lines starting with `#` (or blank) are
//! skipped; unknown keys are rejected so typos cannot silently fall back to
//! defaults.

use crate::CliError;
use std::collections::BTreeMap;
use std::path::Path;

const KNOWN_KEYS: &[&str] = &[
    "de",
    "lambda",
    "re",
    "mass",
    "mu",
    "ell",
    "n-max",
    "ell-max",
    "mode",
    "convention",
    "weighted",
    "out",
    "points",
    "r-min",
    "r-max",
    "mu-min",
    "mu-max",
    "mu-step",
    "mu-values",
    "n",
    "oracle-points",
    "draws",
    "pekeris-c0",
    "pekeris-c1",
    "pekeris-c2",
];

/// Parsed config-file entries. All lookups are typed; parse failures are
/// configuration errors.
#[derive(Debug, Clone, Default)]
pub struct FileSettings {
    entries: BTreeMap<String, String>,
}

impl FileSettings {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::config(format!(
                    "{}:{}: expected `key = value`, got `{raw}`",
                    path.display(),
                    idx + 1
                )));
            };
            let key = key.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::config(format!(
                    "{}:{}: unknown config key `{key}`",
                    path.display(),
                    idx + 1
                )));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn get_f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.entries
            .get(key)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| CliError::config(format!("config key `{key}`: `{v}` is not a number")))
            })
            .transpose()
    }

    pub fn get_u32(&self, key: &str) -> Result<Option<u32>, CliError> {
        self.entries
            .get(key)
            .map(|v| {
                v.parse::<u32>().map_err(|_| {
                    CliError::config(format!("config key `{key}`: `{v}` is not a non-negative integer"))
                })
            })
            .transpose()
    }

    pub fn get_usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        self.entries
            .get(key)
            .map(|v| {
                v.parse::<usize>().map_err(|_| {
                    CliError::config(format!("config key `{key}`: `{v}` is not a non-negative integer"))
                })
            })
            .transpose()
    }

    pub fn get_bool(&self, key: &str) -> Result<Option<bool>, CliError> {
        self.entries
            .get(key)
            .map(|v| match v.as_str() {
                "true" | "yes" | "1" => Ok(true),
                "false" | "no" | "0" => Ok(false),
                other => Err(CliError::config(format!(
                    "config key `{key}`: `{other}` is not a boolean"
                ))),
            })
            .transpose()
    }
}
