//! Flat key=value run configuration, overridable by flags.

use crate::{CliError, CliResult};
use std::collections::BTreeMap;
use std::path::Path;

/// Parsed config file: `key=value` lines, `#` comments, blank lines ignored.
#[derive(Debug, Default, Clone)]
pub struct ConfigMap {
    entries: BTreeMap<String, String>,
}

impl ConfigMap {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "config {} line {}: expected key=value, got {raw:?}",
                    path.display(),
                    idx + 1
                )));
            };
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Self { entries })
    }

    /// Flag value if given, else the config entry, else the default.
    pub fn resolve<T: std::str::FromStr + Clone>(
        &self,
        flag: Option<T>,
        key: &str,
        default: T,
    ) -> CliResult<T> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.entries.get(key) {
            Some(raw) => raw
                .parse()
                .map_err(|_| CliError::Usage(format!("config key {key}: cannot parse {raw:?}"))),
            None => Ok(default),
        }
    }
}
