//! Flat key-value configuration files.
//!
//! Lines have the form `key = value`; blank lines and `#` comments are
//! ignored. Values from the file fill in flags the user did not pass, so the
//! precedence is flags > config file > built-in defaults.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::CliError;

#[derive(Debug, Default, Clone)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("--config: cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
            .map_err(|line| CliError::Usage(format!("--config: malformed line {line} in {}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, usize> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(i + 1);
            };
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Config value parsed as `T`, or a usage error naming the key.
    pub fn get_parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("config key '{key}': invalid value '{raw}'"))),
        }
    }
}
