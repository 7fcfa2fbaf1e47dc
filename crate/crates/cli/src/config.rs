//! Flat `key = value` run configuration. `#` starts a comment. Keys use the
//! long flag names (`noise-rms`); underscores are accepted in place of
//! hyphens. A flag given on the command line always wins over the file.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::CliError;
use crate::units;

#[derive(Debug, Default, Clone)]
pub struct Config {
    entries: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str, allowed: &[&str]) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected `key = value`", i + 1)))?;
            let key = key.trim().replace('_', "-").to_lowercase();
            if !allowed.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key `{key}` (expected one of: {})",
                    i + 1,
                    allowed.join(", ")
                )));
            }
            if entries.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(CliError::Usage(format!("config line {}: `{key}` set twice", i + 1)));
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: Option<&Path>, allowed: &[&str]) -> Result<Self, CliError> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::input(p, e))?;
                Self::parse(&text, allowed)
            }
        }
    }

    /// The flag value if given, else the config entry.
    pub fn value(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone().or_else(|| self.entries.get(key).cloned())
    }

    pub fn quantity(&self, flag: &Option<String>, key: &str, symbol: &str) -> Result<Option<f64>, CliError> {
        self.value(flag, key)
            .map(|v| units::parse_quantity(&v, symbol).map_err(|m| CliError::Usage(format!("--{key}: {m}"))))
            .transpose()
    }

    pub fn switch(&self, flag: &Option<String>, key: &str) -> Result<Option<bool>, CliError> {
        self.value(flag, key)
            .map(|v| match v.to_lowercase().as_str() {
                "on" | "true" | "yes" => Ok(true),
                "off" | "false" | "no" => Ok(false),
                _ => Err(CliError::Usage(format!("--{key}: expected on or off, got `{v}`"))),
            })
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const KEYS: &[&str] = &["seed", "noise-rms", "noise"];

    #[test]
    fn comments_and_precedence() {
        let c = Config::parse("# run\nseed = 7  # trailing\n\nnoise_rms=9uV\n", KEYS).unwrap();
        assert_eq!(c.value(&None, "seed").as_deref(), Some("7"));
        assert_eq!(c.value(&Some("8".into()), "seed").as_deref(), Some("8"));
        assert!((c.quantity(&None, "noise-rms", "V").unwrap().unwrap() - 9e-6).abs() < 1e-18);
    }

    #[test]
    fn rejects_unknown_duplicate_and_malformed() {
        assert!(Config::parse("gain = 3", KEYS).is_err());
        assert!(Config::parse("seed = 1\nseed = 2", KEYS).is_err());
        assert!(Config::parse("seed 1", KEYS).is_err());
    }

    #[test]
    fn switches() {
        let c = Config::parse("noise = off", KEYS).unwrap();
        assert_eq!(c.switch(&None, "noise").unwrap(), Some(false));
        assert!(c.switch(&Some("maybe".into()), "noise").is_err());
    }
}
