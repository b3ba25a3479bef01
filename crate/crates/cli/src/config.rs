//! Flat key-value configuration: command-line flags `--key value`,
//! optionally layered over a `key = value` file (flags override file
//! values), validated against the selected command's key set.

use crate::CliError;
use std::collections::BTreeMap;
use std::path::Path;

/// Keys consumed by the harness itself rather than the command math.
const RESERVED: &[&str] = &["config", "out", "grid", "seed", "channel"];

#[derive(Debug, Clone)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
    pub out: String,
    pub grid: Option<u32>,
    pub seed: Option<u64>,
    pub channel: Option<String>,
}

impl RunConfig {
    /// Assembles the configuration from argv (without the command word).
    pub fn from_args(args: &[String]) -> Result<Self, CliError> {
        let mut flags: BTreeMap<String, String> = BTreeMap::new();
        let mut i = 0;
        while i < args.len() {
            let arg = &args[i];
            let key = arg
                .strip_prefix("--")
                .ok_or_else(|| CliError::Validation(format!("expected a --key, got `{arg}`")))?;
            if key.is_empty() {
                return Err(CliError::Validation("empty flag name".into()));
            }
            let value = args
                .get(i + 1)
                .ok_or_else(|| CliError::Validation(format!("flag --{key} is missing a value")))?;
            if flags.insert(key.to_string(), value.clone()).is_some() {
                return Err(CliError::Validation(format!("duplicate key: {key}")));
            }
            i += 2;
        }

        let mut values = if let Some(path) = flags.get("config") {
            parse_config_file(Path::new(path))?
        } else {
            BTreeMap::new()
        };
        flags.remove("config");
        // flags override file values
        for (k, v) in flags {
            values.insert(k, v);
        }

        let out = values
            .remove("out")
            .ok_or_else(|| CliError::Validation("missing key: out".into()))?;
        let grid = values
            .remove("grid")
            .map(|v| {
                v.parse::<u32>()
                    .map_err(|_| CliError::Validation(format!("invalid value for key grid: `{v}`")))
            })
            .transpose()?;
        let seed = values
            .remove("seed")
            .map(|v| {
                v.parse::<u64>()
                    .map_err(|_| CliError::Validation(format!("invalid value for key seed: `{v}`")))
            })
            .transpose()?;
        let channel = values.remove("channel");

        Ok(RunConfig {
            values,
            out,
            grid,
            seed,
            channel,
        })
    }

    /// Rejects keys outside `allowed`; `RESERVED` keys are handled above.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<(), CliError> {
        for key in self.values.keys() {
            if !allowed.contains(&key.as_str()) && !RESERVED.contains(&key.as_str()) {
                return Err(CliError::Validation(format!("unknown key: {key}")));
            }
        }
        Ok(())
    }

    /// A required decimal parameter.
    pub fn require_f64(&self, key: &str) -> Result<f64, CliError> {
        let raw = self
            .values
            .get(key)
            .ok_or_else(|| CliError::Validation(format!("missing key: {key}")))?;
        raw.parse::<f64>()
            .map_err(|_| CliError::Validation(format!("invalid value for key {key}: `{raw}`")))
    }

    /// A required integer parameter.
    pub fn require_u64(&self, key: &str) -> Result<u64, CliError> {
        let raw = self
            .values
            .get(key)
            .ok_or_else(|| CliError::Validation(format!("missing key: {key}")))?;
        raw.parse::<u64>()
            .map_err(|_| CliError::Validation(format!("invalid value for key {key}: `{raw}`")))
    }

    /// An optional integer parameter.
    pub fn optional_u64(&self, key: &str) -> Result<Option<u64>, CliError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<u64>()
                .map(Some)
                .map_err(|_| CliError::Validation(format!("invalid value for key {key}: `{raw}`"))),
        }
    }
}

fn parse_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Validation(format!("cannot read config file {}: {e}", path.display()))
    })?;
    let mut values = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Validation(format!(
                "config file line {}: expected `key = value`, got `{line}`",
                lineno + 1
            ))
        })?;
        let key = key.trim().to_string();
        if key.is_empty() {
            return Err(CliError::Validation(format!(
                "config file line {}: empty key",
                lineno + 1
            )));
        }
        if values
            .insert(key.clone(), value.trim().to_string())
            .is_some()
        {
            return Err(CliError::Validation(format!(
                "config file line {}: duplicate key: {key}",
                lineno + 1
            )));
        }
    }
    Ok(values)
}
