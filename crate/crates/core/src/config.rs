//! TOML configuration: model profiles plus run defaults. Credentials are
//! never stored here; profiles name an environment variable instead.

use crate::degenerate::Thresholds;
use crate::error::ConfigError;
use crate::gateway::ModelProfile;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    #[serde(default = "default_seed")]
    pub default_seed: u64,
    #[serde(default = "default_workers")]
    pub workers: usize,
    /// Directory with `<template id>.txt` overrides; optional.
    #[serde(default)]
    pub template_dir: Option<String>,
    #[serde(default = "default_output_dir")]
    pub output_dir: String,
    #[serde(default)]
    pub degenerate: Thresholds,
    /// Keyed by profile name used on the command line.
    pub profiles: BTreeMap<String, ModelProfile>,
}

fn default_seed() -> u64 {
    42
}

fn default_workers() -> usize {
    4
}

fn default_output_dir() -> String {
    "out".to_string()
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&text, &path.display().to_string())
    }

    /// Parse and validate config text; `label` names the source in errors.
    pub fn from_toml_str(text: &str, label: &str) -> Result<Config, ConfigError> {
        let mut config: Config = toml::from_str(text).map_err(|e| ConfigError::Invalid {
            path: label.to_string(),
            message: e.to_string(),
        })?;
        config.validate(label)?;
        // Profile names come from the map keys.
        for (name, profile) in config.profiles.iter_mut() {
            profile.name = name.clone();
        }
        Ok(config)
    }

    fn validate(&self, label: &str) -> Result<(), ConfigError> {
        let invalid = |message: String| ConfigError::Invalid {
            path: label.to_string(),
            message,
        };
        if self.workers == 0 {
            return Err(invalid("workers must be at least 1".to_string()));
        }
        if !self.profiles.values().any(|p| p.is_mock()) {
            return Err(invalid(
                "at least one profile must use the mock endpoint".to_string(),
            ));
        }
        for (name, profile) in &self.profiles {
            if profile.context_window == 0 {
                return Err(invalid(format!("profile {name}: context_window must be > 0")));
            }
            if profile.reserved_output_tokens >= profile.context_window {
                return Err(invalid(format!(
                    "profile {name}: reserved_output_tokens must be below the window"
                )));
            }
        }
        Ok(())
    }

    pub fn profile(&self, name: &str) -> Option<&ModelProfile> {
        self.profiles.get(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_config(text: &str) -> (tempfile::TempDir, std::path::PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("config.toml");
        std::fs::write(&path, text).unwrap();
        (dir, path)
    }

    const MINIMAL: &str = r#"
[profiles.mock]
name = "mock"
endpoint = "mock"
context_window = 100000
"#;

    #[test]
    fn minimal_config_gets_defaults() {
        let (_dir, path) = write_config(MINIMAL);
        let config = Config::load(&path).unwrap();
        assert_eq!(config.default_seed, 42);
        assert_eq!(config.workers, 4);
        let mock = config.profile("mock").unwrap();
        assert_eq!(mock.temperature, 0.1);
        assert_eq!(mock.reserved_output_tokens, 512);
    }

    #[test]
    fn missing_mock_profile_rejected() {
        let (_dir, path) = write_config(
            r#"
[profiles.gpt]
name = "gpt"
endpoint = "https://example.invalid/v1/chat/completions"
context_window = 128000
"#,
        );
        assert!(matches!(
            Config::load(&path),
            Err(ConfigError::Invalid { .. })
        ));
    }

    #[test]
    fn zero_workers_rejected() {
        let (_dir, path) = write_config(&format!("workers = 0\n{MINIMAL}"));
        assert!(Config::load(&path).is_err());
    }

    #[test]
    fn auth_comes_from_env_var_name_not_value() {
        let (_dir, path) = write_config(
            r#"
[profiles.mock]
name = "mock"
endpoint = "mock"
context_window = 1000

[profiles.gpt]
name = "gpt"
endpoint = "https://example.invalid/v1/chat/completions"
context_window = 128000
auth_env_var = "HIERSUM_GPT_API_KEY"
"#,
        );
        let config = Config::load(&path).unwrap();
        let gpt = config.profile("gpt").unwrap();
        assert_eq!(gpt.auth_env_var.as_deref(), Some("HIERSUM_GPT_API_KEY"));
    }

    #[test]
    fn profile_key_wins_over_name_field() {
        let (_dir, path) = write_config(
            r#"
[profiles.mock]
name = "something-else"
endpoint = "mock"
context_window = 1000
"#,
        );
        let config = Config::load(&path).unwrap();
        assert_eq!(config.profile("mock").unwrap().name, "mock");
    }

    #[test]
    fn shipped_default_config_parses() {
        let path = Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("../../config/default.toml");
        let config = Config::load(&path).unwrap();
        assert!(config.profile("mock").is_some());
        assert_eq!(config.profile("gpt-4").unwrap().context_window, 128_000);
        assert_eq!(config.profile("codellama").unwrap().context_window, 16_384);
        assert_eq!(config.profile("codegemma").unwrap().context_window, 8_192);
    }
}
