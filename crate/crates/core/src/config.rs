//! Runtime configuration shared by the command-line front end.

use std::path::PathBuf;

use thiserror::Error;

use crate::graph::DEFAULT_CAP;

/// Environment variable overriding the complexity cap.
pub const CAP_ENV: &str = "STRATAFORGE_CAP";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("complexity cap must be at least 1, got {0}")]
    InvalidCap(String),
}

impl ConfigError {
    pub fn name(&self) -> &'static str {
        match self {
            ConfigError::InvalidCap(_) => "InvalidCap",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// Upper bound on `3g - 3 + n` for enumeration.
    pub cap: u32,
    pub format: OutputFormat,
    pub facts: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config { cap: DEFAULT_CAP, format: OutputFormat::Text, facts: None }
    }
}

impl Config {
    pub fn with_cap(mut self, cap: u32) -> Result<Self, ConfigError> {
        if cap == 0 {
            return Err(ConfigError::InvalidCap(cap.to_string()));
        }
        self.cap = cap;
        Ok(self)
    }

    /// Parses a cap from text, as found in the environment.
    pub fn parse_cap(text: &str) -> Result<u32, ConfigError> {
        match text.trim().parse::<u32>() {
            Ok(cap) if cap >= 1 => Ok(cap),
            _ => Err(ConfigError::InvalidCap(text.to_string())),
        }
    }
}
