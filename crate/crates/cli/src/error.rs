use serde_json::json;
use thiserror::Error;

use crate::config::ConfigError;

/// Exit status for a bad command line or config.
pub const EXIT_USAGE: u8 = 2;
/// Exit status for a failed computation.
pub const EXIT_NUMERIC: u8 = 3;
/// Exit status for a filesystem failure.
pub const EXIT_IO: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("numeric failure in {context}: {source}")]
    Numeric {
        context: String,
        #[source]
        source: hhsim::Error,
    },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn numeric(context: impl Into<String>) -> impl FnOnce(hhsim::Error) -> Self {
        let context = context.into();
        move |source| CliError::Numeric { context, source }
    }

    pub fn io(path: impl Into<String>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => EXIT_USAGE,
            CliError::Numeric { .. } => EXIT_NUMERIC,
            CliError::Io { .. } => EXIT_IO,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Config(ConfigError::Parse { .. }) => "config-parse",
            CliError::Config(ConfigError::Invalid(_)) => "config-invalid",
            CliError::Numeric { .. } => "numeric",
            CliError::Io { .. } => "io",
        }
    }

    /// Machine-readable record printed on stderr.
    pub fn record(&self) -> serde_json::Value {
        let mut r = json!({
            "error": self.kind(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        });
        match self {
            CliError::Config(ConfigError::Parse { line, column, .. }) => {
                r["line"] = json!(line);
                r["column"] = json!(column);
            }
            CliError::Config(ConfigError::Invalid(v)) => r["violations"] = json!(v),
            _ => {}
        }
        r
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
