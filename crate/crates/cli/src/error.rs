use std::path::PathBuf;

use thiserror::Error;

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown model '{0}' (expected classical, quantum, approach1, approach2 or factorize)")]
    UnknownModel(String),

    #[error("model {model} requires --{field}")]
    MissingParameter { model: &'static str, field: &'static str },

    #[error("--{field} does not apply to model {model}")]
    UnexpectedParameter { model: &'static str, field: &'static str },

    #[error("invalid {field}: {message}")]
    Config { field: &'static str, message: String },

    #[error("invalid parameter {}: {source}", source.field().unwrap_or("value"))]
    Domain {
        #[from]
        source: qgame::Error,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain { .. } => EXIT_DOMAIN,
            CliError::Io { .. } => EXIT_IO,
            _ => EXIT_CONFIG,
        }
    }

    pub(crate) fn config(field: &'static str, message: impl Into<String>) -> Self {
        CliError::Config {
            field,
            message: message.into(),
        }
    }
}
