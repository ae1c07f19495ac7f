//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path} not found")]
    NotFound { path: PathBuf },

    #[error("{path} is not a directory")]
    NotADirectory { path: PathBuf },

    #[error("{path} is not readable as text")]
    Unreadable { path: PathBuf },

    #[error("no source files found under {path}")]
    EmptyProject { path: PathBuf },

    #[error("{file}:{line}: python syntax error: {message}")]
    PythonSyntax {
        file: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid JSON in {path}: {message}")]
    Json { path: PathBuf, message: String },

    #[error("invalid YAML in {path}: {message}")]
    Yaml { path: PathBuf, message: String },

    #[error("template error: {0}")]
    Template(String),

    #[error("blueprint error: {0}")]
    Blueprint(String),

    #[error("synthesis error: {0}")]
    Synthesis(String),

    #[error("missing artifact {artifact}: run the `{stage}` stage first")]
    MissingArtifact { artifact: PathBuf, stage: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
