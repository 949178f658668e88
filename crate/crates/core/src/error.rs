use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no Khmer content in {0:?}")]
    NoKhmerContent(String),

    #[error("{0:?} is not a Khmer base consonant")]
    NotAConsonant(char),

    #[error("vocabulary is empty after applying min_word_count")]
    EmptyVocabulary,

    #[error("{0:?} yields no subword units")]
    NoSubwords(String),

    #[error("cannot take the cosine of a zero vector")]
    ZeroVector,

    #[error("model has no vectors")]
    EmptyModel,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("document id {0:?} is already indexed")]
    DuplicateDocId(String),

    #[error("unsupported file version {found} (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("corrupt file: {0}")]
    Corrupt(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl Error {
    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
