use std::io;
use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("record {record}: {field}: {message}")]
    Record {
        record: usize,
        field: &'static str,
        message: String,
    },
    #[error("record {record}: duplicate article id {id}")]
    DuplicateId { record: usize, id: u32 },
    #[error("{path}, line {line}: {message}")]
    Dataset {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{0}: dataset is empty")]
    EmptyDataset(PathBuf),
    #[error("config: {0}")]
    Config(String),
    #[error("index format version {found} is not supported (expected {expected})")]
    Version { found: u32, expected: u32 },
    #[error("checksum mismatch for {file}")]
    Checksum { file: String },
    #[error("index {file}: {message}")]
    Format { file: String, message: String },
    #[error("no concepts survive pruning")]
    NoConcepts,
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] esa_core::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(file: &str, message: impl Into<String>) -> Self {
        Error::Format {
            file: file.to_string(),
            message: message.into(),
        }
    }
}
