use std::path::PathBuf;

use thiserror::Error;

/// Malformed textual input: entries, matrices, words, table files.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid ring entry {0:?}: expected \"a,b,c,d/k\" with integer fields")]
    Entry(String),
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("invalid gate word {0:?}: letters must be H, P or I")]
    Word(String),
    #[error("unexpected end of input")]
    Truncated,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    Dimension(usize, usize),
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("matrix is not an element of the two-qubit Clifford group")]
    NotClifford,
    #[error("element id {0} out of range")]
    InvalidId(usize),
    #[error("group closure exceeded {0} elements")]
    ClosureCap(usize),
    #[error("corrupt table {path}: {msg}")]
    CorruptTable { path: PathBuf, msg: String },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
