//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by graph construction, file ingestion, ranking and
/// evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A malformed line in a line-oriented input file.
    #[error("{}:{line}: {message}", path.display())]
    Malformed {
        path: PathBuf,
        line: usize,
        message: String,
    },

    /// A syntax error in a GML document, located by byte offset.
    #[error("{}: syntax error at byte {offset}: {message}", path.display())]
    Syntax {
        path: PathBuf,
        offset: usize,
        message: String,
    },

    /// A rejected in-memory edge record (1-based record index).
    #[error("record {index}: {message}")]
    BadRecord { index: usize, message: String },

    /// An invalid parameter value. Maps to a usage error in the CLI.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("graph has {got} node(s) but the operation requires at least {needed}")]
    TooFewNodes { needed: usize, got: usize },

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),

    #[error("duplicate entry for topic {topic}, document {doc}")]
    DuplicateDoc { topic: String, doc: String },

    /// All fatigue weights in a nonzero transition column vanished: every
    /// target of the node sits at the maximum indegree |V| - 1.
    #[error("fatigue removed every transition out of node {column}: all its targets have maximum indegree")]
    FatigueCollapse { column: usize },

    /// The fatigue vector has no mass: every node sits at the maximum
    /// indegree |V| - 1 (a loop-free complete graph).
    #[error("fatigue vector has zero mass: every node has maximum indegree")]
    DegenerateFatigue,

    #[error("{0}")]
    Data(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Attach a path to an I/O error.
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
