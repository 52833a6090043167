use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("a vertex pair needs two distinct vertices, got {0} twice")]
    SelfLoop(usize),

    #[error("order {order} exceeds the supported maximum of {max}")]
    Capacity { order: usize, max: usize },

    #[error("edge {{{u},{v}}} is not legal for girth {girth}")]
    IllegalEdge { u: usize, v: usize, girth: usize },

    #[error("edge {{{u},{v}}} is already present")]
    DuplicateEdge { u: usize, v: usize },

    #[error("edge {{{u},{v}}} is not present")]
    MissingEdge { u: usize, v: usize },

    #[error("no legal edge exists")]
    NoLegalEdge,

    #[error("graph has girth below {threshold}")]
    GirthViolation { threshold: usize },

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("{path}:{line}: {source}")]
    SeedFile {
        path: PathBuf,
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by bad input data rather than bad invocation.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::GirthViolation { .. } | Error::Parse { .. } | Error::SeedFile { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
