use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },

    #[error("line {line}: loop at vertex {vertex}")]
    Loop { line: usize, vertex: usize },

    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },

    #[error("invalid rational {0:?}: expected an integer or p/q")]
    InvalidRational(String),

    #[error("invalid probability {0}: must lie in [0, 1]")]
    InvalidProbability(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid cycle length r = {r}: {reason}")]
    InvalidCycleLength { r: usize, reason: &'static str },

    #[error("graph has {n} vertices, exceeding the {what} limit of {limit}")]
    SizeLimit {
        n: usize,
        limit: usize,
        what: &'static str,
    },

    #[error("resource guard: {0}")]
    ResourceGuard(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("cross-check mismatch: {0}")]
    CrossCheck(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors raised by a size limit or computation budget.
    pub fn is_resource_guard(&self) -> bool {
        matches!(self, Error::SizeLimit { .. } | Error::ResourceGuard(_))
    }
}
