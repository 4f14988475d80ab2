use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A value that is not a valid nonnegative weight, or one that does not fit
    /// the configured share ring.
    #[error("weight domain error: {0}")]
    Domain(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("segment descriptor covers {covered} elements but vector has {len}")]
    SegmentMismatch { covered: usize, len: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not {0}")]
    NotNormalized(&'static str),

    #[error("structural error: {0}")]
    Structure(String),

    #[error("separator plan inconsistency: {0}")]
    Plan(String),

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("configuration error: {0}")]
    Config(String),
}
