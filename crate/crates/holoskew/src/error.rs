use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A group spec or raw table was rejected during construction.
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    /// A raw Cayley table failed validation; positions are 0-based.
    #[error("invalid table at row {row}, col {col}: {msg}")]
    InvalidTable { row: usize, col: usize, msg: String },

    /// A file with a group table could not be parsed.
    #[error("parse error at line {line}, col {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// A construction hypothesis failed; the message names a witness.
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    /// The gamma functional equation fails at the named pair.
    #[error("gamma functional equation fails at x={x}, y={y}")]
    GfeViolation { x: usize, y: usize },

    /// A claimed gamma value is not an automorphism of the group.
    #[error("gamma({elem}) is not an automorphism: {msg}")]
    NotAutomorphism { elem: usize, msg: String },

    /// A table handed to gamma_from_circle is not a skew-brace circle table;
    /// the message names the violated property.
    #[error("not a skew brace: {0}")]
    NotABrace(String),

    /// Degree or index mismatch between permutations or groups.
    #[error("mismatch: {0}")]
    Mismatch(String),

    /// A size bound was exceeded (e.g. direct T(G) above degree 8).
    #[error("bound exceeded: {0}")]
    Bound(String),

    /// An internal cross-check that must hold by theorem failed.
    #[error("internal invariant breach: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
