use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("model mismatch: {0}")]
    ModelMismatch(String),

    #[error("not a bisection: {0}")]
    NotABisection(String),

    #[error("not a full-group element: {0}")]
    NotFull(String),

    #[error("set is not contained in the source of the bisection")]
    NotInSource,

    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),

    #[error("restriction to the empty set")]
    EmptyRestriction,

    #[error("orbit of unit {unit} has fewer than {required} points")]
    OrbitTooSmall { unit: String, required: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("measure is not invariant: {0}")]
    NotInvariant(String),

    #[error("functional is not tracial: {0}")]
    NotTracial(String),

    #[error("measure atoms are too coarse to evaluate {0}")]
    DepthInsufficient(String),

    #[error("missing covering witness for {0}")]
    MissingWitness(String),

    #[error("no full-group element contains {0}")]
    NotCoverable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        pos,
        msg: msg.into(),
    })
}
