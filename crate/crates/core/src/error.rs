use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature with {nodes} nodes cannot resolve degree {degree} (need nodes > i + j)")]
    InsufficientNodes { nodes: usize, degree: usize },

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("coefficient vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("jacobian is singular (pivot magnitude {pivot:e})")]
    SingularJacobian { pivot: f64 },

    #[error("residual became non-finite at iteration {iteration}")]
    NonFinite { iteration: usize },

    #[error("no sign change of the solution on (0, {search_to}]")]
    NoZeroFound { search_to: f64 },

    #[error("abscissa {x} is not a row of the tabulated reference `{reference}`")]
    AbscissaMismatch { x: f64, reference: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
