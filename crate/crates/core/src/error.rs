use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex count {0} outside [1, 16]")]
    VertexCount(usize),
    #[error("edge ({u}, {v}) has an endpoint outside [0, {n})")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{what}: {value} exceeds the limit {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("duplicate dimer {0}")]
    DuplicateDimer(String),
    #[error("{0} is outside its supported range")]
    OutOfRange(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("vector length {got} does not match state count {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error(
        "power iteration did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("bisection failed: {0}")]
    Bracket(String),
    #[error("malformed input: {0}")]
    Parse(String),
}
