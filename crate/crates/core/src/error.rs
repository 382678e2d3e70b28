use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: expected a non-negative integer, found `{token}`")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: expected two vertex ids per line, found {found} tokens")]
    MalformedLine { line: usize, found: usize },
    #[error("line {line}: vertex {vertex} out of range for declared n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("edge list declares no vertices")]
    EmptyGraph,
    #[error("invalid edge ({u}, {v}) for a simple graph on {n} vertices")]
    InvalidEdge { u: usize, v: usize, n: usize },
    #[error("H_m requires m >= 1")]
    InvalidHmOrder,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("exp(beta * lambda) overflows at beta = {beta}: exponent {exponent} exceeds {limit}")]
    Overflow { beta: f64, exponent: f64, limit: f64 },
    #[error("{terms} Taylor terms leave remainder bound {bound:e} at beta = {beta}; need < 1e-12 (try {needed} terms)")]
    InsufficientTerms {
        beta: f64,
        terms: usize,
        bound: f64,
        needed: usize,
    },
    #[error("vertex classes {first} and {second} are indistinguishable at spectral tolerance {tol:e}")]
    Indistinguishable { first: usize, second: usize, tol: f64 },
}

impl Error {
    /// Errors caused by the numerics rather than by malformed input.
    pub fn is_computational(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::Overflow { .. }
                | Error::InsufficientTerms { .. }
                | Error::Indistinguishable { .. }
        )
    }
}
