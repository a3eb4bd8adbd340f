use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("two-round fraction {0} must lie strictly between 0 and 1")]
    InvalidTheta(f64),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("pair ({0}, {1}) is not an edge of the host graph")]
    NotASubgraph(usize, usize),
    #[error("codegree needs distinct vertices, got {0} twice")]
    SameVertex(usize),
    #[error("bit length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("instance exceeds the exhaustive budget: {what} = {got} > {limit}")]
    BudgetExceeded {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid sweep config: {0}")]
    Config(String),
    #[error("unknown verify suite `{0}` (expected spaces, bounds, oracles or sweep-smoke)")]
    UnknownSuite(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
