use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero vector has no direction")]
    ZeroVector,

    #[error("malformed linear program: {0}")]
    MalformedLp(String),

    #[error("query point lies outside the polytope")]
    NotInPolytope,

    #[error("ray unresolved after {0} cutting planes")]
    UnresolvedRay(usize),

    #[error("base point is not a vertex (separating LP infeasible)")]
    NotAVertex,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("genericity required: {0}")]
    GenericityRequired(String),

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("invalid rational literal {0:?}")]
    ParseScalar(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}
