use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no usable edges")]
    EmptyGraph,

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("graph has {n} vertex; at least 2 are required")]
    Degenerate { n: usize },

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("capacity exceeded: {requested} vertices requested, limit is {limit}")]
    Capacity { requested: u128, limit: u128 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("eigensolver did not converge (residual {residual:e})")]
    NonConvergence { residual: f64 },

    #[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error(
        "iterative solve did not converge after {iterations} iterations (residual {residual:e})"
    )]
    SolverStalled { iterations: usize, residual: f64 },

    #[error("simulation unstable at step {step}: deviation energy {energy:e}; use a smaller dt")]
    Unstable { step: u64, energy: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of numerical routines rather than of the input data.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::NotPositiveDefinite { .. }
                | Error::SolverStalled { .. }
                | Error::Unstable { .. }
        )
    }
}
