use thiserror::Error;

/// Errors raised by the library.
///
/// Numeric payloads are reported as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid coefficient: {0}")]
    InvalidCoefficient(String),

    #[error("weighted Gram matrix is numerically singular at degree {degree} (relative pivot {relative_pivot:.3e})")]
    IllConditioned { degree: usize, relative_pivot: f64 },

    #[error("breakpoint mismatch: operand breakpoint {found} does not match interface {expected}")]
    BreakpointMismatch { expected: f64, found: f64 },

    #[error("root refinement did not converge in bracket [{lo}, {hi}]")]
    RootNotConverged { lo: f64, hi: f64 },

    #[error("expected {expected} roots but found {found}")]
    RootCount { expected: usize, found: usize },

    #[error("interface point {alpha} is not inside the domain ({a}, {b})")]
    AlphaOutsideDomain { alpha: f64, a: f64, b: f64 },

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("point {x} lies outside the domain ({a}, {b})")]
    OutsideDomain { x: f64, a: f64, b: f64 },

    #[error("singular matrix: pivot {pivot:.3e} at column {column}")]
    SingularMatrix { column: usize, pivot: f64 },

    #[error("function has nonzero boundary values ({left:.3e}, {right:.3e})")]
    NonzeroBoundary { left: f64, right: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("mesh 1/h = {inv_h}: {source}")]
    OnMesh {
        inv_h: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// The underlying error, with any mesh annotation removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::OnMesh { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
