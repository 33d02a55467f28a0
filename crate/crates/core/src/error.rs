//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("argument {value} outside the documented accuracy window [{lo}, {hi}]")]
    OutsideWindow { value: f64, lo: f64, hi: f64 },

    #[error("contour rejected: {0}")]
    BadContour(String),

    #[error("pole at distance {dist:.3e} from the contour (tolerance {tol:.3e})")]
    PoleNearContour { dist: f64, tol: f64 },

    #[error("quadrature did not self-converge: |delta| = {delta:.3e} after refinement to {size} nodes")]
    NoConvergence { delta: f64, size: usize },

    #[error("discretized operator norm {norm} too close to 1; resolvent solve refused")]
    OperatorNormTooLarge { norm: f64 },

    #[error("linear system singular in {context}")]
    SingularSystem { context: &'static str },

    #[error("nonlinear solve failed after {iterations} iterations (residual {residual:.3e})")]
    NonlinearSolveFailed { iterations: usize, residual: f64 },

    #[error("eigensolve failed for model M={m}, N={n}")]
    EigensolveFailed { m: usize, n: usize },

    #[error("non-finite value produced in {context}")]
    NonFinite { context: &'static str },

    #[error("configuration error at {field}: {reason}")]
    Config { field: String, reason: String },
}
