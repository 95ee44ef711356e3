use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("eigensolver did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not unipotent (residual {residual:e})")]
    NotUnipotent { residual: f64 },
    #[error("matrix is not hyperbolic: {0}")]
    NotHyperbolic(String),
    #[error("value overflows f64 range")]
    Overflow,
    #[error("index {index} out of range for dimension {dim}")]
    BadIndex { index: usize, dim: usize },
    #[error("representation dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: u128, cap: u128 },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entries must be strictly positive")]
    NonPositive,
    #[error("totals differ by {difference:e}")]
    SumMismatch { difference: f64 },
    #[error("spectral radius {c} does not exceed {d}")]
    NotSeparable { c: f64, d: f64 },
    #[error("order holds: no separating character exists")]
    OrderHolds,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("exact arithmetic unavailable: {0}")]
    NotExact(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of the numerics rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::IllConditioned(_)
                | Error::Overflow
                | Error::NotExact(_)
        )
    }
}
