use thiserror::Error;

/// Errors raised by the automorphism, domain, torus, winding and homotopy
/// operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// An inversion step received a zero coordinate.
    #[error("singular point: step {step} inverts coordinate {axis} at value 0")]
    SingularPoint { step: usize, axis: usize },

    #[error("step {step} is not invertible (|det| below tolerance)")]
    NonInvertibleStep { step: usize },

    #[error("invalid generator step: {0}")]
    InvalidStep(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("axis {axis} is not a deleted coordinate of the domain")]
    InvalidAxis { axis: usize },

    #[error("point lies outside the domain")]
    OutsideDomain,

    #[error("word does not preserve the domain")]
    DomainNotPreserved,

    #[error("exponent matrix is not unimodular (det = {det})")]
    NotUnimodular { det: i128 },

    #[error("integer determinant overflowed i128")]
    DeterminantOverflow,

    #[error("invalid exponent matrix: {0}")]
    InvalidMatrix(String),

    /// The word failed the diagonal consistency checks at `point`.
    #[error("word is not diagonal (coordinate {coordinate} fails at sampled point)")]
    NotDiagonal {
        coordinate: usize,
        point: Vec<num_complex::Complex64>,
    },

    #[error("restricted function vanishes on the contour at theta = {theta}")]
    ZeroOnContour { theta: f64 },

    #[error("argument refinement did not converge within {samples} samples")]
    BudgetExhausted { samples: usize },

    #[error("path parameter {t} outside [0, 1]")]
    OutOfRange { t: f64 },

    #[error("invalid bump function: {0}")]
    InvalidBump(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Short stable name used in machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::SingularPoint { .. } => "SingularPoint",
            Error::NonInvertibleStep { .. } => "NonInvertibleStep",
            Error::InvalidStep(_) => "InvalidStep",
            Error::InvalidPolynomial(_) => "InvalidPolynomial",
            Error::InvalidDomain(_) => "InvalidDomain",
            Error::InvalidAxis { .. } => "InvalidAxis",
            Error::OutsideDomain => "OutsideDomain",
            Error::DomainNotPreserved => "DomainNotPreserved",
            Error::NotUnimodular { .. } => "NotUnimodular",
            Error::DeterminantOverflow => "DeterminantOverflow",
            Error::InvalidMatrix(_) => "InvalidMatrix",
            Error::NotDiagonal { .. } => "NotDiagonal",
            Error::ZeroOnContour { .. } => "ZeroOnContour",
            Error::BudgetExhausted { .. } => "BudgetExhausted",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::InvalidBump(_) => "InvalidBump",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }

    /// Whether the error is a mathematical failure of a well-formed request,
    /// as opposed to malformed input.
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            Error::SingularPoint { .. }
                | Error::NonInvertibleStep { .. }
                | Error::InvalidAxis { .. }
                | Error::OutsideDomain
                | Error::DomainNotPreserved
                | Error::NotUnimodular { .. }
                | Error::DeterminantOverflow
                | Error::NotDiagonal { .. }
                | Error::ZeroOnContour { .. }
                | Error::BudgetExhausted { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
