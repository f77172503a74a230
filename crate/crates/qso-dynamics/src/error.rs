use thiserror::Error;

/// Errors raised across the crate. Coefficient and coordinate indices in
/// messages are 1-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient p[{i}][{j}][{k}] = {value} is negative")]
    NegativeCoefficient { i: usize, j: usize, k: usize, value: f64 },

    #[error("coefficient p[{i}][{j}][{k}] = {value} is not finite")]
    NonFiniteCoefficient { i: usize, j: usize, k: usize, value: f64 },

    #[error(
        "coefficients p[{i}][{j}][{k}] = {value} and p[{j}][{i}][{k}] = {mirror} \
         differ by more than the symmetry tolerance"
    )]
    AsymmetricCoefficient { i: usize, j: usize, k: usize, value: f64, mirror: f64 },

    #[error("coefficient row (i={i}, j={j}) sums to {sum}, expected 1")]
    RowSumViolation { i: usize, j: usize, sum: f64 },

    #[error("parameter constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("{name} = {value} is outside {range}")]
    OutOfRange { name: &'static str, value: f64, range: &'static str },

    #[error("x3 = {x3} is outside the admissible interval [0, {upper}]")]
    DomainViolation { x3: f64, upper: f64 },

    #[error("no sign change of the scalar residual was bracketed on [0, {upper}]")]
    NoRootBracketed { upper: f64 },

    #[error("fixed-point residual {residual} exceeds tolerance {tol}")]
    ToleranceNotReached { residual: f64, tol: f64 },

    #[error("not a fixed point: residual {residual} exceeds tolerance {tol}")]
    NotAFixedPoint { residual: f64, tol: f64 },

    #[error("operation requires {required}")]
    RegimeMismatch { required: &'static str },

    #[error("theta is undefined: x1 = x2 = 0")]
    UndefinedTheta,

    #[error("invalid simplex point: {0}")]
    InvalidPoint(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable tag for each variant, used by the CLI error
    /// object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NegativeCoefficient { .. } => "negative_coefficient",
            Error::NonFiniteCoefficient { .. } => "non_finite_coefficient",
            Error::AsymmetricCoefficient { .. } => "asymmetric_coefficient",
            Error::RowSumViolation { .. } => "row_sum_violation",
            Error::ConstraintViolation(_) => "constraint_violation",
            Error::OutOfRange { .. } => "out_of_range",
            Error::DomainViolation { .. } => "domain_violation",
            Error::NoRootBracketed { .. } => "no_root_bracketed",
            Error::ToleranceNotReached { .. } => "tolerance_not_reached",
            Error::NotAFixedPoint { .. } => "not_a_fixed_point",
            Error::RegimeMismatch { .. } => "regime_mismatch",
            Error::UndefinedTheta => "undefined_theta",
            Error::InvalidPoint(_) => "invalid_point",
            Error::Parse(_) => "parse_error",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
