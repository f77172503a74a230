use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance for accepting a point as lying on the simplex.
pub const EPS_SIMPLEX: f64 = 1e-12;

/// A point (x1, x2, x3) on the two-dimensional simplex S²: nonnegative
/// coordinates summing to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimplexPoint {
    x1: f64,
    x2: f64,
    x3: f64,
}

impl SimplexPoint {
    /// Validates against the default tolerance [`EPS_SIMPLEX`].
    pub fn new(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        Self::with_tolerance(x1, x2, x3, EPS_SIMPLEX)
    }

    /// Validates coordinates: each `x_i >= -eps` and `|x1 + x2 + x3 - 1| <= eps`.
    pub fn with_tolerance(x1: f64, x2: f64, x3: f64, eps: f64) -> Result<Self> {
        for (name, v) in [("x1", x1), ("x2", x2), ("x3", x3)] {
            if !v.is_finite() {
                return Err(Error::InvalidPoint(format!("{name} = {v} is not finite")));
            }
            if v < -eps {
                return Err(Error::InvalidPoint(format!(
                    "{name} = {v} is below the tolerance -{eps}"
                )));
            }
        }
        let sum = x1 + x2 + x3;
        if (sum - 1.0).abs() > eps {
            return Err(Error::InvalidPoint(format!(
                "coordinates sum to {sum}, expected 1 within {eps}"
            )));
        }
        Ok(Self { x1, x2, x3 })
    }

    /// Divides by the coordinate sum before validating. This is never done
    /// implicitly; callers must opt in (the CLI exposes it as a flag).
    pub fn renormalized(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        let sum = x1 + x2 + x3;
        if !sum.is_finite() || sum <= 0.0 {
            return Err(Error::InvalidPoint(format!(
                "cannot renormalize: coordinate sum is {sum}"
            )));
        }
        Self::new(x1 / sum, x2 / sum, x3 / sum)
    }

    /// Constructor for values produced by the operators themselves, which
    /// stay on the simplex up to rounding.
    pub(crate) fn new_unchecked(x1: f64, x2: f64, x3: f64) -> Self {
        Self { x1, x2, x3 }
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn x2(&self) -> f64 {
        self.x2
    }

    pub fn x3(&self) -> f64 {
        self.x3
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn sum(&self) -> f64 {
        self.x1 + self.x2 + self.x3
    }

    /// Sup-norm distance to another point.
    pub fn sup_distance(&self, other: &SimplexPoint) -> f64 {
        (self.x1 - other.x1)
            .abs()
            .max((self.x2 - other.x2).abs())
            .max((self.x3 - other.x3).abs())
    }
}

impl std::fmt::Display for SimplexPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.x1, self.x2, self.x3)
    }
}
