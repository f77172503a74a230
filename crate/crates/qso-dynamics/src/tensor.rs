//! General m = 3 quadratic stochastic operator: heredity tensor validation,
//! application, and Volterra-type classification.

// index loops mirror the i, j, k notation of the coefficient constraints
#![allow(clippy::needless_range_loop)]

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplex::SimplexPoint;

/// Tolerance for tensor validation (row sums and symmetry).
pub const EPS_COEFF: f64 = 1e-12;

/// Raw 3×3×3 coefficient array, indexed `[i][j][k]`, 0-based internally.
pub type RawTensor = [[[f64; 3]; 3]; 3];

/// Validated heredity tensor: entries are nonnegative, symmetric in (i, j),
/// and every row (i, j) sums to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QsoTensor {
    p: RawTensor,
}

/// Volterra-type classification of a heredity tensor.
///
/// `QuasiStrictlyNonVolterra` means coordinates 1 and 2 obey the strictly
/// non-Volterra zero pattern (`p[i][j][k] = 0` whenever k ∈ {i, j}) while
/// coordinate 3 violates it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorClass {
    Volterra,
    StrictlyNonVolterra,
    QuasiStrictlyNonVolterra,
    Other,
}

/// Validates a raw coefficient array into a [`QsoTensor`].
///
/// Symmetry is enforced by averaging the two halves, but only when they
/// already agree within [`EPS_COEFF`]; a larger gap is an error, not a fix.
pub fn validate_tensor(raw: &RawTensor) -> Result<QsoTensor> {
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let v = raw[i][j][k];
                if !v.is_finite() {
                    return Err(Error::NonFiniteCoefficient { i: i + 1, j: j + 1, k: k + 1, value: v });
                }
                if v < 0.0 {
                    return Err(Error::NegativeCoefficient { i: i + 1, j: j + 1, k: k + 1, value: v });
                }
            }
        }
    }
    let mut p = *raw;
    for i in 0..3 {
        for j in (i + 1)..3 {
            for k in 0..3 {
                let a = raw[i][j][k];
                let b = raw[j][i][k];
                if (a - b).abs() > EPS_COEFF {
                    return Err(Error::AsymmetricCoefficient {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                        value: a,
                        mirror: b,
                    });
                }
                let avg = 0.5 * (a + b);
                p[i][j][k] = avg;
                p[j][i][k] = avg;
            }
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            let sum: f64 = (0..3).map(|k| p[i][j][k]).sum();
            if (sum - 1.0).abs() > EPS_COEFF {
                return Err(Error::RowSumViolation { i: i + 1, j: j + 1, sum });
            }
        }
    }
    Ok(QsoTensor { p })
}

impl QsoTensor {
    /// Coefficient accessor with 1-based indices, matching how entries are
    /// reported elsewhere.
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.p[i - 1][j - 1][k - 1]
    }

    pub fn raw(&self) -> &RawTensor {
        &self.p
    }

    /// Parses the JSON file format `{"p": [[[...]]]}` (3×3×3 nested arrays,
    /// row-major in (i, j, k)) and validates the result.
    pub fn from_json_str(s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct File {
            p: RawTensor,
        }
        let file: File = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        validate_tensor(&file.p)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("tensor serialization cannot fail")
    }
}

/// Applies the operator: `(Vx)_k = Σ_{i,j} p[i][j][k] x_i x_j`.
///
/// Total on valid inputs; the output stays on the simplex up to rounding
/// accumulation.
pub fn apply_tensor(t: &QsoTensor, x: &SimplexPoint) -> SimplexPoint {
    let c = x.coords();
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                acc += t.p[i][j][k] * c[i] * c[j];
            }
        }
        *o = acc;
    }
    SimplexPoint::new_unchecked(out[0], out[1], out[2])
}

/// Whether coordinate `k` (0-based) satisfies the Volterra zero pattern:
/// p[i][j][k] = 0 whenever k ∉ {i, j}.
fn volterra_coordinate(p: &RawTensor, k: usize) -> bool {
    for i in 0..3 {
        for j in 0..3 {
            if k != i && k != j && p[i][j][k] != 0.0 {
                return false;
            }
        }
    }
    true
}

/// Whether coordinate `k` (0-based) satisfies the strictly non-Volterra zero
/// pattern: p[i][j][k] = 0 whenever k ∈ {i, j}.
fn strictly_non_volterra_coordinate(p: &RawTensor, k: usize) -> bool {
    for i in 0..3 {
        for j in 0..3 {
            if (k == i || k == j) && p[i][j][k] != 0.0 {
                return false;
            }
        }
    }
    true
}

/// Classifies the zero structure of a validated tensor.
pub fn classify_operator(t: &QsoTensor) -> OperatorClass {
    let p = &t.p;
    if (0..3).all(|k| volterra_coordinate(p, k)) {
        return OperatorClass::Volterra;
    }
    let snv1 = strictly_non_volterra_coordinate(p, 0);
    let snv2 = strictly_non_volterra_coordinate(p, 1);
    let snv3 = strictly_non_volterra_coordinate(p, 2);
    if snv1 && snv2 && snv3 {
        return OperatorClass::StrictlyNonVolterra;
    }
    if snv1 && snv2 && !snv3 {
        return OperatorClass::QuasiStrictlyNonVolterra;
    }
    OperatorClass::Other
}
