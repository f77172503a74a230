//! The four-parameter operator family
//!
//! ```text
//! x1' = α x2² + c x3² + 2 x2 x3
//! x2' = a x1² + d x3² + 2 x1 x3
//! x3' = b x1² + β x2² + e x3² + 2 x1 x2
//! ```
//!
//! with a + b = 1, α + β = 1, c + d + e = 1 and all parameters nonnegative.
//! Only (a, α, c, d) are stored; b, β and e are derived accessors so the
//! constraints cannot drift.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplex::SimplexPoint;
use crate::tensor::{validate_tensor, QsoTensor};

/// Tolerance on the constraint |c + d + e - 1| when `e` is given explicitly.
pub const EPS_PARAMS: f64 = 1e-12;

/// Validated family parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    a: f64,
    alpha: f64,
    c: f64,
    d: f64,
}

impl FamilyParams {
    /// See [`make_params`].
    pub fn new(a: f64, alpha: f64, c: f64, d: f64) -> Result<Self> {
        make_params(a, alpha, Some(c), Some(d), None)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn b(&self) -> f64 {
        1.0 - self.a
    }

    pub fn beta(&self) -> f64 {
        1.0 - self.alpha
    }

    pub fn e(&self) -> f64 {
        // validation admits c + d up to 1 + EPS_PARAMS; never hand out a
        // rounding-level negative
        (1.0 - self.c - self.d).max(0.0)
    }
}

/// Builds validated parameters. Exactly one of {c, d, e} may be omitted and
/// is inferred from c + d + e = 1; if all three are given the constraint is
/// verified to [`EPS_PARAMS`] rather than trusted.
pub fn make_params(
    a: f64,
    alpha: f64,
    c: Option<f64>,
    d: Option<f64>,
    e: Option<f64>,
) -> Result<FamilyParams> {
    for (name, v) in [("a", Some(a)), ("alpha", Some(alpha)), ("c", c), ("d", d), ("e", e)] {
        if let Some(v) = v {
            if !v.is_finite() {
                return Err(Error::OutOfRange { name: name_of(name), value: v, range: "finite reals" });
            }
        }
    }
    let (c, d) = match (c, d, e) {
        (Some(c), Some(d), None) => (c, d),
        (Some(c), Some(d), Some(e)) => {
            let sum = c + d + e;
            if (sum - 1.0).abs() > EPS_PARAMS {
                return Err(Error::ConstraintViolation(format!(
                    "c + d + e = {sum}, expected 1 (c = {c}, d = {d}, e = {e})"
                )));
            }
            (c, d)
        }
        (Some(c), None, Some(e)) => (c, clamp_rounding(1.0 - c - e)),
        (None, Some(d), Some(e)) => (clamp_rounding(1.0 - d - e), d),
        _ => {
            return Err(Error::ConstraintViolation(
                "at least two of {c, d, e} must be given".to_string(),
            ))
        }
    };
    for (name, v) in [("a", a), ("alpha", alpha), ("c", c), ("d", d)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::OutOfRange { name: name_of(name), value: v, range: "[0, 1]" });
        }
    }
    let e = 1.0 - c - d;
    if e < -EPS_PARAMS {
        return Err(Error::ConstraintViolation(format!(
            "c + d = {} exceeds 1, so e = {e} would be negative",
            c + d
        )));
    }
    Ok(FamilyParams { a, alpha, c, d })
}

/// An inferred parameter that misses zero by rounding is zero.
fn clamp_rounding(v: f64) -> f64 {
    if (-EPS_PARAMS..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

fn name_of(name: &str) -> &'static str {
    match name {
        "a" => "a",
        "alpha" => "alpha",
        "c" => "c",
        "d" => "d",
        _ => "e",
    }
}

/// Evaluates the three quadratic forms at `x`.
pub fn apply(p: &FamilyParams, x: &SimplexPoint) -> SimplexPoint {
    let (x1, x2, x3) = (x.x1(), x.x2(), x.x3());
    let y1 = p.alpha() * x2 * x2 + p.c() * x3 * x3 + 2.0 * x2 * x3;
    let y2 = p.a() * x1 * x1 + p.d() * x3 * x3 + 2.0 * x1 * x3;
    let y3 = p.b() * x1 * x1 + p.beta() * x2 * x2 + p.e() * x3 * x3 + 2.0 * x1 * x2;
    SimplexPoint::new_unchecked(y1, y2, y3)
}

/// Evaluates the first two quadratic forms and reconstructs the third
/// coordinate from the simplex identity.
///
/// Agrees with [`apply`] on the simplex to rounding, but is the right form
/// for long iteration: under [`apply`] the coordinate sum satisfies
/// sum' = sum², so any rounding drift in the sum compounds doubly
/// exponentially, while here the sum is pinned to one by construction.
pub fn apply_constrained(p: &FamilyParams, x: &SimplexPoint) -> SimplexPoint {
    let (x1, x2, x3) = (x.x1(), x.x2(), x.x3());
    let y1 = p.alpha() * x2 * x2 + p.c() * x3 * x3 + 2.0 * x2 * x3;
    let y2 = p.a() * x1 * x1 + p.d() * x3 * x3 + 2.0 * x1 * x3;
    SimplexPoint::new_unchecked(y1, y2, 1.0 - y1 - y2)
}

/// Max-norm fixed-point residual `max_k |V(x)_k - x_k|`.
pub fn residual(p: &FamilyParams, x: &SimplexPoint) -> f64 {
    apply(p, x).sup_distance(x)
}

/// Writes the family as a heredity tensor:
/// P_{22,1} = α, P_{33,1} = c, P_{23,1} = P_{32,1} = 1,
/// P_{11,2} = a, P_{33,2} = d, P_{13,2} = P_{31,2} = 1,
/// P_{11,3} = b, P_{22,3} = β, P_{33,3} = e, P_{12,3} = P_{21,3} = 1,
/// all other entries zero.
pub fn to_tensor(p: &FamilyParams) -> QsoTensor {
    let mut raw = [[[0.0; 3]; 3]; 3];
    raw[1][1][0] = p.alpha();
    raw[2][2][0] = p.c();
    raw[1][2][0] = 1.0;
    raw[2][1][0] = 1.0;
    raw[0][0][1] = p.a();
    raw[2][2][1] = p.d();
    raw[0][2][1] = 1.0;
    raw[2][0][1] = 1.0;
    raw[0][0][2] = p.b();
    raw[1][1][2] = p.beta();
    raw[2][2][2] = p.e();
    raw[0][1][2] = 1.0;
    raw[1][0][2] = 1.0;
    validate_tensor(&raw).expect("family tensor always satisfies the stochasticity constraints")
}

/// The scalar map φ(x) = (1 - x)² + e x² that drives the third coordinate
/// when a = α = 0.
pub fn phi(e: f64, x: f64) -> f64 {
    let r = 1.0 - x;
    r * r + e * x * x
}

/// φ'(x) = 2 (1 + e) x - 2.
pub fn phi_derivative(e: f64, x: f64) -> f64 {
    2.0 * (1.0 + e) * x - 2.0
}

/// φ as a value, for passing around one-dimensional dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarMapPhi {
    pub e: f64,
}

impl ScalarMapPhi {
    pub fn new(e: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&e) {
            return Err(Error::OutOfRange { name: "e", value: e, range: "[0, 1]" });
        }
        Ok(Self { e })
    }

    pub fn eval(&self, x: f64) -> f64 {
        phi(self.e, x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        phi_derivative(self.e, x)
    }

    /// n-fold composition φⁿ(x).
    pub fn iterate(&self, x: f64, n: usize) -> f64 {
        let mut y = x;
        for _ in 0..n {
            y = self.eval(y);
        }
        y
    }
}

/// The operator in planar coordinates, substituting x3 = 1 - x1 - x2:
///
/// ```text
/// x1' = c - 2c x1 + c x1² + 2(c-1) x1 x2 + 2(1-c) x2 + (α + c - 2) x2²
/// x2' = d - 2d x2 + d x2² + 2(d-1) x1 x2 + 2(1-d) x1 + (a + d - 2) x1²
/// ```
pub fn reduced_2d(p: &FamilyParams, x1: f64, x2: f64) -> (f64, f64) {
    let (a, alpha, c, d) = (p.a(), p.alpha(), p.c(), p.d());
    let y1 = c - 2.0 * c * x1 + c * x1 * x1 + 2.0 * (c - 1.0) * x1 * x2 + 2.0 * (1.0 - c) * x2
        + (alpha + c - 2.0) * x2 * x2;
    let y2 = d - 2.0 * d * x2 + d * x2 * x2 + 2.0 * (d - 1.0) * x1 * x2 + 2.0 * (1.0 - d) * x1
        + (a + d - 2.0) * x1 * x1;
    (y1, y2)
}

/// Parses a parameter value given either as a decimal (`0.625`) or as an
/// exact rational string (`5/8`), converted to the nearest double.
pub fn parse_value(s: &str) -> Result<f64> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
        let d: i64 = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
        if d == 0 {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(n as f64 / d as f64)
    } else {
        s.parse::<f64>()
            .map_err(|_| Error::Parse(format!("bad number {s:?}")))
    }
}
