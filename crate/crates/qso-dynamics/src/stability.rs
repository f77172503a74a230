//! Linearization of the planar restriction at a fixed point and the
//! classification of the fixed point's type.
//!
//! At a fixed point x* the Jacobian spectrum factors as
//! λ₁,₂ = e·x3* - 1 ± sqrt(D), where D is a quarter-discriminant with a
//! closed form in the parameters (see [`discriminant_value`]). Eigenvalues
//! are computed both from the Jacobian and from the D form and
//! cross-asserted; the Jacobian is ground truth.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{residual, FamilyParams};
use crate::simplex::SimplexPoint;

/// Half-width of the band around each classification threshold inside which
/// the verdict is `Nonhyperbolic`: floating point cannot certify the exact
/// equality cases.
pub const DEFAULT_EPS_HYP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityClass {
    Repelling,
    Attracting,
    Saddle,
    Nonhyperbolic,
}

/// Classification outcome at a point. `eigenvalues` holds [re, im] pairs
/// ordered by ascending modulus (ties: positive imaginary part, then larger
/// real part, first). `table_row` is the 1-based row of the ten-case
/// threshold table, absent when classification was forced at a non-fixed
/// point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub jacobian: [[f64; 2]; 2],
    #[serde(rename = "D")]
    pub discriminant: f64,
    pub eigenvalues: [[f64; 2]; 2],
    pub moduli: [f64; 2],
    pub class: StabilityClass,
    pub table_row: Option<u8>,
}

/// Jacobian of the planar restriction (x3 eliminated) at `x`:
///
/// ```text
/// [ -2c x3 - 2 x2              2(α - 1) x2 + 2(1 - c) x3 ]
/// [ 2(a - 1) x1 + 2(1 - d) x3  -2d x3 - 2 x1             ]
/// ```
///
/// with x3 = 1 - x1 - x2. Valid at any point of S², not only fixed points.
pub fn jacobian_at(p: &FamilyParams, x: &SimplexPoint) -> [[f64; 2]; 2] {
    let (x1, x2) = (x.x1(), x.x2());
    let x3 = 1.0 - x1 - x2;
    [
        [
            -2.0 * p.c() * x3 - 2.0 * x2,
            2.0 * (p.alpha() - 1.0) * x2 + 2.0 * (1.0 - p.c()) * x3,
        ],
        [
            2.0 * (p.a() - 1.0) * x1 + 2.0 * (1.0 - p.d()) * x3,
            -2.0 * p.d() * x3 - 2.0 * x1,
        ],
    ]
}

fn sort_pair(a: Complex64, b: Complex64) -> [Complex64; 2] {
    let key = |z: &Complex64| (z.norm(), -z.im, -z.re);
    let (ka, kb) = (key(&a), key(&b));
    if ka <= kb {
        [a, b]
    } else {
        [b, a]
    }
}

/// Eigenvalues of a real 2×2 matrix, ordered by ascending modulus.
pub fn eigenvalues(j: &[[f64; 2]; 2]) -> [Complex64; 2] {
    let tr = j[0][0] + j[1][1];
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let quarter_disc = tr * tr / 4.0 - det;
    if quarter_disc >= 0.0 {
        let s = quarter_disc.sqrt();
        sort_pair(
            Complex64::new(tr / 2.0 + s, 0.0),
            Complex64::new(tr / 2.0 - s, 0.0),
        )
    } else {
        let s = (-quarter_disc).sqrt();
        sort_pair(Complex64::new(tr / 2.0, s), Complex64::new(tr / 2.0, -s))
    }
}

/// Eigenvalues in the factored form e·x3 - 1 ± sqrt(D).
pub fn eigenvalues_from_discriminant(ex3: f64, d: f64) -> [Complex64; 2] {
    let base = ex3 - 1.0;
    if d >= 0.0 {
        sort_pair(
            Complex64::new(base + d.sqrt(), 0.0),
            Complex64::new(base - d.sqrt(), 0.0),
        )
    } else {
        let s = (-d).sqrt();
        sort_pair(Complex64::new(base, s), Complex64::new(base, -s))
    }
}

/// The discriminant
///
/// ```text
/// D = (e x3 - 1)² + 4 e x3²
///   + 4 [ (bβ - 1) x1 x2 + (a(1 - c) - 1) x1 x3 + (α(1 - d) - 1) x2 x3 ]
/// ```
///
/// evaluated at `x`. Its identity with the Jacobian quarter-discriminant
/// holds at fixed points only.
pub fn discriminant_value(p: &FamilyParams, x: &SimplexPoint) -> f64 {
    let (x1, x2, x3) = (x.x1(), x.x2(), x.x3());
    let (a, al, c, d, e) = (p.a(), p.alpha(), p.c(), p.d(), p.e());
    let (b, be) = (p.b(), p.beta());
    (e * x3 - 1.0) * (e * x3 - 1.0)
        + 4.0 * e * x3 * x3
        + 4.0
            * ((b * be - 1.0) * x1 * x2
                + (a * (1.0 - c) - 1.0) * x1 * x3
                + (al * (1.0 - d) - 1.0) * x2 * x3)
}

/// [`discriminant_value`] gated on `xstar` actually being a fixed point.
pub fn discriminant(p: &FamilyParams, xstar: &SimplexPoint, tol_fp: f64) -> Result<f64> {
    let res = residual(p, xstar);
    if res > tol_fp {
        return Err(Error::NotAFixedPoint { residual: res, tol: tol_fp });
    }
    Ok(discriminant_value(p, xstar))
}

fn class_from_moduli(moduli: [f64; 2], eps_hyp: f64) -> StabilityClass {
    if moduli.iter().any(|m| (m - 1.0).abs() <= eps_hyp) {
        StabilityClass::Nonhyperbolic
    } else if moduli.iter().all(|&m| m < 1.0) {
        StabilityClass::Attracting
    } else if moduli.iter().all(|&m| m > 1.0) {
        StabilityClass::Repelling
    } else {
        StabilityClass::Saddle
    }
}

/// Selects the 1-based row of the ten-case table:
///
/// ```text
///  1. D < -1 + (1 - ex3)²              repelling
///  2. D = -1 + (1 - ex3)²              nonhyperbolic
///  3. -1 + (1 - ex3)² < D < 0          attracting
///  4. D = 0, ex3 = 0                   nonhyperbolic
///  5. D = 0, ex3 > 0                   attracting
///  6. 0 < D < e²x3²                    attracting
///  7. D = e²x3²                        nonhyperbolic
///  8. e²x3² < D < (2 - ex3)²           saddle
///  9. D = (2 - ex3)²                   nonhyperbolic
/// 10. (2 - ex3)² < D                   repelling
/// ```
///
/// The class itself comes from the eigenvalue moduli; the row is chosen to
/// agree with it (for a nonhyperbolic verdict, the nearest equality row).
fn table_row(class: StabilityClass, d: f64, ex3: f64, eps_hyp: f64) -> u8 {
    let t1 = -1.0 + (1.0 - ex3) * (1.0 - ex3);
    let t3 = ex3 * ex3;
    let t4 = (2.0 - ex3) * (2.0 - ex3);
    if class == StabilityClass::Nonhyperbolic {
        let mut cands = vec![(2u8, (d - t1).abs()), (7, (d - t3).abs()), (9, (d - t4).abs())];
        if ex3 <= eps_hyp {
            cands.push((4, d.abs()));
        }
        cands
            .into_iter()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(row, _)| row)
            .unwrap()
    } else if d < t1 {
        1
    } else if d < 0.0 {
        3
    } else if d == 0.0 {
        5
    } else if d < t3 {
        6
    } else if d < t4 {
        8
    } else {
        10
    }
}

fn build_report(
    p: &FamilyParams,
    x: &SimplexPoint,
    eps_hyp: f64,
    with_row: bool,
) -> Result<StabilityReport> {
    let j = jacobian_at(p, x);
    let ev = eigenvalues(&j);
    let d = discriminant_value(p, x);
    if with_row {
        let evd = eigenvalues_from_discriminant(p.e() * x.x3(), d);
        for (a, b) in ev.iter().zip(evd.iter()) {
            if (a - b).norm() > 1e-9 {
                return Err(Error::Internal(format!(
                    "Jacobian spectrum {:?} disagrees with the discriminant form {:?}",
                    ev, evd
                )));
            }
        }
    }
    let moduli = [ev[0].norm(), ev[1].norm()];
    let class = class_from_moduli(moduli, eps_hyp);
    let row = with_row.then(|| table_row(class, d, p.e() * x.x3(), eps_hyp));
    Ok(StabilityReport {
        jacobian: j,
        discriminant: d,
        eigenvalues: [[ev[0].re, ev[0].im], [ev[1].re, ev[1].im]],
        moduli,
        class,
        table_row: row,
    })
}

/// Classifies a fixed point. Errors with `NotAFixedPoint` when the residual
/// of `xstar` exceeds `tol_fp`; use [`classify_forced`] to inspect the
/// moduli at an arbitrary point.
pub fn classify(
    p: &FamilyParams,
    xstar: &SimplexPoint,
    eps_hyp: f64,
    tol_fp: f64,
) -> Result<StabilityReport> {
    let res = residual(p, xstar);
    if res > tol_fp {
        return Err(Error::NotAFixedPoint { residual: res, tol: tol_fp });
    }
    build_report(p, xstar, eps_hyp, true)
}

/// Classification by eigenvalue moduli at an arbitrary point; no table row
/// is reported since the table presumes a fixed point.
pub fn classify_forced(p: &FamilyParams, x: &SimplexPoint, eps_hyp: f64) -> StabilityReport {
    build_report(p, x, eps_hyp, false).expect("forced classification has no failure path")
}
