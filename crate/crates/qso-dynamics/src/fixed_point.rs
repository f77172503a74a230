//! Fixed points of the family operator on S².
//!
//! The solver reduces the fixed-point system to one scalar equation in x3.
//! Solving the first two fixed-point equations for x2 and x1 (with the other
//! coordinate eliminated through the simplex identity) gives branch functions
//! x2(x3), x1(x3); a fixed point is a root of
//!
//! ```text
//! r(x3) = x1(x3) + x2(x3) + x3 - 1
//! ```
//!
//! on the interval where both branches are nonnegative. For e < 1 this root
//! is unique; at e = 1 the vertex (0, 0, 1) appears as a second fixed point
//! and is returned separately rather than chased through the tangency.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{residual, FamilyParams};
use crate::simplex::SimplexPoint;

/// Default tolerance on the fixed-point residual max|V(x) - x|.
pub const DEFAULT_TOL_FP: f64 = 1e-10;

/// Threshold on |e - 1| below which the double-fixed-point path is taken.
pub const E1_EPS: f64 = 1e-12;

/// Which solver path produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverCase {
    Case1General,
    Case2AlphaOnly,
    Case3AOnly,
    Case4ClosedForm,
    E1Double,
}

/// Fixed points with their residuals. `points` has length 2 exactly when
/// e = 1, in which case the second entry is the vertex (0, 0, 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPointReport {
    pub points: Vec<SimplexPoint>,
    pub residuals: Vec<f64>,
    pub solver_case: SolverCase,
}

/// Right endpoint of the interval on which `1 - x - coef x² >= 0`, written
/// as `2 / (1 + sqrt(1 + 4 coef))`. This form is exact at `coef = 0` (value
/// 1), so the degenerate case needs no special handling.
pub fn branch_upper(coef: f64) -> f64 {
    2.0 / (1.0 + (1.0 + 4.0 * coef).sqrt())
}

/// Upper end of the admissible x3 interval: the intersection of the two
/// branch domains.
pub fn admissible_upper(p: &FamilyParams) -> f64 {
    branch_upper(p.c()).min(branch_upper(p.d()))
}

/// Nonnegative branch solving `weight·y² + (2x + 1)·y - (1 - x - coef·x²) = 0`
/// for y, written in the rationalized form
///
/// ```text
/// y = 2 (1 - x - coef x²) / (sqrt((2x+1)² + 4 weight (1 - x - coef x²)) + 2x + 1)
/// ```
///
/// which is stable for all weights including 0 (where it reduces to the
/// rational form (1 - x - coef x²)/(2x + 1)); the textbook quadratic-formula
/// branch cancels catastrophically as the weight shrinks.
fn branch_value(weight: f64, coef: f64, x: f64) -> f64 {
    let n = 1.0 - x - coef * x * x;
    let lin = 2.0 * x + 1.0;
    let h = lin * lin + 4.0 * weight * n;
    2.0 * n / (h.sqrt() + lin)
}

fn branch_derivative(weight: f64, coef: f64, x: f64) -> f64 {
    let n = 1.0 - x - coef * x * x;
    let np = -1.0 - 2.0 * coef * x;
    let lin = 2.0 * x + 1.0;
    let h = lin * lin + 4.0 * weight * n;
    let sh = h.sqrt();
    let hp = 4.0 * lin + 4.0 * weight * np;
    let den = sh + lin;
    2.0 * (np * den - n * (hp / (2.0 * sh) + 2.0)) / (den * den)
}

fn check_domain(x3: f64, upper: f64) -> Result<()> {
    if x3 < -1e-12 || x3 > upper + 1e-12 {
        return Err(Error::DomainViolation { x3, upper });
    }
    Ok(())
}

/// x2 as a function of x3 from the first fixed-point equation.
pub fn x2_of_x3(p: &FamilyParams, x3: f64) -> Result<f64> {
    check_domain(x3, branch_upper(p.c()))?;
    Ok(branch_value(p.alpha(), p.c(), x3))
}

/// x1 as a function of x3 from the second fixed-point equation.
pub fn x1_of_x3(p: &FamilyParams, x3: f64) -> Result<f64> {
    check_domain(x3, branch_upper(p.d()))?;
    Ok(branch_value(p.a(), p.d(), x3))
}

/// The scalar residual r(x3) = x1(x3) + x2(x3) + x3 - 1 whose root on the
/// admissible interval is the fixed point's third coordinate.
pub fn scalar_residual(p: &FamilyParams, x3: f64) -> Result<f64> {
    check_domain(x3, admissible_upper(p))?;
    Ok(residual_unchecked(p, x3))
}

fn residual_unchecked(p: &FamilyParams, x3: f64) -> f64 {
    branch_value(p.a(), p.d(), x3) + branch_value(p.alpha(), p.c(), x3) + x3 - 1.0
}

fn residual_derivative(p: &FamilyParams, x3: f64) -> f64 {
    branch_derivative(p.a(), p.d(), x3) + branch_derivative(p.alpha(), p.c(), x3) + 1.0
}

/// The scalar function f whose intersection with the diagonal locates the
/// fixed point when both α ≠ 0 and a ≠ 0:
///
/// ```text
/// f(x) = (α sqrt(g(x)) + a sqrt(h(x)) - α - a - 2αa) / (2 (α + a - αa))
/// g(x) = 4(1 - ad) x² + 4(1 - a) x + 1 + 4a
/// h(x) = 4(1 - αc) x² + 4(1 - α) x + 1 + 4α
/// ```
///
/// Increasing and convex on the admissible interval, with f(0) > 0 and
/// f(1) ≤ 1 (equality exactly when e = 1). f(x) - x is a positive multiple
/// of [`scalar_residual`], so both locate the same root.
pub fn reduced_f(p: &FamilyParams, x: f64) -> Result<f64> {
    if p.alpha() == 0.0 || p.a() == 0.0 {
        return Err(Error::RegimeMismatch { required: "alpha != 0 and a != 0" });
    }
    check_domain(x, admissible_upper(p))?;
    let (a, al, c, d) = (p.a(), p.alpha(), p.c(), p.d());
    let g = 4.0 * (1.0 - a * d) * x * x + 4.0 * (1.0 - a) * x + 1.0 + 4.0 * a;
    let h = 4.0 * (1.0 - al * c) * x * x + 4.0 * (1.0 - al) * x + 1.0 + 4.0 * al;
    Ok((al * g.sqrt() + a * h.sqrt() - al - a - 2.0 * al * a) / (2.0 * (al + a - al * a)))
}

/// The two branches F±(x) of the mixed fixed-point relation in the a = 0,
/// α ≠ 0 regime. Returns `None` where the inner radical is negative (below
/// the branch point). Kept as a cross-check and figure evaluator only; the
/// solver does not use these forms, which lose precision as α → 0.
pub fn f_plus_minus(p: &FamilyParams, x: f64) -> Result<Option<(f64, f64)>> {
    if p.a() != 0.0 || p.alpha() == 0.0 {
        return Err(Error::RegimeMismatch { required: "a = 0 and alpha != 0" });
    }
    if !(-1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(Error::DomainViolation { x3: x, upper: 1.0 });
    }
    let (al, c, d) = (p.alpha(), p.c(), p.d());
    let h = 4.0 * (1.0 - al * c) * x * x + 4.0 * (1.0 - al) * x + 1.0 + 4.0 * al;
    let sh = h.sqrt();
    let w = 1.0 - sh + 2.0 * x;
    let q = 2.0 * al * (2.0 - d) * w + (w + 2.0 * al) * (w + 2.0 * al);
    if q < 0.0 {
        return Ok(None);
    }
    let den = 2.0 * al * (2.0 - d);
    let base = 1.0 + 2.0 * al + 2.0 * x - sh;
    Ok(Some(((base + q.sqrt()) / den, (base - q.sqrt()) / den)))
}

/// Third coordinate of the a = α = 0 fixed point, `(3 - sqrt(5 - 4e)) / (2(1 + e))`.
pub fn x3_star(e: f64) -> f64 {
    (3.0 - (5.0 - 4.0 * e).sqrt()) / (2.0 * (1.0 + e))
}

/// Closed-form fixed point for the a = α = 0 case, e ∈ [0, 1):
///
/// ```text
/// x3* = (3 - sqrt(5 - 4e)) / (2 (1 + e))
/// x1* = (3 x3* - 1)(c + 2 d x3*) / (5 + e - 12 x3*)
/// x2* = 1 - x1* - x3*
/// ```
///
/// The denominator 5 + e - 12 x3* tends to 0 as e → 1, so it is evaluated in
/// the cancellation-free form `(u² - 8u + 24u/(1 + sqrt(1 + 4u))) / (1 + e)`
/// with u = 1 - e.
pub fn closed_form_fixed_point(d: f64, e: f64) -> Result<SimplexPoint> {
    if !(0.0..1.0).contains(&e) {
        return Err(Error::OutOfRange { name: "e", value: e, range: "[0, 1)" });
    }
    if d < 0.0 || d > 1.0 - e + 1e-12 {
        return Err(Error::OutOfRange { name: "d", value: d, range: "[0, 1 - e]" });
    }
    let c = 1.0 - d - e;
    let x3 = x3_star(e);
    let u = 1.0 - e;
    let den = (u * u - 8.0 * u + 24.0 * u / (1.0 + (1.0 + 4.0 * u).sqrt())) / (1.0 + e);
    let x1 = (3.0 * x3 - 1.0) * (c + 2.0 * d * x3) / den;
    Ok(SimplexPoint::new_unchecked(x1, 1.0 - x1 - x3, x3))
}

/// Bracketed bisection on the scalar residual over [0, hi], followed by a
/// short Newton polish with the analytic derivative. The bracket comes from
/// the first sign change of a coarse scan (r(0) > 0 always).
fn solve_scalar(p: &FamilyParams, hi: f64) -> Result<f64> {
    const GRID: usize = 4096;
    let mut prev_x = 0.0;
    let mut prev_r = residual_unchecked(p, 0.0);
    if prev_r == 0.0 {
        return Ok(0.0);
    }
    let mut bracket = None;
    for i in 1..=GRID {
        let x = hi * i as f64 / GRID as f64;
        let rx = residual_unchecked(p, x);
        if rx == 0.0 {
            return Ok(x);
        }
        if prev_r > 0.0 && rx < 0.0 {
            bracket = Some((prev_x, x));
            break;
        }
        prev_x = x;
        prev_r = rx;
    }
    let (mut lo, mut hi_b) = bracket.ok_or(Error::NoRootBracketed { upper: hi })?;
    for _ in 0..200 {
        if hi_b - lo <= 1e-14 {
            break;
        }
        let mid = 0.5 * (lo + hi_b);
        let rm = residual_unchecked(p, mid);
        if rm > 0.0 {
            lo = mid;
        } else {
            hi_b = mid;
        }
    }
    let mut x = 0.5 * (lo + hi_b);
    for _ in 0..3 {
        let rv = residual_unchecked(p, x);
        let rd = residual_derivative(p, x);
        if rd != 0.0 && rd.is_finite() {
            x = (x - rv / rd).clamp(lo, hi_b);
        }
    }
    Ok(x)
}

fn point_from_x3(p: &FamilyParams, x3: f64) -> SimplexPoint {
    let x1 = branch_value(p.a(), p.d(), x3);
    let x2 = branch_value(p.alpha(), p.c(), x3);
    SimplexPoint::new_unchecked(x1, x2, x3)
}

/// Locates all fixed points of the operator on S².
///
/// Case dispatch: for α ≠ 0, a ≠ 0 the root of f(x) - x is isolated by
/// bisection (run on the proportional residual r, which brackets and signs
/// identically but stays conditioned for small parameters); the mixed cases
/// bisect r directly; for α = a = 0 the closed form is used. When
/// |e - 1| ≤ [`E1_EPS`] the vertex (0, 0, 1) is appended as the second fixed
/// point, and the interior root is bracketed away from the tangency at the
/// right endpoint.
pub fn find_fixed_points(p: &FamilyParams, tol_fp: f64) -> Result<FixedPointReport> {
    if tol_fp.is_nan() || tol_fp <= 0.0 {
        return Err(Error::OutOfRange { name: "tol_fp", value: tol_fp, range: "(0, inf)" });
    }
    let e = p.e();
    let upper = admissible_upper(p);
    let (points, solver_case) = if (e - 1.0).abs() <= E1_EPS {
        let interior = if p.alpha() == 0.0 && p.a() == 0.0 {
            SimplexPoint::new_unchecked(0.25, 0.25, 0.5)
        } else {
            point_from_x3(p, solve_scalar(p, upper * (1.0 - 1e-9))?)
        };
        let vertex = SimplexPoint::new_unchecked(0.0, 0.0, 1.0);
        (vec![interior, vertex], SolverCase::E1Double)
    } else {
        match (p.alpha() != 0.0, p.a() != 0.0) {
            (true, true) => (vec![point_from_x3(p, solve_scalar(p, upper)?)], SolverCase::Case1General),
            (true, false) => (vec![point_from_x3(p, solve_scalar(p, upper)?)], SolverCase::Case2AlphaOnly),
            (false, true) => (vec![point_from_x3(p, solve_scalar(p, upper)?)], SolverCase::Case3AOnly),
            (false, false) => (vec![closed_form_fixed_point(p.d(), e)?], SolverCase::Case4ClosedForm),
        }
    };
    let residuals: Vec<f64> = points.iter().map(|x| residual(p, x)).collect();
    for &r in &residuals {
        if r > tol_fp {
            return Err(Error::ToleranceNotReached { residual: r, tol: tol_fp });
        }
    }
    Ok(FixedPointReport { points, residuals, solver_case })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::make_params;

    fn params(a: f64, alpha: f64, c: f64, d: f64) -> FamilyParams {
        make_params(a, alpha, Some(c), Some(d), None).unwrap()
    }

    #[test]
    fn branch_matches_quadratic_formula_branch() {
        // rationalized form vs the textbook branch (-(2x+1) + sqrt(h)) / (2w)
        for &w in &[0.3, 0.7, 1.0] {
            for &coef in &[0.0, 0.5, 1.0] {
                let upper = branch_upper(coef);
                for i in 0..=50 {
                    let x = upper * i as f64 / 50.0;
                    let n = 1.0 - x - coef * x * x;
                    let h = (2.0 * x + 1.0) * (2.0 * x + 1.0) + 4.0 * w * n;
                    let textbook = (-(2.0 * x + 1.0) + h.sqrt()) / (2.0 * w);
                    assert!((branch_value(w, coef, x) - textbook).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn branch_derivative_matches_finite_differences() {
        let hstep = 1e-6;
        for &(w, coef) in &[(0.4, 0.2), (0.0, 0.7), (1.0, 1.0)] {
            for i in 1..10 {
                let x = 0.08 * i as f64;
                if x + hstep > branch_upper(coef) {
                    continue;
                }
                let fd = (branch_value(w, coef, x + hstep) - branch_value(w, coef, x - hstep))
                    / (2.0 * hstep);
                assert!((branch_derivative(w, coef, x) - fd).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn x2_branch_at_origin_is_golden_section() {
        // alpha = 1, c = 0, x3 = 0: x2 solves x2² + x2 - 1 = 0
        let p = params(0.5, 1.0, 0.0, 0.5);
        let x2 = x2_of_x3(&p, 0.0).unwrap();
        assert!((x2 - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
        assert!((x2 * x2 + x2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rational_branch_endpoints() {
        // a = 0, d = 0: x1(1) = 0
        let p = params(0.0, 0.5, 0.5, 0.0);
        assert_eq!(x1_of_x3(&p, 1.0).unwrap(), 0.0);

        // a = 0, d = 1: the right end of the domain is the root of 1 - x - x²
        let p = params(0.0, 0.5, 0.0, 1.0);
        let upper = branch_upper(1.0);
        // independent oracle: bisect 1 - x - x² on [0, 1]
        let f = |x: f64| 1.0 - x - x * x;
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..100 {
            let m = 0.5 * (lo + hi);
            if f(m) > 0.0 {
                lo = m;
            } else {
                hi = m;
            }
        }
        assert!((upper - 0.5 * (lo + hi)).abs() < 1e-12);
        assert!(x1_of_x3(&p, upper).unwrap().abs() < 1e-15);
    }

    #[test]
    fn domain_violation_reported() {
        let p = params(0.5, 0.5, 1.0, 0.0);
        // branch_upper(1) ≈ 0.618, so x3 = 0.9 is outside
        assert!(matches!(x2_of_x3(&p, 0.9), Err(Error::DomainViolation { .. })));
        assert!(matches!(scalar_residual(&p, -0.5), Err(Error::DomainViolation { .. })));
    }

    #[test]
    fn reduced_f_requires_case_one() {
        let p = params(0.0, 0.5, 0.3, 0.3);
        assert!(matches!(reduced_f(&p, 0.5), Err(Error::RegimeMismatch { .. })));
    }

    #[test]
    fn reduced_f_at_zero_and_one() {
        // c = d = 0 (e = 1): f(1) = 1
        let p = params(0.5, 0.5, 0.0, 0.0);
        assert!((reduced_f(&p, 1.0).unwrap() - 1.0).abs() < 1e-15);
        // frozen value for alpha = a = 1/2: f(0) = (sqrt(3) - 3/2) / (3/2)
        let f0 = reduced_f(&p, 0.0).unwrap();
        assert!(f0 > 0.0);
        assert!((f0 - (3f64.sqrt() - 1.5) / 1.5).abs() < 1e-15);
    }

    #[test]
    fn reduced_f_minus_x_is_positive_multiple_of_residual() {
        let p = params(0.6, 0.35, 0.4, 0.25);
        let scale = (p.alpha() + p.a() - p.alpha() * p.a()) / (p.a() * p.alpha());
        let upper = admissible_upper(&p);
        for i in 0..=100 {
            let x = upper * i as f64 / 100.0;
            let lhs = (reduced_f(&p, x).unwrap() - x) * scale;
            let rhs = scalar_residual(&p, x).unwrap();
            assert!((lhs - rhs).abs() < 1e-12, "x = {x}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn worked_example_fixed_point() {
        let p = params(1.0, 0.375, 0.625, 0.0);
        let report = find_fixed_points(&p, DEFAULT_TOL_FP).unwrap();
        assert_eq!(report.solver_case, SolverCase::Case1General);
        assert_eq!(report.points.len(), 1);
        let third = 1.0 / 3.0;
        let x = &report.points[0];
        assert!((x.x1() - third).abs() < 1e-12);
        assert!((x.x2() - third).abs() < 1e-12);
        assert!((x.x3() - third).abs() < 1e-12);
        assert!(report.residuals[0] < 1e-12);
    }

    #[test]
    fn double_fixed_point_at_e_one() {
        let p = params(0.0, 0.0, 0.0, 0.0);
        let report = find_fixed_points(&p, DEFAULT_TOL_FP).unwrap();
        assert_eq!(report.solver_case, SolverCase::E1Double);
        assert_eq!(report.points.len(), 2);
        assert_eq!(report.points[0].coords(), [0.25, 0.25, 0.5]);
        assert_eq!(report.points[1].coords(), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn double_fixed_point_at_e_one_general_weights() {
        let p = params(0.7, 0.3, 0.0, 0.0);
        let report = find_fixed_points(&p, DEFAULT_TOL_FP).unwrap();
        assert_eq!(report.solver_case, SolverCase::E1Double);
        assert_eq!(report.points.len(), 2);
        assert_eq!(report.points[1].coords(), [0.0, 0.0, 1.0]);
        assert!(report.points[0].x3() < 1.0 - 1e-3);
        assert!(report.residuals[0] < 1e-12);
    }

    #[test]
    fn closed_form_case_values() {
        // e = 0, c = d = 1/2
        let p = params(0.0, 0.0, 0.5, 0.5);
        let report = find_fixed_points(&p, DEFAULT_TOL_FP).unwrap();
        assert_eq!(report.solver_case, SolverCase::Case4ClosedForm);
        let x = &report.points[0];
        assert!((x.x3() - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-14);
        assert!(report.residuals[0] < 1e-12);

        // e = 1/4: x3* = 2/5
        let pt = closed_form_fixed_point(0.3, 0.25).unwrap();
        assert!((pt.x3() - 0.4).abs() < 1e-15);

        // e -> 1: x3* -> 1/2 and the point stays finite and accurate
        let pt = closed_form_fixed_point(0.0, 1.0 - 1e-9).unwrap();
        assert!((pt.x3() - 0.5).abs() < 1e-9);
        let p = make_params(0.0, 0.0, None, Some(0.0), Some(1.0 - 1e-9)).unwrap();
        assert!(residual(&p, &pt) < 1e-12);
    }

    #[test]
    fn closed_form_intermediate_expression() {
        // e = 0, c = 1, d = 0: x1* = (3 x3* - 1) / (5 - 12 x3*), see the
        // exact value (1 + 3 sqrt(5)) / 22
        let pt = closed_form_fixed_point(0.0, 0.0).unwrap();
        assert!((pt.x1() - (1.0 + 3.0 * 5f64.sqrt()) / 22.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_rejects_out_of_range() {
        assert!(matches!(
            closed_form_fixed_point(0.0, 1.0),
            Err(Error::OutOfRange { name: "e", .. })
        ));
        assert!(matches!(
            closed_form_fixed_point(0.9, 0.5),
            Err(Error::OutOfRange { name: "d", .. })
        ));
    }

    #[test]
    fn mixed_case_solver_roots() {
        // alpha != 0, a = 0
        let p = params(0.0, 0.8, 0.4, 0.3);
        let report = find_fixed_points(&p, DEFAULT_TOL_FP).unwrap();
        assert_eq!(report.solver_case, SolverCase::Case2AlphaOnly);
        assert!(report.residuals[0] < 1e-12);
        // alpha = 0, a != 0
        let p = params(0.8, 0.0, 0.4, 0.3);
        let report = find_fixed_points(&p, DEFAULT_TOL_FP).unwrap();
        assert_eq!(report.solver_case, SolverCase::Case3AOnly);
        assert!(report.residuals[0] < 1e-12);
    }

    #[test]
    fn tiny_alpha_stays_accurate() {
        // the regime that breaks the textbook branch
        let p = params(0.0, 1e-4, 0.0, 0.82); // e = 0.18
        let report = find_fixed_points(&p, DEFAULT_TOL_FP).unwrap();
        assert!(report.residuals[0] < 1e-13);
        let p = params(1e-8, 1e-8, 0.5, 0.3);
        let report = find_fixed_points(&p, DEFAULT_TOL_FP).unwrap();
        assert!(report.residuals[0] < 1e-12);
    }

    #[test]
    fn f_plus_minus_regime_and_tangency() {
        let p = params(0.5, 0.5, 0.3, 0.3);
        assert!(matches!(f_plus_minus(&p, 0.5), Err(Error::RegimeMismatch { .. })));
        // e = 1, a = 0, alpha = 1e-4: F+(1) = 1 exactly
        let p = params(0.0, 1e-4, 0.0, 0.0);
        let (fp, fm) = f_plus_minus(&p, 1.0).unwrap().unwrap();
        assert!((fp - 1.0).abs() < 1e-9);
        assert!(fm.abs() < 1e-9);
    }
}
