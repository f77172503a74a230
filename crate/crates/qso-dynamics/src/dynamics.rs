//! Trajectories, ω-limit detection, periodic structure, and the logistic
//! conjugacy of the scalar third-coordinate map.
//!
//! Iteration uses [`apply_constrained`], which reconstructs the third
//! coordinate from the simplex identity each step; see that function for
//! why the raw quadratic form cannot be iterated in floating point.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{
    apply_constrained, make_params, phi, phi_derivative, residual, FamilyParams, ScalarMapPhi,
};
use crate::fixed_point::x3_star;
use crate::simplex::SimplexPoint;

/// Default sup-norm gap tolerance for orbit-limit detection.
pub const DEFAULT_TOL_ORBIT: f64 = 1e-9;

/// Default iteration budget for orbit-limit detection.
pub const DEFAULT_MAX_ITER: u64 = 1_000_000;

/// Consecutive iterations a gap criterion must hold before a verdict.
const CONFIRM_WINDOW: u64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitVerdict {
    #[serde(rename = "converges_to_fixed_point")]
    ConvergesToFixedPoint,
    #[serde(rename = "converges_to_2_cycle")]
    ConvergesTo2Cycle,
    #[serde(rename = "undecided")]
    Undecided,
}

/// Witness backing an orbit verdict: the limit point, the ordered 2-cycle
/// pair as observed, or the last iterate when undecided.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitWitness {
    Point(SimplexPoint),
    Pair { first: SimplexPoint, second: SimplexPoint },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub verdict: OrbitVerdict,
    pub witness: OrbitWitness,
    pub iterations_used: u64,
    pub final_gap: f64,
}

/// A 2-periodic orbit: V(xbar) = xbarbar and V(xbarbar) = xbar.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoCycle {
    pub xbar: SimplexPoint,
    pub xbarbar: SimplexPoint,
}

/// Affine conjugacy h(x) = h_a x + h_b carrying φ onto the logistic map
/// ξ_μ(y) = μ y (1 - y) with μ = 1 + sqrt(5 - 4e).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjugacyData {
    pub mu: f64,
    pub h_a: f64,
    pub h_b: f64,
}

/// Fixed points of φ²: the fixed point of φ itself and, when e ≤ 1/4, the
/// 2-cycle pair (coincident with the fixed point exactly at e = 1/4).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Phi2FixedPoints {
    pub x3_star: f64,
    pub pair: Option<(f64, f64)>,
}

/// Ratio invariant of the e = 1 dynamics. `normalized` is min(θ, 1/θ),
/// which identifies the invariant set modulo the θ ↔ 1/θ symmetry (0 for
/// the boundary set where x1 x2 = 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Theta {
    pub raw: f64,
    pub normalized: f64,
}

/// Predicted limit behavior at e = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum E1Prediction {
    AbsorbedAtVertex { vertex: SimplexPoint },
    Alternating { even_limit: SimplexPoint, odd_limit: SimplexPoint },
}

/// The first n + 1 points of the orbit of `x0`.
pub fn trajectory(p: &FamilyParams, x0: &SimplexPoint, n: usize) -> Vec<SimplexPoint> {
    let mut out = Vec::with_capacity(n + 1);
    let mut x = *x0;
    out.push(x);
    for _ in 0..n {
        x = apply_constrained(p, &x);
        out.push(x);
    }
    out
}

/// Iterates until the 1-step gap |x⁽ⁿ⁺¹⁾ - x⁽ⁿ⁾| or the 2-step gap
/// |x⁽ⁿ⁺²⁾ - x⁽ⁿ⁾| stays below `tol` (sup-norm) over a trailing window,
/// then classifies. A 2-cycle verdict additionally requires the pair
/// separation to survive a doubling of the iteration count: a slowly
/// converging oscillation toward a fixed point shows the same small 2-step
/// gap, but its separation keeps shrinking, while a genuine cycle's does
/// not.
pub fn omega_limit(
    p: &FamilyParams,
    x0: &SimplexPoint,
    max_iter: u64,
    tol: f64,
) -> OrbitReport {
    let mut prev2: Option<SimplexPoint> = None;
    let mut prev1 = *x0;
    let mut fp_streak = 0u64;
    let mut fp_start = 0u64;
    let mut cyc_streak = 0u64;
    let mut cyc_start = 0u64;
    let mut cyc_candidate: Option<(f64, u64)> = None; // (separation, recheck at)
    let mut last_gap = f64::INFINITY;

    for n in 1..=max_iter {
        let x = apply_constrained(p, &prev1);
        let g1 = x.sup_distance(&prev1);
        let g2 = prev2.map(|q| x.sup_distance(&q)).unwrap_or(f64::INFINITY);
        last_gap = g1.min(g2);

        if g1 <= tol {
            if fp_streak == 0 {
                fp_start = n - 1;
            }
            fp_streak += 1;
        } else {
            fp_streak = 0;
        }
        if fp_streak >= CONFIRM_WINDOW {
            // prev1 provably moved by at most tol; prefer the fresher point
            // when it also passes.
            let witness = if residual(p, &x) <= tol { x } else { prev1 };
            return OrbitReport {
                verdict: OrbitVerdict::ConvergesToFixedPoint,
                witness: OrbitWitness::Point(witness),
                iterations_used: fp_start,
                final_gap: g1,
            };
        }

        if g2 <= tol && g1 > tol {
            if cyc_streak == 0 {
                cyc_start = n.saturating_sub(2);
            }
            cyc_streak += 1;
        } else {
            cyc_streak = 0;
            cyc_candidate = None;
        }
        if cyc_streak >= CONFIRM_WINDOW {
            match cyc_candidate {
                None => cyc_candidate = Some((g1, (2 * n).max(n + 64))),
                Some((sep, recheck_at)) if n >= recheck_at => {
                    if g1 >= 0.5 * sep {
                        return OrbitReport {
                            verdict: OrbitVerdict::ConvergesTo2Cycle,
                            witness: OrbitWitness::Pair {
                                first: prev2.expect("2-step gap requires two predecessors"),
                                second: prev1,
                            },
                            iterations_used: cyc_start,
                            final_gap: g2,
                        };
                    }
                    cyc_candidate = Some((g1, 2 * n));
                }
                _ => {}
            }
        }

        prev2 = Some(prev1);
        prev1 = x;
    }
    OrbitReport {
        verdict: OrbitVerdict::Undecided,
        witness: OrbitWitness::Point(prev1),
        iterations_used: max_iter,
        final_gap: last_gap,
    }
}

/// Solutions of φ(φ(x)) = x for e ∈ [0, 1): the fixed point x3* and, for
/// e ≤ 1/4, the pair
///
/// ```text
/// x̄3 = (1 + sqrt(1 - 4e)) / (2 (1 + e)),  x̿3 = (1 - sqrt(1 - 4e)) / (2 (1 + e))
/// ```
///
/// with φ(x̄3) = x̿3 and vice versa. At e = 1/4 all three coincide at 2/5.
pub fn phi2_fixed_points(e: f64) -> Result<Phi2FixedPoints> {
    if !(0.0..1.0).contains(&e) {
        return Err(Error::OutOfRange { name: "e", value: e, range: "[0, 1)" });
    }
    let pair = (e <= 0.25).then(|| {
        let s = (1.0 - 4.0 * e).max(0.0).sqrt();
        ((1.0 + s) / (2.0 * (1.0 + e)), (1.0 - s) / (2.0 * (1.0 + e)))
    });
    Ok(Phi2FixedPoints { x3_star: x3_star(e), pair })
}

/// Closed-form 2-cycle of the a = α = 0 operator for e ∈ [0, 1/4).
///
/// With t̄ = x̄3 and t̿ = x̿3 the cycle coordinates solve a linear system
/// whose solution is
///
/// ```text
/// x̄1 = k (c t̿² + 2 d t̄² t̿)    x̿1 = k (c t̄² + 2 d t̿² t̄)
/// x̄2 = k (d t̿² + 2 c t̄² t̿)    x̿2 = k (d t̄² + 2 c t̿² t̄)
/// ```
///
/// where k = (1 + e)² / (1 - e)². Both points satisfy V(x̄) = x̿ and
/// V(x̿) = x̄ to rounding.
pub fn two_cycle_points(c: f64, d: f64, e: f64) -> Result<TwoCycle> {
    for (name, v) in [("c", c), ("d", d)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::OutOfRange { name: if name == "c" { "c" } else { "d" }, value: v, range: "[0, 1]" });
        }
    }
    if (c + d + e - 1.0).abs() > 1e-12 {
        return Err(Error::ConstraintViolation(format!(
            "c + d + e = {}, expected 1",
            c + d + e
        )));
    }
    if !(0.0..0.25).contains(&e) {
        return Err(Error::OutOfRange { name: "e", value: e, range: "[0, 1/4)" });
    }
    let s = (1.0 - 4.0 * e).sqrt();
    let tb = (1.0 + s) / (2.0 * (1.0 + e));
    let tbb = (1.0 - s) / (2.0 * (1.0 + e));
    let k = (1.0 + e) * (1.0 + e) / ((1.0 - e) * (1.0 - e));
    let xbar1 = k * (c * tbb * tbb + 2.0 * d * tb * tb * tbb);
    let xbar2 = k * (d * tbb * tbb + 2.0 * c * tb * tb * tbb);
    let xbb1 = k * (c * tb * tb + 2.0 * d * tbb * tbb * tb);
    let xbb2 = k * (d * tb * tb + 2.0 * c * tbb * tbb * tb);
    Ok(TwoCycle {
        xbar: SimplexPoint::new_unchecked(xbar1, xbar2, tb),
        xbarbar: SimplexPoint::new_unchecked(xbb1, xbb2, tbb),
    })
}

/// The affine change of variable conjugating φ to the logistic map:
/// μ = 1 + sqrt(5 - 4e), h_a = -(1 + e)/μ, h_b = (μ + 2)/(2μ). The
/// constant-term matching condition holds exactly for this μ and is
/// asserted as a consistency check.
pub fn logistic_conjugacy(e: f64) -> Result<ConjugacyData> {
    if !(0.0..=1.0).contains(&e) {
        return Err(Error::OutOfRange { name: "e", value: e, range: "[0, 1]" });
    }
    let mu = 1.0 + (5.0 - 4.0 * e).sqrt();
    let h_a = -(1.0 + e) / mu;
    let h_b = (mu + 2.0) / (2.0 * mu);
    let constant_gap = (h_a + h_b) - mu * h_b * (1.0 - h_b);
    if constant_gap.abs() > 1e-12 {
        return Err(Error::Internal(format!(
            "conjugacy constant-term mismatch {constant_gap} at e = {e}"
        )));
    }
    Ok(ConjugacyData { mu, h_a, h_b })
}

impl ConjugacyData {
    pub fn h(&self, x: f64) -> f64 {
        self.h_a * x + self.h_b
    }

    /// The logistic map ξ_μ(y) = μ y (1 - y).
    pub fn logistic(&self, y: f64) -> f64 {
        self.mu * y * (1.0 - y)
    }

    /// |h(φ(x)) - ξ_μ(h(x))| at a point, zero up to rounding.
    pub fn conjugacy_residual(&self, e: f64, x: f64) -> f64 {
        (self.h(phi(e, x)) - self.logistic(self.h(x))).abs()
    }
}

/// θ = x1/x2, with θ = +∞ when x2 = 0 and θ = 0 when x1 = 0. Undefined only
/// at the vertex x1 = x2 = 0.
pub fn theta_of(x: &SimplexPoint) -> Result<Theta> {
    let (x1, x2) = (x.x1(), x.x2());
    if x1 == 0.0 && x2 == 0.0 {
        return Err(Error::UndefinedTheta);
    }
    let raw = if x2 == 0.0 { f64::INFINITY } else { x1 / x2 };
    let normalized = if raw == 0.0 || raw.is_infinite() {
        0.0
    } else {
        raw.min(1.0 / raw)
    };
    Ok(Theta { raw, normalized })
}

fn e1_params() -> FamilyParams {
    make_params(0.0, 0.0, Some(0.0), Some(0.0), None).expect("e = 1 parameters are valid")
}

/// Predicted ω-limit of the e = 1 operator from `x0`.
///
/// Starts with x3 ∈ {0, 1} are absorbed at the vertex (0, 0, 1); any other
/// start alternates between two limits with third coordinate 1/2 whose
/// first coordinates are θ/(2(θ+1)) and 1/(2(θ+1)). Which limit the even
/// iterates approach depends on the start, so the pairing is resolved by a
/// short trajectory rather than asserted.
pub fn predict_e1_limit(x0: &SimplexPoint) -> E1Prediction {
    let (x1, x2, x3) = (x0.x1(), x0.x2(), x0.x3());
    if x3 <= 0.0 || x3 >= 1.0 || (x1 == 0.0 && x2 == 0.0) {
        return E1Prediction::AbsorbedAtVertex {
            vertex: SimplexPoint::new_unchecked(0.0, 0.0, 1.0),
        };
    }
    let (la, lb) = if x2 == 0.0 {
        (
            SimplexPoint::new_unchecked(0.5, 0.0, 0.5),
            SimplexPoint::new_unchecked(0.0, 0.5, 0.5),
        )
    } else {
        let th = x1 / x2;
        let u = 0.5 / (th + 1.0);
        (
            SimplexPoint::new_unchecked(th * u, u, 0.5),
            SimplexPoint::new_unchecked(u, th * u, 0.5),
        )
    };
    let p = e1_params();
    let mut x = *x0;
    for _ in 0..50 {
        x = apply_constrained(&p, &x);
    }
    // x is the 50th (even) iterate
    if x.sup_distance(&la) <= x.sup_distance(&lb) {
        E1Prediction::Alternating { even_limit: la, odd_limit: lb }
    } else {
        E1Prediction::Alternating { even_limit: lb, odd_limit: la }
    }
}

/// One step of the affine recursion on the invariant line {x3 = x3*} of the
/// a = α = 0 operator:
///
/// ```text
/// x1ⁿ⁺¹ = x3* (2 - (2 - c) x3* - 2 x1ⁿ)
/// ```
///
/// Its slope -2 x3* has magnitude below one for every e ∈ [0, 1), and its
/// fixed point is the x1* of the closed-form fixed point.
pub fn invariant_line_x1_recursion(p: &FamilyParams, x1_n: f64) -> Result<f64> {
    if p.alpha() != 0.0 || p.a() != 0.0 {
        return Err(Error::RegimeMismatch { required: "alpha = a = 0" });
    }
    let e = p.e();
    if !(0.0..1.0).contains(&e) {
        return Err(Error::OutOfRange { name: "e", value: e, range: "[0, 1)" });
    }
    let x3 = x3_star(e);
    if x1_n < -1e-12 || x1_n > 1.0 - x3 + 1e-12 {
        return Err(Error::OutOfRange { name: "x1_n", value: x1_n, range: "[0, 1 - x3*]" });
    }
    Ok(x3 * (2.0 - (2.0 - p.c()) * x3 - 2.0 * x1_n))
}

/// Roots of φⁿ(x) - x on [0, 1], located by a uniform grid scan with
/// bisection refinement at each sign change. A falsification scan, not a
/// proof: tangential roots between grid nodes would be missed.
pub fn phi_periodic_points(e: f64, n: usize, grid: usize) -> Vec<f64> {
    let map = ScalarMapPhi { e };
    let g = |x: f64| map.iterate(x, n) - x;
    let mut roots = Vec::new();
    let mut prev_x = 0.0;
    let mut prev_g = g(0.0);
    for i in 1..=grid {
        let x = i as f64 / grid as f64;
        let gx = g(x);
        if prev_g == 0.0 {
            roots.push(prev_x);
        } else if gx != 0.0 && prev_g.signum() != gx.signum() {
            let (mut lo, mut hi) = (prev_x, x);
            let mut glo = prev_g;
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let gm = g(mid);
                if gm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if gm.signum() == glo.signum() {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_g = gx;
    }
    if prev_g == 0.0 {
        roots.push(prev_x);
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-7);
    roots
}

/// |φ'| at the fixed point of φ; the transverse multiplier of the invariant
/// line when a = α = 0.
pub fn phi_multiplier_at_fixed_point(e: f64) -> f64 {
    phi_derivative(e, x3_star(e)).abs()
}
