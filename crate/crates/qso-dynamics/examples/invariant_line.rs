//! On the invariant line {x3 = x3*} of the a = alpha = 0 operator the first
//! coordinate obeys a one-dimensional affine recursion with slope -2 x3*,
//! which contracts for every e in [0, 1).
//!
//! ```bash
//! cargo run --example invariant_line -p qso-dynamics
//! ```

use qso_dynamics::dynamics::invariant_line_x1_recursion;
use qso_dynamics::fixed_point::x3_star;
use qso_dynamics::{closed_form_fixed_point, make_params, trajectory, SimplexPoint};

fn main() {
    let (c, d) = (0.3, 0.2); // e = 0.5
    let p = make_params(0.0, 0.0, Some(c), Some(d), None).unwrap();
    let e = p.e();
    let fixed = closed_form_fixed_point(d, e).unwrap();
    let x3 = fixed.x3();
    println!("e = {e}: x3* = {x3:.12}, recursion slope -2 x3* = {:.12}", -2.0 * x3);

    let x0 = SimplexPoint::new(0.0, 1.0 - x3, x3).unwrap();
    let full = trajectory(&p, &x0, 12);
    let mut x1 = 0.0f64;
    println!("{:>4} {:>22} {:>22}", "n", "full operator x1", "line recursion x1");
    for (n, pt) in full.iter().enumerate() {
        println!("{n:>4} {:>22.15} {x1:>22.15}", pt.x1());
        x1 = invariant_line_x1_recursion(&p, x1).unwrap();
    }
    for _ in 0..500 {
        x1 = invariant_line_x1_recursion(&p, x1).unwrap();
    }
    println!("recursion limit {x1:.15} vs closed-form x1* {:.15}", fixed.x1());

    // slope magnitude across the whole parameter range
    let worst = (0..1000)
        .map(|i| 2.0 * x3_star(0.999 * i as f64 / 999.0))
        .fold(0.0f64, f64::max);
    println!("max |slope| over e in [0, 0.999]: {worst:.6} (< 1)");
}
