//! The closed-form 2-cycle for e < 1/4 and its agreement with iteration.
//!
//! ```bash
//! cargo run --example two_cycle -p qso-dynamics
//! ```

use qso_dynamics::{apply, make_params, two_cycle_points};

fn main() {
    for (c, d) in [(0.5, 0.4), (0.7, 0.3), (0.8, 0.05)] {
        let e = 1.0 - c - d;
        let p = make_params(0.0, 0.0, Some(c), Some(d), None).unwrap();
        let cycle = two_cycle_points(c, d, e).unwrap();
        println!("c = {c}, d = {d}, e = {e:.2}:");
        println!("  xbar    {}", cycle.xbar);
        println!("  xbarbar {}", cycle.xbarbar);
        let swap1 = apply(&p, &cycle.xbar).sup_distance(&cycle.xbarbar);
        let swap2 = apply(&p, &cycle.xbarbar).sup_distance(&cycle.xbar);
        println!("  V(xbar) vs xbarbar: {swap1:.2e},  V(xbarbar) vs xbar: {swap2:.2e}");
        // the cycle multiplier of V∘V is 4e, so convergence slows toward
        // the collapse at e = 1/4
        println!("  cycle multiplier 4e = {:.3}", 4.0 * e);
        println!();
    }
    // at e -> 1/4 the pair degenerates into the fixed point
    let eps = 1e-8;
    let e = 0.25 - eps;
    let d = 0.3;
    let cycle = two_cycle_points(1.0 - d - e, d, e).unwrap();
    let spread = cycle.xbar.sup_distance(&cycle.xbarbar);
    println!("e = 1/4 - 1e-8: cycle spread {spread:.2e} (collapses like sqrt(1/4 - e))");
}
