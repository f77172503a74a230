//! Locate fixed points in every parameter regime.
//!
//! ```bash
//! cargo run --example find_fixed_points -p qso-dynamics
//! ```

use qso_dynamics::{find_fixed_points, make_params, DEFAULT_TOL_FP};

fn main() {
    let cases = [
        ("both square weights nonzero", 1.0, 0.375, 0.625, 0.0),
        ("alpha only", 0.0, 0.8, 0.4, 0.3),
        ("a only", 0.8, 0.0, 0.4, 0.3),
        ("closed form (a = alpha = 0)", 0.0, 0.0, 0.5, 0.5),
        ("double fixed point (e = 1)", 0.0, 0.0, 0.0, 0.0),
        ("tiny alpha near the fragile regime", 0.0, 1e-4, 0.0, 0.82),
    ];
    for (label, a, alpha, c, d) in cases {
        let p = make_params(a, alpha, Some(c), Some(d), None).unwrap();
        let report = find_fixed_points(&p, DEFAULT_TOL_FP).unwrap();
        println!("{label}: a={a}, alpha={alpha}, c={c}, d={d}, e={}", p.e());
        println!("  solver case: {:?}", report.solver_case);
        for (pt, res) in report.points.iter().zip(report.residuals.iter()) {
            println!("  fixed point {pt}   residual {res:.2e}");
        }
        println!();
    }
}
