//! Classify fixed points by the Jacobian spectrum and the discriminant
//! threshold table.
//!
//! ```bash
//! cargo run --example classify_stability -p qso-dynamics
//! ```

use qso_dynamics::{
    classify, find_fixed_points, make_params, DEFAULT_EPS_HYP, DEFAULT_TOL_FP,
};

fn show(label: &str, a: f64, alpha: f64, c: f64, d: f64) {
    let p = make_params(a, alpha, Some(c), Some(d), None).unwrap();
    let report = find_fixed_points(&p, DEFAULT_TOL_FP).unwrap();
    println!("{label} (a={a}, alpha={alpha}, c={c}, d={d}, e={}):", p.e());
    for pt in &report.points {
        let stab = classify(&p, pt, DEFAULT_EPS_HYP, DEFAULT_TOL_FP).unwrap();
        let [l1, l2] = stab.eigenvalues;
        println!(
            "  {pt}\n    D = {:+.6}, eigenvalues ({:+.6} {:+.6}i), ({:+.6} {:+.6}i)",
            stab.discriminant, l1[0], l1[1], l2[0], l2[1]
        );
        println!(
            "    moduli ({:.6}, {:.6}) -> {:?} (table row {:?})",
            stab.moduli[0], stab.moduli[1], stab.class, stab.table_row
        );
    }
    println!();
}

fn main() {
    // an attracting interior fixed point: impossible for strictly
    // non-Volterra operators, enabled here by the weight e
    show("attracting example", 1.0, 0.375, 0.625, 0.0);
    // saddle at small e, attracting after the transverse eigenvalue
    // 1 - sqrt(5 - 4e) enters the unit circle at e = 1/4
    show("zero weights, e = 0.1", 0.0, 0.0, 0.5, 0.4);
    show("zero weights, e = 0.5", 0.0, 0.0, 0.3, 0.2);
    // at e = 1 the vertex (0,0,1) appears and always repels
    show("double fixed point at e = 1", 0.0, 0.0, 0.0, 0.0);
}
