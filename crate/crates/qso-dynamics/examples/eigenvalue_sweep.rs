//! How the eigenvalue moduli at the a = alpha = 0 fixed point respond to e.
//!
//! The spectrum there is exactly {phi'(x3*), -2 x3*} with
//! phi'(x3*) = 1 - sqrt(5 - 4e): a saddle for e < 1/4, nonhyperbolic at
//! e = 1/4, attracting beyond.
//!
//! ```bash
//! cargo run --example eigenvalue_sweep -p qso-dynamics
//! ```

use qso_dynamics::fixed_point::{closed_form_fixed_point, x3_star};
use qso_dynamics::{classify, eigenvalues, jacobian_at, make_params, DEFAULT_EPS_HYP, DEFAULT_TOL_FP};

fn main() {
    println!("{:>6} {:>10} {:>12} {:>12} {:>14}", "e", "x3*", "|lambda1|", "|lambda2|", "class");
    for i in 0..=20 {
        let e = 0.999 * i as f64 / 20.0;
        let d = 0.4 * (1.0 - e);
        let p = make_params(0.0, 0.0, Some(1.0 - e - d), Some(d), None).unwrap();
        let pt = closed_form_fixed_point(d, e).unwrap();
        let ev = eigenvalues(&jacobian_at(&p, &pt));
        let stab = classify(&p, &pt, DEFAULT_EPS_HYP, DEFAULT_TOL_FP).unwrap();
        println!(
            "{e:>6.3} {:>10.6} {:>12.6} {:>12.6} {:>14?}",
            x3_star(e),
            ev[0].norm(),
            ev[1].norm(),
            stab.class
        );
        // the closed form for the spectrum, as a cross-check
        let transverse = 1.0 - (5.0 - 4.0 * e).sqrt();
        let line = -2.0 * x3_star(e);
        assert!((ev[0].norm().min(ev[1].norm()) - transverse.abs().min(line.abs())).abs() < 1e-12);
    }
}
