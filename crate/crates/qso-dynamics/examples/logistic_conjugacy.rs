//! The scalar map phi(x) = (1-x)² + e x² is affinely conjugate to the
//! logistic map mu·y(1-y) with mu = 1 + sqrt(5 - 4e). The conjugacy carries
//! phi's periodic structure onto the classical logistic picture: mu in
//! (2, 3] means a single attracting fixed point (e >= 1/4), mu in
//! (3, 1 + sqrt(5)] means one attracting 2-cycle (e < 1/4).
//!
//! ```bash
//! cargo run --example logistic_conjugacy -p qso-dynamics
//! ```

use qso_dynamics::dynamics::phi_periodic_points;
use qso_dynamics::{logistic_conjugacy, phi};

fn main() {
    println!("{:>6} {:>10} {:>12} {:>12} {:>14}", "e", "mu", "h_a", "h_b", "sup residual");
    for e in [0.0, 0.1, 0.24, 0.25, 0.5, 0.9, 1.0] {
        let conj = logistic_conjugacy(e).unwrap();
        let sup = (0..=1000)
            .map(|i| conj.conjugacy_residual(e, i as f64 / 1000.0))
            .fold(0.0f64, f64::max);
        println!(
            "{e:>6.2} {:>10.6} {:>12.6} {:>12.6} {sup:>14.2e}",
            conj.mu, conj.h_a, conj.h_b
        );
    }

    // transport of the period-two set at e = 0.1
    let e = 0.1;
    let conj = logistic_conjugacy(e).unwrap();
    println!("\nperiod-2 set of phi at e = {e} and its image under h:");
    for root in phi_periodic_points(e, 2, 10_000) {
        let y = conj.h(root);
        let y2 = conj.logistic(conj.logistic(y));
        println!("  x = {root:.12}  ->  y = {y:.12}  (|xi²(y) - y| = {:.2e})", (y2 - y).abs());
    }
    let x = 0.3;
    println!("\nspot check at x = {x}: h(phi(x)) = {:.15}, xi(h(x)) = {:.15}",
        conj.h(phi(e, x)),
        conj.logistic(conj.h(x)));
}
