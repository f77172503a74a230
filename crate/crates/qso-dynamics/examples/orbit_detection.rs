//! Detect the ω-limit structure of orbits across the three regimes of the
//! a = alpha = 0 operator.
//!
//! ```bash
//! cargo run --example orbit_detection -p qso-dynamics
//! ```

use qso_dynamics::dynamics::{omega_limit, DEFAULT_MAX_ITER};
use qso_dynamics::{make_params, SimplexPoint};

fn main() {
    let x0 = SimplexPoint::new(0.2, 0.5, 0.3).unwrap();
    for (label, c, d) in [
        ("e = 0.10: orbits settle on the attracting 2-cycle", 0.5, 0.4),
        ("e = 0.26: slow spiral into the fixed point", 0.44, 0.3),
        ("e = 0.50: brisk convergence to the fixed point", 0.3, 0.2),
        ("e = 1.00: alternation between two ratio-determined limits", 0.0, 0.0),
    ] {
        let p = make_params(0.0, 0.0, Some(c), Some(d), None).unwrap();
        let report = omega_limit(&p, &x0, DEFAULT_MAX_ITER, 1e-12);
        println!("{label}");
        println!(
            "  verdict {:?} after {} iterations (final gap {:.2e})",
            report.verdict, report.iterations_used, report.final_gap
        );
        match report.witness {
            qso_dynamics::OrbitWitness::Point(w) => println!("  limit {w}"),
            qso_dynamics::OrbitWitness::Pair { first, second } => {
                println!("  cycle {first} <-> {second}")
            }
        }
        println!();
    }
}
