//! At e = 1 every interior orbit alternates between two limits on the
//! plane x3 = 1/2, determined by the start's coordinate ratio
//! θ = x1/x2 (an invariant of the doubled map).
//!
//! ```bash
//! cargo run --example e1_alternation -p qso-dynamics
//! ```

use qso_dynamics::dynamics::{predict_e1_limit, theta_of, trajectory, E1Prediction};
use qso_dynamics::{make_params, SimplexPoint};

fn main() {
    let p = make_params(0.0, 0.0, Some(0.0), Some(0.0), None).unwrap();
    let starts = [
        SimplexPoint::new(0.25, 0.25, 0.5).unwrap(),
        SimplexPoint::new(0.2, 0.1, 0.7).unwrap(),
        SimplexPoint::new(0.05, 0.6, 0.35).unwrap(),
        SimplexPoint::new(0.5, 0.0, 0.5).unwrap(),
        SimplexPoint::new(0.6, 0.4, 0.0).unwrap(),
    ];
    for x0 in starts {
        println!("start {x0}:");
        match theta_of(&x0) {
            Ok(theta) => println!("  theta = {} (normalized {})", theta.raw, theta.normalized),
            Err(e) => println!("  theta: {e}"),
        }
        match predict_e1_limit(&x0) {
            E1Prediction::AbsorbedAtVertex { vertex } => {
                let traj = trajectory(&p, &x0, 2);
                println!("  absorbed at {vertex}; trajectory reaches it at step {}",
                    if traj[0] == vertex { 0 } else if traj[1] == vertex { 1 } else { 2 });
            }
            E1Prediction::Alternating { even_limit, odd_limit } => {
                let traj = trajectory(&p, &x0, 1001);
                println!("  even limit {even_limit}  (iterate 1000 is off by {:.2e})",
                    traj[1000].sup_distance(&even_limit));
                println!("  odd  limit {odd_limit}  (iterate 1001 is off by {:.2e})",
                    traj[1001].sup_distance(&odd_limit));
            }
        }
        println!();
    }
}
