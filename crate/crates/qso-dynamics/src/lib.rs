//! Dynamics of a quasi-strictly non-Volterra quadratic stochastic operator
//! on the two-dimensional simplex.
//!
//! The operator family is
//!
//! ```text
//! x1' = α x2² + c x3² + 2 x2 x3
//! x2' = a x1² + d x3² + 2 x1 x3
//! x3' = b x1² + β x2² + e x3² + 2 x1 x2
//! ```
//!
//! with a + b = 1, α + β = 1, c + d + e = 1 and all parameters in [0, 1].
//! The crate locates its fixed points in every parameter regime, classifies
//! them through the Jacobian spectrum, and analyses trajectories: ω-limit
//! detection, the closed-form 2-cycle for small e, the alternating limits at
//! e = 1, and the affine conjugacy of the scalar third-coordinate map to the
//! logistic family.
//!
//! Modules:
//! - [`simplex`], [`tensor`]: points on S² and general 3×3×3 heredity
//!   tensors (validation, application, Volterra-type classification).
//! - [`family`]: the parameter family, its tensor form, the planar
//!   restriction, and the scalar map φ(x) = (1 - x)² + e x².
//! - [`fixed_point`]: the scalar-residual solver and closed forms.
//! - [`stability`]: Jacobian, discriminant, and the ten-row type table.
//! - [`dynamics`]: trajectories, ω-limits, periodic points, conjugacy.
//!
//! Run `cargo run --example fixed_points -p qso-dynamics` (and the other
//! examples) for end-to-end walkthroughs; the `qso` binary exposes the same
//! functionality as subcommands.

pub mod dynamics;
pub mod error;
pub mod family;
pub mod fixed_point;
pub mod simplex;
pub mod stability;
pub mod tensor;

pub use dynamics::{
    logistic_conjugacy, omega_limit, phi2_fixed_points, predict_e1_limit, theta_of, trajectory,
    two_cycle_points, ConjugacyData, E1Prediction, OrbitReport, OrbitVerdict, OrbitWitness,
    Phi2FixedPoints, Theta, TwoCycle,
};
pub use error::{Error, Result};
pub use family::{
    apply, apply_constrained, make_params, parse_value, phi, reduced_2d, residual, to_tensor,
    FamilyParams, ScalarMapPhi,
};
pub use fixed_point::{
    closed_form_fixed_point, find_fixed_points, FixedPointReport, SolverCase, DEFAULT_TOL_FP,
};
pub use simplex::{SimplexPoint, EPS_SIMPLEX};
pub use stability::{
    classify, classify_forced, discriminant, discriminant_value, eigenvalues, jacobian_at,
    StabilityClass, StabilityReport, DEFAULT_EPS_HYP,
};
pub use tensor::{apply_tensor, classify_operator, validate_tensor, OperatorClass, QsoTensor};
