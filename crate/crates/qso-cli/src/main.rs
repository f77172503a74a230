//! `qso` — command-line front end for the qso-dynamics library.
//!
//! Single results are emitted as JSON, sweeps and trajectories as CSV with
//! 17 significant digits (round-trip safe for doubles). Outputs carry no
//! timestamps, so identical invocations produce byte-identical files.
//! Errors go to stderr as a JSON object `{"error": {"kind", "message"}}`
//! with a nonzero exit status.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qso_dynamics::dynamics::{
    logistic_conjugacy, omega_limit, predict_e1_limit, trajectory, two_cycle_points,
    DEFAULT_MAX_ITER, DEFAULT_TOL_ORBIT,
};
use qso_dynamics::family::{make_params, parse_value, FamilyParams};
use qso_dynamics::fixed_point::{
    closed_form_fixed_point, f_plus_minus, find_fixed_points, DEFAULT_TOL_FP,
};
use qso_dynamics::stability::{classify, jacobian_at, StabilityClass, DEFAULT_EPS_HYP};
use qso_dynamics::tensor::{classify_operator, OperatorClass, QsoTensor};
use qso_dynamics::{eigenvalues, SimplexPoint};

/// Environment variable overriding the default residual/orbit tolerances
/// (explicit `--tol` flags still win).
const TOL_ENV: &str = "QSO_DYN_TOL";

#[derive(Parser)]
#[command(name = "qso", version, about = "Fixed points, stability, and orbits of a quadratic stochastic operator family on the 2-simplex")]
struct Cli {
    /// Write the result to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Divide point inputs by their coordinate sum before validating
    /// (inputs are never renormalized silently)
    #[arg(long, global = true)]
    renormalize: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    /// Weight a of x1² (decimal or rational such as 5/8)
    #[arg(long)]
    a: String,

    /// Weight α of x2²
    #[arg(long)]
    alpha: String,

    /// Weight c of x3² in the first coordinate
    #[arg(long)]
    c: String,

    /// Weight d of x3² in the second coordinate
    #[arg(long)]
    d: String,

    /// Weight e of x3² in the third coordinate; derived from 1 - c - d when
    /// omitted, cross-checked when given
    #[arg(long)]
    e: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a heredity tensor file ({"p": [[[...]]]}, 3x3x3) and report
    /// its Volterra-type class
    Validate {
        /// Path to the tensor JSON file
        file: PathBuf,
    },
    /// Locate all fixed points; JSON {points, residuals, solver_case}
    FixedPoint {
        #[command(flatten)]
        params: ParamArgs,
        /// Residual tolerance (default 1e-10)
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Locate fixed points and classify each; JSON array of
    /// {point, D, eigenvalues, moduli, class, table_row}
    Classify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        tol: Option<f64>,
        /// Half-width of the nonhyperbolic band (default 1e-9)
        #[arg(long)]
        eps_hyp: Option<f64>,
    },
    /// Sweep e over a grid; CSV e, x3_star, re_lambda1, im_lambda1,
    /// abs_lambda1, abs_lambda2, class. c and d are rescaled proportionally
    /// so c + d = 1 - e along the sweep.
    Sweep {
        #[command(flatten)]
        params: ParamArgs,
        /// Swept parameter (only e is supported)
        #[arg(long)]
        param: SweepParam,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        /// Number of grid points (inclusive of both ends)
        #[arg(long)]
        steps: usize,
    },
    /// Emit the first n+1 iterates; CSV n, x1, x2, x3
    Trajectory {
        #[command(flatten)]
        params: ParamArgs,
        /// Start point as x1,x2,x3 (components decimal or rational)
        #[arg(long)]
        x0: String,
        #[arg(long)]
        n: usize,
    },
    /// Detect the ω-limit structure of an orbit; JSON OrbitReport
    Orbit {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        x0: String,
        /// Iteration budget (default 1e6)
        #[arg(long)]
        max_iter: Option<u64>,
        /// Sup-norm gap tolerance (default 1e-9)
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Closed-form 2-cycle of the a = α = 0 operator (requires
    /// e = 1 - c - d < 1/4); JSON {xbar, xbarbar}
    TwoCycle {
        #[arg(long)]
        c: String,
        #[arg(long)]
        d: String,
    },
    /// Affine conjugacy of φ to the logistic map; JSON {mu, h_a, h_b}
    Conjugacy {
        #[arg(long)]
        e: String,
    },
    /// Predicted alternating limits of the e = 1 operator; JSON
    PredictE1 {
        #[arg(long)]
        x0: String,
    },
    /// Figure data: fig1/fig2 the F± curves vs the diagonal (a = 0, α ≠ 0),
    /// fig3 eigenvalue moduli against e (a = α = 0); CSV
    Figure {
        /// Which figure's data to emit
        #[arg(long)]
        which: FigureKind,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepParam {
    E,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureKind {
    Fig1,
    Fig2,
    Fig3,
}

struct CliError {
    kind: &'static str,
    message: String,
}

impl From<qso_dynamics::Error> for CliError {
    fn from(e: qso_dynamics::Error) -> Self {
        CliError { kind: e.kind(), message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { kind: "io_error", message: e.to_string() }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!(
            "{}",
            serde_json::json!({"error": {"kind": err.kind, "message": err.message}})
        );
        std::process::exit(1);
    }
}

fn env_tol() -> Option<f64> {
    std::env::var(TOL_ENV).ok().and_then(|s| s.parse().ok())
}

impl ParamArgs {
    fn build(&self) -> Result<FamilyParams, CliError> {
        let a = parse_value(&self.a)?;
        let alpha = parse_value(&self.alpha)?;
        let c = parse_value(&self.c)?;
        let d = parse_value(&self.d)?;
        let e = self.e.as_deref().map(parse_value).transpose()?;
        Ok(make_params(a, alpha, Some(c), Some(d), e)?)
    }
}

fn parse_point(s: &str, renormalize: bool) -> Result<SimplexPoint, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError {
            kind: "parse_error",
            message: format!("expected x1,x2,x3, got {s:?}"),
        });
    }
    let x1 = parse_value(parts[0])?;
    let x2 = parse_value(parts[1])?;
    let x3 = parse_value(parts[2])?;
    let pt = if renormalize {
        SimplexPoint::renormalized(x1, x2, x3)?
    } else {
        SimplexPoint::new(x1, x2, x3)?
    };
    Ok(pt)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn emit_json<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    emit(out, &s)
}

/// 17 significant digits: round-trip safe for f64.
fn csv_num(v: f64) -> String {
    format!("{v:.16e}")
}

fn class_name(class: StabilityClass) -> &'static str {
    match class {
        StabilityClass::Repelling => "repelling",
        StabilityClass::Attracting => "attracting",
        StabilityClass::Saddle => "saddle",
        StabilityClass::Nonhyperbolic => "nonhyperbolic",
    }
}

#[derive(Serialize)]
struct ValidateOutput {
    valid: bool,
    class: OperatorClass,
}

#[derive(Serialize)]
struct ClassifyOutput {
    point: SimplexPoint,
    #[serde(rename = "D")]
    discriminant: f64,
    eigenvalues: [[f64; 2]; 2],
    moduli: [f64; 2],
    class: StabilityClass,
    table_row: Option<u8>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Validate { file } => {
            let text = std::fs::read_to_string(file)?;
            let tensor = QsoTensor::from_json_str(&text)?;
            let output = ValidateOutput { valid: true, class: classify_operator(&tensor) };
            emit_json(&cli.out, &output)
        }
        Command::FixedPoint { params, tol } => {
            let p = params.build()?;
            let tol = tol.or_else(env_tol).unwrap_or(DEFAULT_TOL_FP);
            let report = find_fixed_points(&p, tol)?;
            emit_json(&cli.out, &report)
        }
        Command::Classify { params, tol, eps_hyp } => {
            let p = params.build()?;
            let tol = tol.or_else(env_tol).unwrap_or(DEFAULT_TOL_FP);
            let eps_hyp = eps_hyp.unwrap_or(DEFAULT_EPS_HYP);
            let report = find_fixed_points(&p, tol)?;
            let mut results = Vec::new();
            for pt in &report.points {
                let stab = classify(&p, pt, eps_hyp, tol)?;
                results.push(ClassifyOutput {
                    point: *pt,
                    discriminant: stab.discriminant,
                    eigenvalues: stab.eigenvalues,
                    moduli: stab.moduli,
                    class: stab.class,
                    table_row: stab.table_row,
                });
            }
            emit_json(&cli.out, &results)
        }
        Command::Sweep { params, param: SweepParam::E, from, to, steps } => {
            let p = params.build()?;
            let tol = env_tol().unwrap_or(DEFAULT_TOL_FP);
            let rows = sweep_rows(&p, *from, *to, *steps, tol)?;
            emit(&cli.out, &rows)
        }
        Command::Trajectory { params, x0, n } => {
            let p = params.build()?;
            let x0 = parse_point(x0, cli.renormalize)?;
            let traj = trajectory(&p, &x0, *n);
            let mut csv = String::from("n,x1,x2,x3\n");
            for (i, pt) in traj.iter().enumerate() {
                let _ = writeln!(
                    csv,
                    "{i},{},{},{}",
                    csv_num(pt.x1()),
                    csv_num(pt.x2()),
                    csv_num(pt.x3())
                );
            }
            emit(&cli.out, &csv)
        }
        Command::Orbit { params, x0, max_iter, tol } => {
            let p = params.build()?;
            let x0 = parse_point(x0, cli.renormalize)?;
            let max_iter = max_iter.unwrap_or(DEFAULT_MAX_ITER);
            let tol = tol.or_else(env_tol).unwrap_or(DEFAULT_TOL_ORBIT);
            let report = omega_limit(&p, &x0, max_iter, tol);
            emit_json(&cli.out, &report)
        }
        Command::TwoCycle { c, d } => {
            let c = parse_value(c)?;
            let d = parse_value(d)?;
            let e = 1.0 - c - d;
            let e = if e.abs() <= 1e-12 { 0.0 } else { e };
            let cycle = two_cycle_points(c, d, e)?;
            emit_json(&cli.out, &cycle)
        }
        Command::Conjugacy { e } => {
            let e = parse_value(e)?;
            let data = logistic_conjugacy(e)?;
            emit_json(&cli.out, &data)
        }
        Command::PredictE1 { x0 } => {
            let x0 = parse_point(x0, cli.renormalize)?;
            let prediction = predict_e1_limit(&x0);
            emit_json(&cli.out, &prediction)
        }
        Command::Figure { which, params, from, to, steps } => {
            let p = params.build()?;
            let csv = match which {
                FigureKind::Fig1 | FigureKind::Fig2 => f_curve_rows(
                    &p,
                    from.unwrap_or(0.0),
                    to.unwrap_or(1.0),
                    steps.unwrap_or(500),
                )?,
                FigureKind::Fig3 => eigenvalue_rows(
                    &p,
                    from.unwrap_or(0.0),
                    to.unwrap_or(0.999),
                    steps.unwrap_or(200),
                )?,
            };
            emit(&cli.out, &csv)
        }
    }
}

/// Rescales (c, d) to sum to 1 - e, keeping their proportion. With
/// c = d = 0 only e = 1 is representable.
fn with_e(p: &FamilyParams, e: f64) -> Result<FamilyParams, CliError> {
    let sum = p.c() + p.d();
    let (c, d) = if sum > 0.0 {
        ((1.0 - e) * p.c() / sum, (1.0 - e) * p.d() / sum)
    } else {
        (0.0, 0.0)
    };
    Ok(make_params(p.a(), p.alpha(), Some(c), Some(d), None)?)
}

fn sweep_rows(p: &FamilyParams, from: f64, to: f64, steps: usize, tol: f64) -> Result<String, CliError> {
    if steps < 2 {
        return Err(CliError { kind: "out_of_range", message: "steps must be at least 2".into() });
    }
    let mut csv = String::from("e,x3_star,re_lambda1,im_lambda1,abs_lambda1,abs_lambda2,class\n");
    for i in 0..steps {
        let e = from + (to - from) * i as f64 / (steps - 1) as f64;
        let pe = with_e(p, e)?;
        let report = find_fixed_points(&pe, tol)?;
        let pt = report.points[0];
        let stab = classify(&pe, &pt, DEFAULT_EPS_HYP, tol)?;
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            csv_num(e),
            csv_num(pt.x3()),
            csv_num(stab.eigenvalues[0][0]),
            csv_num(stab.eigenvalues[0][1]),
            csv_num(stab.moduli[0]),
            csv_num(stab.moduli[1]),
            class_name(stab.class)
        );
    }
    Ok(csv)
}

fn f_curve_rows(p: &FamilyParams, from: f64, to: f64, steps: usize) -> Result<String, CliError> {
    if steps < 2 {
        return Err(CliError { kind: "out_of_range", message: "steps must be at least 2".into() });
    }
    let mut csv = String::from("x,f_plus,f_minus,diagonal\n");
    for i in 0..steps {
        let x = from + (to - from) * i as f64 / (steps - 1) as f64;
        // rows below the branch point (inner radical negative) are omitted
        if let Some((fp, fm)) = f_plus_minus(p, x)? {
            let _ = writeln!(
                csv,
                "{},{},{},{}",
                csv_num(x),
                csv_num(fp),
                csv_num(fm),
                csv_num(x)
            );
        }
    }
    Ok(csv)
}

fn eigenvalue_rows(p: &FamilyParams, from: f64, to: f64, steps: usize) -> Result<String, CliError> {
    if p.a() != 0.0 || p.alpha() != 0.0 {
        return Err(qso_dynamics::Error::RegimeMismatch { required: "a = alpha = 0" }.into());
    }
    if steps < 2 {
        return Err(CliError { kind: "out_of_range", message: "steps must be at least 2".into() });
    }
    let mut csv = String::from("e,abs_lambda1,abs_lambda2\n");
    for i in 0..steps {
        let e = from + (to - from) * i as f64 / (steps - 1) as f64;
        let pe = with_e(p, e)?;
        let pt = closed_form_fixed_point(pe.d(), e)?;
        let ev = eigenvalues(&jacobian_at(&pe, &pt));
        let _ = writeln!(
            csv,
            "{},{},{}",
            csv_num(e),
            csv_num(ev[0].norm()),
            csv_num(ev[1].norm())
        );
    }
    Ok(csv)
}
