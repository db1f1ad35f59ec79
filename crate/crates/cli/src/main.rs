//! `diskernel`: batch front end over the core library.
//!
//! Exit codes: 0 pass, 1 usage or input error, 2 refuted / check failed.

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diskernel::functions::{ratio_table, AnalyticFunction};
use diskernel::kernels::{sample_grid, PointSet};
use diskernel::modelspace::{onb_sum_check, pointwise_bound_constant, takenaka_malmquist};
use diskernel::operators::{
    defect, matrix_csv, toeplitz_analytic, toeplitz_coanalytic, SpaceWeight,
};
use diskernel::parse::{parse_function, parse_grid, parse_kernel, parse_schur};
use diskernel::psd::{self, LadderOutcome, PsdVerdict};
use diskernel::report::canonical_json;
use diskernel::verify::{self, TheoremReport, Verdict};
use diskernel::{CMatrix, GridSpec, SchurFunction};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "diskernel",
    version,
    about = "Reproducing kernels on the unit disk"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Relative tolerance for PSD verdicts.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Truncation degree for operator matrices.
    #[arg(long, global = true, default_value_t = 128)]
    degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for random grids that do not carry their own.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test whether a kernel's Gram matrix on a grid is positive semidefinite.
    Psd {
        #[arg(long)]
        kernel: String,
        #[arg(long, default_value = "default")]
        grid: String,
    },
    /// Smallest delta with K1 <= delta K2 on a grid.
    Dominance {
        #[arg(long)]
        k1: String,
        #[arg(long)]
        k2: String,
        #[arg(long, default_value = "default")]
        grid: String,
        /// Exit 2 when the measured constant exceeds this value.
        #[arg(long)]
        max_delta: Option<f64>,
    },
    /// Table of max (1 - |b|^2) / (1 - |z|^2) over circles.
    Ratio {
        #[arg(long)]
        b: String,
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.9,0.99,0.999")]
        radii: Vec<f64>,
        #[arg(long, default_value_t = 64)]
        angles: usize,
    },
    /// Takenaka-Malmquist basis of H(b) and its reproducing-sum residual.
    Onb {
        #[arg(long)]
        b: String,
        #[arg(long, default_value = "default")]
        grid: String,
    },
    /// Truncated Toeplitz or defect matrix in the orthonormal monomial basis.
    Toeplitz {
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = MatrixKind::Analytic)]
        kind: MatrixKind,
        /// Write the JSON sidecar here (CSV output only).
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Test conj(f(w)) f(z) <= c^2 K(z, w); without --grid, scan the refutation ladder.
    Membership {
        #[arg(long)]
        f: String,
        #[arg(long)]
        kernel: String,
        #[arg(long)]
        norm: f64,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Test (delta^2 - phi(z) conj(phi(w))) K(z, w) >= 0; without --grid, scan the ladder.
    Multiplier {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        kernel: String,
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Theorem-level checks.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    Analytic,
    Coanalytic,
    Defect,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Inclusion of the weighted Bergman space A²_{alpha-1} in A_alpha(b).
    Sub {
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value = "default")]
        grid: String,
    },
    /// Equality A_alpha(b) = A²_{alpha-1}: forward bound for Blaschke b, ratio table otherwise.
    Sub2 {
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value = "default")]
        grid: String,
        #[arg(long, value_delimiter = ',', default_value = "0.9,0.99,0.999")]
        radii: Vec<f64>,
    },
    /// The alpha = 0 case: H² ⊆ A(b), with equality exactly for Blaschke b.
    M1 {
        #[arg(long)]
        b: String,
        #[arg(long, default_value = "default")]
        grid: String,
        #[arg(long, value_delimiter = ',', default_value = "0.9,0.99,0.999")]
        radii: Vec<f64>,
    },
}

/// Any failure that maps to exit code 1.
struct UsageError(String);

impl<E: fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        Self(e.to_string())
    }
}

struct Output {
    body: String,
    passed: bool,
}

impl Output {
    fn json(value: Value, passed: bool) -> Self {
        Self {
            body: canonical_json(&value),
            passed,
        }
    }
}

type CmdResult = Result<Output, UsageError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.body);
            ExitCode::from(if out.passed { 0 } else { 2 })
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    if !(g.tol >= 0.0 && g.tol.is_finite()) {
        return Err(UsageError(format!(
            "--tol {} must be a nonnegative number",
            g.tol
        )));
    }
    let csv_ok = matches!(
        cli.command,
        Command::Toeplitz { .. } | Command::Ratio { .. }
    );
    if g.format == Format::Csv && !csv_ok {
        return Err(UsageError(
            "csv output is only available for toeplitz and ratio".into(),
        ));
    }
    match &cli.command {
        Command::Psd { kernel, grid } => run_psd(g, kernel, grid),
        Command::Dominance {
            k1,
            k2,
            grid,
            max_delta,
        } => run_dominance(g, k1, k2, grid, *max_delta),
        Command::Ratio { b, radii, angles } => run_ratio(g, b, radii, *angles),
        Command::Onb { b, grid } => run_onb(g, b, grid),
        Command::Toeplitz {
            b,
            alpha,
            kind,
            sidecar,
        } => run_toeplitz(g, b, *alpha, *kind, sidecar.as_ref()),
        Command::Membership {
            f,
            kernel,
            norm,
            grid,
        } => run_membership(g, f, kernel, *norm, grid.as_deref()),
        Command::Multiplier {
            phi,
            kernel,
            delta,
            grid,
        } => run_multiplier(g, phi, kernel, *delta, grid.as_deref()),
        Command::Verify { which } => run_verify(g, which),
    }
}

fn grid_points(g: &Global, spec: &str) -> Result<(GridSpec, PointSet), UsageError> {
    let spec = parse_grid(spec, g.seed)?;
    let points = sample_grid(&spec)?;
    Ok((spec, points))
}

fn run_psd(g: &Global, kernel: &str, grid: &str) -> CmdResult {
    let kernel = parse_kernel(kernel)?;
    let (spec, points) = grid_points(g, grid)?;
    let verdict = psd::is_psd(&diskernel::gram(&kernel, &points)?, g.tol)?;
    Ok(Output::json(
        json!({
            "kernel": kernel.to_string(),
            "grid": spec.to_json(),
            "points": points.len(),
            "verdict": verdict,
        }),
        verdict.is_psd,
    ))
}

fn run_dominance(g: &Global, k1: &str, k2: &str, grid: &str, max_delta: Option<f64>) -> CmdResult {
    let k1 = parse_kernel(k1)?;
    let k2 = parse_kernel(k2)?;
    let (_, points) = grid_points(g, grid)?;
    let report = psd::dominance_delta_min(&k1, &k2, &points)?;
    let passed = max_delta.is_none_or(|m| report.delta_min <= m);
    let mut value = report.to_json();
    value["max_delta"] = json!(max_delta);
    Ok(Output::json(value, passed))
}

fn run_ratio(g: &Global, b: &str, radii: &[f64], angles: usize) -> CmdResult {
    let b = parse_schur(b)?;
    let table = ratio_table(&b, radii, angles)?;
    if g.format == Format::Csv {
        let mut body = String::from("radius,ratio\n");
        for (r, v) in radii.iter().zip(&table) {
            body.push_str(&format!(
                "{},{}\n",
                diskernel::report::format_float(*r),
                diskernel::report::format_float(*v)
            ));
        }
        return Ok(Output { body, passed: true });
    }
    let sup = table.iter().copied().fold(0.0f64, f64::max);
    Ok(Output::json(
        json!({
            "b": b.to_string(),
            "radii": radii,
            "angles": angles,
            "table": table,
            "sup_estimate": sup,
        }),
        true,
    ))
}

fn blaschke_of(spec: &str) -> Result<diskernel::BlaschkeProduct, UsageError> {
    let b = parse_schur(spec)?;
    b.as_blaschke()
        .cloned()
        .ok_or_else(|| UsageError(format!("{b} is not a finite Blaschke product")))
}

fn run_onb(g: &Global, b: &str, grid: &str) -> CmdResult {
    let b = blaschke_of(b)?;
    let (spec, points) = grid_points(g, grid)?;
    let residual = onb_sum_check(&b, &points)?;
    let bound = pointwise_bound_constant(&b, &points)?;
    let basis = takenaka_malmquist(&b)?;
    let gram = basis.gram(diskernel::modelspace::GRAM_DEGREE);
    let n = basis.dim();
    let gram_error = (&gram.matrix - CMatrix::identity(n, n)).norm();
    // the reproducing-sum identity is exact, so judge it at the PSD tolerance
    let passed = residual <= g.tol.max(1e-12) && gram_error <= 1e-9;
    Ok(Output::json(
        json!({
            "b": SchurFunction::Blaschke(b).to_string(),
            "grid": spec.to_json(),
            "residual": residual,
            "gram_error": gram_error,
            "gram_tail_estimate": gram.tail_estimate,
            "pointwise_bound": bound,
            "basis": basis.to_json()["elements"],
        }),
        passed,
    ))
}

fn run_toeplitz(
    g: &Global,
    b: &str,
    alpha: f64,
    kind: MatrixKind,
    sidecar: Option<&PathBuf>,
) -> CmdResult {
    let b = parse_schur(b)?;
    let weight = SpaceWeight::new(alpha, g.degree)?;
    let (matrix, meta, clip) = match kind {
        MatrixKind::Analytic => {
            let t = toeplitz_analytic(&b, &weight);
            (t.matrix().clone(), t.sidecar(), None)
        }
        MatrixKind::Coanalytic => {
            let t = toeplitz_coanalytic(&b, &weight);
            (t.matrix().clone(), t.sidecar(), None)
        }
        MatrixKind::Defect => {
            let d = defect(&b, &weight)?;
            (d.matrix().clone(), d.sidecar(), Some(d.clip()))
        }
    };
    let mut meta = meta;
    meta["clip"] = json!(clip);
    match g.format {
        Format::Csv => {
            if let Some(path) = sidecar {
                std::fs::write(path, canonical_json(&meta))
                    .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            }
            Ok(Output {
                body: matrix_csv(&matrix),
                passed: true,
            })
        }
        Format::Json => {
            if sidecar.is_some() {
                return Err(UsageError("--sidecar requires --format csv".into()));
            }
            let rows: Vec<Value> = matrix
                .row_iter()
                .map(|row| json!(row.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()))
                .collect();
            meta["matrix"] = Value::Array(rows);
            Ok(Output::json(meta, true))
        }
    }
}

fn ladder_or_grid(
    g: &Global,
    grid: Option<&str>,
    single: impl Fn(&PointSet) -> diskernel::Result<PsdVerdict>,
    ladder: impl FnOnce() -> diskernel::Result<LadderOutcome>,
) -> Result<(Value, bool), UsageError> {
    match grid {
        Some(spec) => {
            let (spec, points) = grid_points(g, spec)?;
            let verdict = single(&points)?.with_tolerance(g.tol);
            Ok((
                json!({"grid": spec.to_json(), "verdict": verdict}),
                verdict.is_psd,
            ))
        }
        None => {
            let outcome = ladder()?;
            let refuted = outcome.refuted_by.is_some();
            Ok((json!({"ladder": outcome.to_json()}), !refuted))
        }
    }
}

fn run_membership(g: &Global, f: &str, kernel: &str, norm: f64, grid: Option<&str>) -> CmdResult {
    let f: AnalyticFunction = parse_function(f)?;
    let kernel = parse_kernel(kernel)?;
    let (mut value, passed) = ladder_or_grid(
        g,
        grid,
        |p| psd::membership_check(&f, &kernel, norm, p),
        || psd::refute_membership(&f, &kernel, norm),
    )?;
    value["f"] = json!(f.to_string());
    value["kernel"] = json!(kernel.to_string());
    value["norm"] = json!(norm);
    value["refuted"] = json!(!passed);
    Ok(Output::json(value, passed))
}

fn run_multiplier(
    g: &Global,
    phi: &str,
    kernel: &str,
    delta: f64,
    grid: Option<&str>,
) -> CmdResult {
    let phi: AnalyticFunction = parse_function(phi)?;
    let kernel = parse_kernel(kernel)?;
    let (mut value, passed) = ladder_or_grid(
        g,
        grid,
        |p| psd::multiplier_check(&phi, &kernel, delta, p),
        || psd::refute_multiplier(&phi, &kernel, delta),
    )?;
    value["phi"] = json!(phi.to_string());
    value["kernel"] = json!(kernel.to_string());
    value["delta"] = json!(delta);
    value["refuted"] = json!(!passed);
    Ok(Output::json(value, passed))
}

fn report_output(report: &TheoremReport, passed: bool) -> Output {
    Output::json(report.to_json(), passed)
}

fn run_verify(g: &Global, which: &VerifyCommand) -> CmdResult {
    match which {
        VerifyCommand::Sub { b, alpha, grid } => {
            let b = parse_schur(b)?;
            let (_, points) = grid_points(g, grid)?;
            let report = verify::verify_inclusion(&b, *alpha, &points)?;
            Ok(report_output(&report, report.passed()))
        }
        VerifyCommand::Sub2 {
            b,
            alpha,
            grid,
            radii,
        } => {
            let b = parse_schur(b)?;
            let converse = verify::verify_equality_converse(&b, radii, verify::CONVERSE_ANGLES)?;
            match b.as_blaschke() {
                Some(blaschke) => {
                    let (_, points) = grid_points(g, grid)?;
                    let mut forward = verify::verify_equality_forward(blaschke, *alpha, &points)?;
                    let bounded = converse.verdict == Verdict::Bounded;
                    forward.details.push(converse.to_json());
                    Ok(report_output(&forward, forward.passed() && bounded))
                }
                None => {
                    let divergent = converse.verdict == Verdict::Divergent;
                    Ok(report_output(&converse, divergent))
                }
            }
        }
        VerifyCommand::M1 { b, grid, radii } => {
            let b = parse_schur(b)?;
            let (_, points) = grid_points(g, grid)?;
            let report = verify::verify_m1(&b, &points, radii)?;
            Ok(report_output(&report, report.passed()))
        }
    }
}
