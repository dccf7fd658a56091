//! Command-line front end for teleportation-usefulness analysis.
//!
//! Exit codes: 0 = useful / success, 1 = usage or input error, 2 = solver
//! unconverged, 3 = state not useful.

mod output;
mod statefile;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use telewitness::mef::{
    avg_fidelity_2qubit, correlation_matrix, correlation_negativity, estimate_mef,
    mef_to_avg_fidelity, mix_seed, OracleParams,
};
use telewitness::qmat::DensityMatrix;
use telewitness::solver::{distance_curve, solve, SolveParams};
use telewitness::states::StateFamily;
use telewitness::witness::{construct_witness, decompose, normalize_witness};

use output::{coefficient_table, fmt_real, round6, scan_csv, scan_json, ScanRow};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_UNCONVERGED: u8 = 2;
const EXIT_USELESS: u8 = 3;

#[derive(Parser)]
#[command(
    name = "telewitness",
    version,
    about = "Decide teleportation usefulness of two-qudit states and extract optimal witnesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a built-in family over a visibility grid and emit distance data.
    Scan(ScanArgs),
    /// Decide usefulness of a single state loaded from a JSON file.
    Check(CheckArgs),
    /// Extract and decompose the optimal witness of a useful state.
    Witness(WitnessArgs),
    /// Estimate the maximal entangled fraction of a state.
    Mef(MefArgs),
    /// Compare the geometric verdict with the analytic two-qubit criterion.
    #[command(name = "crosscheck-2qubit")]
    Crosscheck(CrosscheckArgs),
}

/// Solver knobs with their standard defaults.
#[derive(Args, Clone)]
struct SolverFlags {
    /// Outer tolerance on the entangled-fraction violation.
    #[arg(long, default_value_t = 1e-8)]
    eps: f64,
    /// Inner fixed-point convergence tolerance.
    #[arg(long, default_value_t = 1e-8)]
    delta: f64,
    /// Maximum outer iterations.
    #[arg(long, default_value_t = 1000)]
    kmax: usize,
    /// Maximum inner iterations per restart.
    #[arg(long, default_value_t = 100)]
    tmax: usize,
    /// Haar-random restarts of the inner oracle.
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    /// Usefulness threshold on the converged distance.
    #[arg(long, default_value_t = 1e-6)]
    tau: f64,
    /// RNG seed; identical seeds give byte-identical output.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SolverFlags {
    fn solve_params(&self) -> SolveParams {
        SolveParams {
            outer_tol: self.eps,
            oracle: OracleParams {
                restarts: self.restarts,
                inner_tol: self.delta,
                max_inner: self.tmax,
            },
            max_outer: self.kmax,
            tau: self.tau,
            seed: self.seed,
            ..SolveParams::default()
        }
    }
}

/// A state given either as --family with --p, or as a JSON file.
#[derive(Args, Clone)]
struct StateInput {
    /// Built-in family: werner, mems, or qutrit_nme.
    #[arg(long)]
    family: Option<String>,
    /// Visibility parameter in [0, 1] (with --family).
    #[arg(long)]
    p: Option<f64>,
    /// Path to a state file (JSON with dimA, dimB, matrix).
    #[arg(long)]
    state: Option<PathBuf>,
}

impl StateInput {
    fn resolve(&self) -> Result<(DensityMatrix, String), String> {
        match (&self.family, self.p, &self.state) {
            (Some(name), Some(p), None) => {
                let family = StateFamily::from_str(name).map_err(|e| e.to_string())?;
                let rho = family.state(p).map_err(|e| e.to_string())?;
                Ok((rho, format!("{name}(p={p})")))
            }
            (None, None, Some(path)) => {
                let rho = statefile::load_state(path)?;
                Ok((rho, path.display().to_string()))
            }
            (Some(_), None, None) => Err("--family requires --p".into()),
            _ => Err("give exactly one of --family with --p, or --state".into()),
        }
    }
}

#[derive(Args)]
struct ScanArgs {
    /// Built-in family: werner, mems, or qutrit_nme.
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 0.0)]
    p_min: f64,
    #[arg(long, default_value_t = 1.0)]
    p_max: f64,
    #[arg(long, default_value_t = 0.05)]
    p_step: f64,
    #[command(flatten)]
    solver: SolverFlags,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,
}

#[derive(Args)]
struct CheckArgs {
    /// Path to a state file (JSON with dimA, dimB, matrix).
    #[arg(long)]
    state: PathBuf,
    #[command(flatten)]
    solver: SolverFlags,
}

#[derive(Args)]
struct WitnessArgs {
    #[command(flatten)]
    input: StateInput,
    #[command(flatten)]
    solver: SolverFlags,
    /// Write the witness document (JSON) here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MefArgs {
    #[command(flatten)]
    input: StateInput,
    #[command(flatten)]
    solver: SolverFlags,
}

#[derive(Args)]
struct CrosscheckArgs {
    #[command(flatten)]
    input: StateInput,
    #[command(flatten)]
    solver: SolverFlags,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Scan(args) => cmd_scan(args),
        Command::Check(args) => cmd_check(args),
        Command::Witness(args) => cmd_witness(args),
        Command::Mef(args) => cmd_mef(args),
        Command::Crosscheck(args) => cmd_crosscheck(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn cmd_scan(args: ScanArgs) -> Result<u8, String> {
    let family = StateFamily::from_str(&args.family).map_err(|e| e.to_string())?;
    if !(0.0..=1.0).contains(&args.p_min)
        || !(0.0..=1.0).contains(&args.p_max)
        || args.p_min > args.p_max
    {
        return Err("need 0 <= p-min <= p-max <= 1".into());
    }
    if args.p_step <= 0.0 {
        return Err("p-step must be positive".into());
    }

    let n = ((args.p_max - args.p_min) / args.p_step + 1e-9).floor() as usize + 1;
    let grid: Vec<f64> = (0..n)
        .map(|i| (args.p_min + i as f64 * args.p_step).min(args.p_max))
        .collect();

    let params = args.solver.solve_params();
    let points = distance_curve(family, &grid, &params).map_err(|e| e.to_string())?;
    let d = family.local_dim();
    let rows: Vec<ScanRow> = points
        .iter()
        .map(|pt| ScanRow {
            p: pt.p,
            distance: pt.report.distance,
            mef_estimate: pt.mef_at_rho.f_est,
            avg_fidelity: mef_to_avg_fidelity(pt.mef_at_rho.f_est, d),
            useful: pt.report.useful,
            converged: pt.report.converged,
            outer_iterations: pt.report.outer_iterations,
        })
        .collect();

    let body = match args.format.as_str() {
        "json" => scan_json(&rows),
        _ => scan_csv(&rows),
    };
    match &args.out {
        Some(path) => std::fs::write(path, &body)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{body}"),
    }

    let all_converged = rows.iter().all(|r| r.converged);
    Ok(if all_converged { EXIT_OK } else { EXIT_UNCONVERGED })
}

fn cmd_check(args: CheckArgs) -> Result<u8, String> {
    let rho = statefile::load_state(&args.state)?;
    let d = rho.local_dim().map_err(|e| e.to_string())?;
    let params = args.solver.solve_params();
    let report = solve(&rho, &params).map_err(|e| e.to_string())?;

    let mut diag_rng = ChaCha8Rng::seed_from_u64(mix_seed(params.seed, 0xD1A6));
    let est = estimate_mef(&rho, &params.oracle, &mut diag_rng).map_err(|e| e.to_string())?;

    println!("D(rho)      = {}", fmt_real(report.distance));
    println!("F_max^est   = {}", fmt_real(est.f_est));
    println!(
        "F_avg       = {}",
        fmt_real(mef_to_avg_fidelity(est.f_est, d))
    );
    println!("outer iters = {}", report.outer_iterations);
    if !report.converged {
        println!(
            "verdict: UNCONVERGED after {} iterations; distance above is a lower estimate",
            report.outer_iterations
        );
        return Ok(EXIT_UNCONVERGED);
    }
    if report.useful {
        println!("verdict: useful for teleportation (D > tau)");
        Ok(EXIT_OK)
    } else {
        println!("verdict: not useful for teleportation (D <= tau)");
        Ok(EXIT_USELESS)
    }
}

fn cmd_witness(args: WitnessArgs) -> Result<u8, String> {
    let (rho, label) = args.input.resolve()?;
    let d = rho.local_dim().map_err(|e| e.to_string())?;
    let params = args.solver.solve_params();
    let report = solve(&rho, &params).map_err(|e| e.to_string())?;

    if !report.converged {
        eprintln!("warning: solver unconverged on {label}; refusing to certify a witness");
        return Ok(EXIT_UNCONVERGED);
    }
    if !report.useful {
        println!(
            "no witness: state in S (D = {} <= tau)",
            fmt_real(report.distance)
        );
        return Ok(EXIT_USELESS);
    }

    let w_raw = construct_witness(&rho, &report.sigma_star).map_err(|e| e.to_string())?;
    let w_norm = normalize_witness(&w_raw).map_err(|e| e.to_string())?;
    let dec = decompose(&w_raw, d).map_err(|e| e.to_string())?;

    println!("state       : {label}");
    println!("distance    = {}", fmt_real(report.distance));
    println!("shift c     = {}", fmt_real(w_raw.shift));
    println!("basis       : {}", dec.basis);
    println!("coefficients of the raw witness:");
    print!("{}", coefficient_table(&dec));

    if let Some(path) = &args.out {
        let coeffs: Vec<Vec<f64>> = dec
            .coefficients
            .iter()
            .map(|row| row.iter().map(|&c| round6(c)).collect())
            .collect();
        let doc = serde_json::json!({
            "d": d,
            "distance": report.distance,
            "shift_c": w_raw.shift,
            "witness_raw": statefile::matrix_entries(w_raw.op.matrix()),
            "witness_normalized": statefile::matrix_entries(w_norm.op.matrix()),
            "decomposition": {
                "basis": dec.basis,
                "coefficients": coeffs,
            },
        });
        let mut body = serde_json::to_string_pretty(&doc).expect("witness document serializes");
        body.push('\n');
        std::fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(EXIT_OK)
}

fn cmd_mef(args: MefArgs) -> Result<u8, String> {
    let (rho, label) = args.input.resolve()?;
    let params = args.solver.solve_params();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let est = estimate_mef(&rho, &params.oracle, &mut rng).map_err(|e| e.to_string())?;

    println!("state         : {label}");
    println!("F_max^est     = {:.6}", est.f_est);
    println!("restart index = {}", est.restart_index);
    println!("iterations    = {}", est.iterations);
    println!("U_opt (phase-normalized):");
    let u = est.u_opt.matrix();
    for i in 0..u.nrows() {
        let row: Vec<String> = (0..u.ncols())
            .map(|j| format!("{:+.6}{:+.6}i", u[(i, j)].re, u[(i, j)].im))
            .collect();
        println!("  [{}]", row.join(", "));
    }
    Ok(EXIT_OK)
}

fn cmd_crosscheck(args: CrosscheckArgs) -> Result<u8, String> {
    let (rho, label) = args.input.resolve()?;
    if rho.dims() != (2, 2) {
        return Err(format!(
            "crosscheck-2qubit needs a two-qubit state, got {} x {}",
            rho.dim_a(),
            rho.dim_b()
        ));
    }
    let t = correlation_matrix(&rho).map_err(|e| e.to_string())?;
    let n = correlation_negativity(&t);
    let f_avg = avg_fidelity_2qubit(&rho).map_err(|e| e.to_string())?;
    let analytic_useful = f_avg > 2.0 / 3.0;

    let params = args.solver.solve_params();
    let report = solve(&rho, &params).map_err(|e| e.to_string())?;

    println!("state    : {label}");
    println!("correlation matrix T:");
    for row in &t {
        println!(
            "  [{:+.6}, {:+.6}, {:+.6}]",
            round6(row[0]),
            round6(row[1]),
            round6(row[2])
        );
    }
    println!("N(rho)   = {}", fmt_real(n));
    println!("F_avg    = {}", fmt_real(f_avg));
    println!(
        "analytic : {}",
        if analytic_useful {
            "useful (F_avg > 2/3)"
        } else {
            "not useful (F_avg <= 2/3)"
        }
    );
    println!("D(rho)   = {}", fmt_real(report.distance));
    println!(
        "geometric: {}{}",
        if report.useful {
            "useful (D > tau)"
        } else {
            "not useful (D <= tau)"
        },
        if report.converged { "" } else { " [UNCONVERGED]" }
    );
    if !report.converged {
        return Ok(EXIT_UNCONVERGED);
    }
    Ok(if report.useful { EXIT_OK } else { EXIT_USELESS })
}
