//! Command line front end for the verification toolkit.
//!
//! Subcommands:
//! - `classify <input>`: sort a 2-D two-qubit subspace into unverifiable,
//!   verifiable, or perfectly verifiable, and print the product states,
//!   the optimal test operator, and its gap as JSON.
//! - `gap`: spectral gap of a built-in three-qubit strategy at one weight.
//! - `sweep`: gap as a function of the mixing weight, written as CSV.
//! - `samples`: round counts versus the global baseline, written as CSV.
//! - `simulate`: run the round-by-round protocol and print a JSON report.
//!
//! Exit codes: 0 success, 2 input error, 3 I/O error, 4 domain error.
//! All output is deterministic given the flags (and seed).

use clap::{Parser, Subcommand, ValueEnum};
use gesv_core::ghzw::{
    ghz_state, omega_rotation, omega_xz, sample_complexity, spectral_gap, GhzwError, SampleMode,
    Strategy3, BEST_XZ_WEIGHT, OPTIMAL_ROTATION_WEIGHT,
};
use gesv_core::protocol::{
    run_protocol, DensityOp, ProtocolError, SimConfig, SimReport, StateSource,
};
use gesv_core::subspace2::{
    build_strategy, classify, ProductStateSet, Subspace2, SubspaceError, Verdict,
};
use gesv_core::{CMat, Ket};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "gesv",
    version,
    about = "Local-measurement verification of small entangled subspaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyKind {
    /// Z test mixed with the three plain X tests.
    Xz,
    /// Z test mixed with the nine rotated X tests.
    Rotation,
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    /// The GHZ state, emitted perfectly.
    Ideal,
    /// The adversarial state saturating the acceptance bound.
    WorstCase,
    /// GHZ mixed with white noise of strength --p-depol.
    Depolarized,
    /// A density operator loaded from --state-json.
    Custom,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a 2-D two-qubit subspace given as a JSON basis file.
    Classify {
        /// Path to `{"basis": [[[re,im]; 4]; 2]}`.
        input: PathBuf,
    },
    /// Spectral gap of a built-in strategy at one mixing weight.
    Gap {
        #[arg(long, value_enum)]
        strategy: StrategyKind,
        /// Mixing weight; defaults to the strategy's best known value.
        #[arg(long)]
        mu: Option<f64>,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the mixing weight and write a `mu,nu` CSV.
    Sweep {
        #[arg(long, value_enum)]
        strategy: StrategyKind,
        /// Grid step in (0, 0.5]; defaults to 0.001 for xz, 0.05 for rotation.
        #[arg(long)]
        step: Option<f64>,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Tabulate round counts N_G, N_XZ, N_R over a range of epsilon.
    Samples {
        #[arg(long, default_value_t = 0.001)]
        eps_min: f64,
        #[arg(long, default_value_t = 0.1)]
        eps_max: f64,
        #[arg(long, default_value_t = 0.001)]
        step: f64,
        #[arg(long, default_value_t = 0.001)]
        delta: f64,
        /// Use the exact round count instead of the first-order form.
        #[arg(long)]
        exact: bool,
        /// Output CSV path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate the protocol with N chosen from the exact round count.
    Simulate {
        #[arg(long, value_enum)]
        strategy: StrategyKind,
        /// Mixing weight; defaults to the strategy's best known value.
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long, value_enum, default_value = "worst-case")]
        source: SourceArg,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// White-noise strength for the depolarized source.
        #[arg(long)]
        p_depol: Option<f64>,
        /// Density operator file for the custom source.
        #[arg(long)]
        state_json: Option<PathBuf>,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Input(String),
    Io(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Io(_) => 3,
            CliError::Domain(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Io(m) | CliError::Domain(m) => m,
        }
    }
}

impl From<SubspaceError> for CliError {
    fn from(e: SubspaceError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GhzwError> for CliError {
    fn from(e: GhzwError) -> Self {
        match e {
            GhzwError::Domain { .. } | GhzwError::WeightRange(_) | GhzwError::WeightSum(_) => {
                CliError::Domain(e.to_string())
            }
            GhzwError::ZeroGap => CliError::Domain("strategy has zero gap".to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ProtocolError> for CliError {
    fn from(e: ProtocolError) -> Self {
        match e {
            ProtocolError::Ghzw(inner) => inner.into(),
            ProtocolError::EmptyConfig => CliError::Domain(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// 12 significant digits, locale independent.
fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

fn ket_json(k: &Ket) -> Vec<[f64; 2]> {
    k.amps().iter().map(|a| [a.re, a.im]).collect()
}

fn mat_json(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect()
}

#[derive(Serialize)]
struct ProductsOut {
    infinite: bool,
    states: Vec<Vec<[f64; 2]>>,
    multiplicities: Vec<u32>,
}

impl ProductsOut {
    fn from(ps: &ProductStateSet) -> Self {
        ProductsOut {
            infinite: ps.infinite,
            states: ps.states.iter().map(ket_json).collect(),
            multiplicities: ps.multiplicities.clone(),
        }
    }
}

#[derive(Serialize)]
struct ClassifyOut {
    version: String,
    orthonormalized: bool,
    verdict: Verdict,
    overlap: f64,
    gap: f64,
    products_in_subspace: ProductsOut,
    products_in_complement: ProductsOut,
    omega: Vec<Vec<[f64; 2]>>,
    fooling_state: Option<Vec<[f64; 2]>>,
}

fn cmd_classify(input: &Path) -> Result<(), CliError> {
    let text = read_file(input)?;
    let (v, adjusted) = Subspace2::from_json(&text)?;
    let cls = classify(&v)?;
    let op = build_strategy(&cls, &v)?;
    let out = ClassifyOut {
        version: VERSION.to_string(),
        orthonormalized: adjusted,
        verdict: cls.verdict,
        overlap: cls.overlap,
        gap: op.gap,
        products_in_subspace: ProductsOut::from(&cls.products_in_v),
        products_in_complement: ProductsOut::from(&cls.products_in_vperp),
        omega: mat_json(&op.omega),
        fooling_state: op.fooling_state.as_ref().map(ket_json),
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&out).expect("serializable")
    );
    Ok(())
}

fn build_strategy3(kind: StrategyKind, mu: f64) -> Result<Strategy3, CliError> {
    Ok(match kind {
        StrategyKind::Xz => omega_xz(mu)?,
        StrategyKind::Rotation => omega_rotation(mu)?,
    })
}

fn default_mu(kind: StrategyKind) -> f64 {
    match kind {
        StrategyKind::Xz => BEST_XZ_WEIGHT,
        StrategyKind::Rotation => OPTIMAL_ROTATION_WEIGHT,
    }
}

fn strategy_name(kind: StrategyKind) -> &'static str {
    match kind {
        StrategyKind::Xz => "xz",
        StrategyKind::Rotation => "rotation",
    }
}

#[derive(Serialize)]
struct GapOut {
    version: String,
    strategy: String,
    mu: f64,
    nu: f64,
    lambda_max: f64,
    weights: Vec<f64>,
    top_state: Vec<[f64; 2]>,
}

fn cmd_gap(kind: StrategyKind, mu: Option<f64>, out: Option<&Path>) -> Result<(), CliError> {
    let mu = mu.unwrap_or_else(|| default_mu(kind));
    let strategy = build_strategy3(kind, mu)?;
    let report = spectral_gap(&strategy);
    let payload = GapOut {
        version: VERSION.to_string(),
        strategy: strategy_name(kind).to_string(),
        mu,
        nu: report.nu,
        lambda_max: report.lambda_max,
        weights: report.mu.clone(),
        top_state: ket_json(&report.top_vector),
    };
    let text = serde_json::to_string_pretty(&payload).expect("serializable");
    match out {
        Some(path) => {
            write_file(path, &text)?;
            println!(
                "{}: nu = {} at mu = {} (written to {})",
                strategy_name(kind),
                sig12(report.nu),
                sig12(mu),
                path.display()
            );
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn sweep_grid(step: f64) -> Vec<f64> {
    let mut grid = Vec::new();
    let mut j = 0u64;
    loop {
        let mu = j as f64 * step;
        if mu >= 1.0 - 1e-12 {
            break;
        }
        grid.push(mu);
        j += 1;
    }
    grid.push(1.0);
    grid
}

fn cmd_sweep(kind: StrategyKind, step: Option<f64>, out: &Path) -> Result<(), CliError> {
    let step = step.unwrap_or(match kind {
        StrategyKind::Xz => 0.001,
        StrategyKind::Rotation => 0.05,
    });
    if !(step > 0.0 && step <= 0.5) {
        return Err(CliError::Domain(format!(
            "step must lie in (0, 0.5], got {step}"
        )));
    }
    let mut csv = String::from("mu,nu\n");
    let mut best = (0.0, f64::NEG_INFINITY);
    for mu in sweep_grid(step) {
        let nu = spectral_gap(&build_strategy3(kind, mu)?).nu;
        csv.push_str(&format!("{},{}\n", sig12(mu), sig12(nu)));
        if nu > best.1 {
            best = (mu, nu);
        }
    }
    write_file(out, &csv)?;
    println!(
        "{}: max nu = {} at mu = {} ({} written)",
        strategy_name(kind),
        sig12(best.1),
        sig12(best.0),
        out.display()
    );
    Ok(())
}

fn cmd_samples(
    eps_min: f64,
    eps_max: f64,
    step: f64,
    delta: f64,
    exact: bool,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if !(eps_min > 0.0 && eps_min <= eps_max && eps_max < 1.0) {
        return Err(CliError::Domain(format!(
            "epsilon range must satisfy 0 < eps-min <= eps-max < 1, got [{eps_min}, {eps_max}]"
        )));
    }
    if step <= 0.0 || step.is_nan() {
        return Err(CliError::Domain(format!(
            "step must be positive, got {step}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(CliError::Domain(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    let mode = if exact {
        SampleMode::Exact
    } else {
        SampleMode::Approx
    };
    let nu_r = spectral_gap(&omega_rotation(OPTIMAL_ROTATION_WEIGHT)?).nu;
    let nu_xz = spectral_gap(&omega_xz(BEST_XZ_WEIGHT)?).nu;
    let mut csv = String::from("eps,N_G,N_XZ,N_R\n");
    let mut k = 0u64;
    loop {
        let eps = eps_min + k as f64 * step;
        if eps > eps_max + step * 0.5 {
            break;
        }
        let eps = eps.min(eps_max);
        let n_g = sample_complexity(1.0, eps, delta, mode)?;
        let n_xz = sample_complexity(nu_xz, eps, delta, mode)?;
        let n_r = sample_complexity(nu_r, eps, delta, mode)?;
        csv.push_str(&format!("{},{n_g},{n_xz},{n_r}\n", sig12(eps)));
        k += 1;
    }
    match out {
        Some(path) => {
            write_file(path, &csv)?;
            println!("samples table written to {}", path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct SimulateOut {
    version: String,
    strategy: String,
    mu: f64,
    nu: f64,
    source: String,
    eps: f64,
    delta: f64,
    rounds: u64,
    trials: u64,
    seed: u64,
    report: SimReport,
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    kind: StrategyKind,
    mu: Option<f64>,
    source: SourceArg,
    eps: f64,
    delta: f64,
    trials: u64,
    seed: u64,
    p_depol: Option<f64>,
    state_json: Option<&Path>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let mu = mu.unwrap_or_else(|| default_mu(kind));
    let strategy = build_strategy3(kind, mu)?;
    let gap = spectral_gap(&strategy);
    if trials == 0 {
        return Err(CliError::Domain("trials must be at least 1".to_string()));
    }

    let (source_name, state_source) = match source {
        SourceArg::Ideal => ("ideal", StateSource::ideal(&ghz_state())?),
        SourceArg::WorstCase => {
            if gap.nu < 1e-12 {
                return Err(CliError::Domain("strategy has zero gap".to_string()));
            }
            ("worst-case", StateSource::worst_case(&strategy, eps)?)
        }
        SourceArg::Depolarized => (
            "depolarized",
            StateSource::depolarized(&ghz_state(), p_depol.unwrap_or(0.1))?,
        ),
        SourceArg::Custom => {
            let path = state_json
                .ok_or_else(|| CliError::Input("custom source needs --state-json".to_string()))?;
            let rho = DensityOp::from_json(&read_file(path)?)?;
            ("custom", StateSource::custom(rho))
        }
    };

    let rounds = sample_complexity(gap.nu, eps, delta, SampleMode::Exact)?;
    let config = SimConfig {
        strategy,
        source: state_source,
        rounds,
        trials,
        seed,
    };
    let report = run_protocol(&config)?;
    let payload = SimulateOut {
        version: VERSION.to_string(),
        strategy: strategy_name(kind).to_string(),
        mu,
        nu: gap.nu,
        source: source_name.to_string(),
        eps,
        delta,
        rounds,
        trials,
        seed,
        report,
    };
    let text = serde_json::to_string_pretty(&payload).expect("serializable");
    match out {
        Some(path) => {
            write_file(path, &text)?;
            println!(
                "accept rate {} over {} trials (written to {})",
                payload.report.accept_rate,
                trials,
                path.display()
            );
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Classify { input } => cmd_classify(&input),
        Command::Gap { strategy, mu, out } => cmd_gap(strategy, mu, out.as_deref()),
        Command::Sweep {
            strategy,
            step,
            out,
        } => cmd_sweep(strategy, step, &out),
        Command::Samples {
            eps_min,
            eps_max,
            step,
            delta,
            exact,
            out,
        } => cmd_samples(eps_min, eps_max, step, delta, exact, out.as_deref()),
        Command::Simulate {
            strategy,
            mu,
            source,
            eps,
            delta,
            trials,
            seed,
            p_depol,
            state_json,
            out,
        } => cmd_simulate(
            strategy,
            mu,
            source,
            eps,
            delta,
            trials,
            seed,
            p_depol,
            state_json.as_deref(),
            out.as_deref(),
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
