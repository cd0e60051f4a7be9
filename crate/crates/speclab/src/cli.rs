//! Command-line front end: local-spectrum analysis, verification suites,
//! growth sweeps, and report merging.
//!
//! Exit codes: 0 when every requested check passed, 1 when a verification
//! ran to completion and failed, 2 for usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config;
use crate::derivation::{conjugation_orbit, symmetric_grid, DerivationContext};
use crate::error::Error;
use crate::io::{
    self, AnalyzeReport, GrowthJson, MergedReport, SweepData, SweepRow,
};
use crate::linalg::{spectral_decomposition, NormFamily};
use crate::local_spectrum::{
    carleman_scan, local_spectrum_from, orbit_growth, local_spectral_radius_power,
    OrbitEvaluator,
};
use crate::suites::{run_all, run_suite, SuiteConfig, SuiteId, SuiteReport};

#[derive(Debug, Parser)]
#[command(
    name = "speclab",
    version,
    about = "Local spectra, orbit growth, weighted calculus, and derivation orbits for matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Local spectrum, radius, and growth certificate for a matrix/vector pair.
    Analyze(AnalyzeArgs),
    /// Run a named verification suite from the statement catalog, or `all`.
    Verify(VerifyArgs),
    /// Sample an orbit over a time grid and export the fitted envelope.
    Sweep(SweepArgs),
    /// Merge verification reports, deduplicating by run id.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NormArg {
    L1,
    L2,
    Linf,
}

impl From<NormArg> for NormFamily {
    fn from(n: NormArg) -> NormFamily {
        match n {
            NormArg::L1 => NormFamily::L1,
            NormArg::L2 => NormFamily::L2,
            NormArg::Linf => NormFamily::LInf,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Matrix file: `{"dim": n, "entries": [[re, im], ...]}`, row-major.
    #[arg(long)]
    input: PathBuf,
    /// Vector file: `{"entries": [[re, im], ...]}`.
    #[arg(long)]
    vector: PathBuf,
    /// Norm family for the reported vector norms.
    #[arg(long, value_enum, default_value_t = NormArg::L2)]
    norm: NormArg,
    /// Seed recorded in the report (the analysis itself is deterministic).
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format (`analyze` supports json only).
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Suite name (thm2.1, cor2.8, cor2.9, lem2.12, thm2.11, cor2.13,
    /// thm2.14, prop2.5, thm3.1, prop3.5, prop3.7) or `all`.
    #[arg(long)]
    suite: String,
    /// Base seed for instance generation.
    #[arg(long)]
    seed: Option<u64>,
    /// Weight exponent override for suites that rotate through weights.
    #[arg(long)]
    alpha: Option<f64>,
    /// Norm family override for suites that rotate through norms.
    #[arg(long, value_enum)]
    norm: Option<NormArg>,
    /// Write the full report here (json) or its summary (csv).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Matrix file for a vector-orbit sweep `t -> ||e^{tT} x||`.
    #[arg(long, requires = "vector", conflicts_with = "pair")]
    input: Option<PathBuf>,
    /// Vector file for the vector-orbit sweep.
    #[arg(long)]
    vector: Option<PathBuf>,
    /// Two matrix files `A T`: sweep the conjugation orbit
    /// `t -> ||e^{tA} T e^{-tA}||`.
    #[arg(long, num_args = 2, value_names = ["A", "T"])]
    pair: Option<Vec<PathBuf>>,
    /// Norm family for the sampled values.
    #[arg(long, value_enum, default_value_t = NormArg::L2)]
    norm: NormArg,
    /// Half-width of the symmetric time grid.
    #[arg(long = "t-max", default_value_t = config::DEFAULT_SWEEP_T_MAX)]
    t_max: f64,
    /// Grid step.
    #[arg(long, default_value_t = config::DEFAULT_SWEEP_STEP)]
    step: f64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Report files to merge: single-suite or already-merged documents.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Write the merged document here (json) or its summary (csv).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

/// Parses the process arguments, runs the command, and returns the exit
/// code. The binary is a single call to this.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<bool, Error> {
    match &cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Report(args) => cmd_report(args),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<bool, Error> {
    if args.format == FormatArg::Csv {
        return Err(Error::Input(
            "analyze emits a JSON document; csv is only for sweeps and summaries".into(),
        ));
    }
    let m = io::read_matrix(&args.input)?;
    let x = io::read_vector(&args.vector)?;
    if x.dim() != m.dim() {
        return Err(Error::Input(format!(
            "dimension mismatch: matrix is {0}x{0}, vector has {1} entries",
            m.dim(),
            x.dim()
        )));
    }
    let family: NormFamily = args.norm.into();
    let cluster_tol = config::DEFAULT_CLUSTER_TOL;
    let decomp = spectral_decomposition(&m, cluster_tol)?;
    let spectrum = local_spectrum_from(&decomp, &x, cluster_tol);
    let power = local_spectral_radius_power(&m, &x, config::RADIUS_POWER_N_MAX)?;
    let cert = orbit_growth(&m, &x, config::GRID_T_MAX, config::GRID_STEP)?;

    // Resolvent slope scan over the frequency band of the exact spectrum,
    // padded by one unit; an independent cross-check on the projections.
    let band = spectrum
        .points
        .iter()
        .fold((0.0f64, 0.0f64), |(lo, hi), p| (lo.min(p.im), hi.max(p.im)));
    let mut grid = Vec::new();
    let mut lambda = band.0 - 1.0;
    while lambda <= band.1 + 1.0 {
        grid.push(lambda);
        lambda += 0.25;
    }
    let scan = carleman_scan(&m, &x, &x, &grid, &config::CARLEMAN_OFFSETS)?;

    let report = AnalyzeReport {
        dim: m.dim(),
        norm: family.to_string(),
        seed: args.seed.unwrap_or(config::DEFAULT_SEED),
        cluster_tol,
        local_spectrum: io::spectrum_points(&spectrum),
        radius: spectrum.radius(),
        radius_power_estimate: power.estimate,
        growth: GrowthJson::from_certificate(&cert),
        scan_candidates: scan
            .spectrum
            .points
            .iter()
            .map(|p| [p.re, p.im])
            .collect(),
        x_norm: x.norm(family),
        image_norm: m.mul_vec(&x).norm(family),
    };
    emit(args.out.as_deref(), &io::to_json_string(&report)?)?;
    Ok(true)
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, Error> {
    let cfg = SuiteConfig {
        seed: args.seed.unwrap_or(config::DEFAULT_SEED),
        alpha: args.alpha,
        norm: args.norm.map(Into::into),
    };
    let reports: Vec<SuiteReport> = if args.suite == "all" {
        run_all(&cfg)?
    } else {
        let id: SuiteId = args.suite.parse()?;
        vec![run_suite(id, &cfg)?]
    };
    for r in &reports {
        println!(
            "{} [seed {:#x}]: {} cases, {} passed, {} failed, {} not applicable -> {}",
            r.suite,
            r.seed,
            r.cases.len(),
            r.passed,
            r.failed,
            r.not_applicable,
            if r.all_passed() { "PASS" } else { "FAIL" }
        );
    }
    let merged = io::merge_runs(reports)?;
    if let Some(path) = &args.out {
        match args.format {
            FormatArg::Json => io::write_json(path, &merged)?,
            FormatArg::Csv => fs::write(path, io::summary_csv(&merged))?,
        }
    }
    Ok(merged.failed_runs() == 0)
}

fn cmd_sweep(args: &SweepArgs) -> Result<bool, Error> {
    if !(args.t_max > 0.0) || !(args.step > 0.0) || args.step > args.t_max {
        return Err(Error::Input(format!(
            "need 0 < step <= t-max, got step {} and t-max {}",
            args.step, args.t_max
        )));
    }
    let family: NormFamily = args.norm.into();
    let data = match (&args.input, &args.vector, &args.pair) {
        (Some(matrix_path), Some(vector_path), None) => {
            let m = io::read_matrix(matrix_path)?;
            let x = io::read_vector(vector_path)?;
            if x.dim() != m.dim() {
                return Err(Error::Input(format!(
                    "dimension mismatch: matrix is {0}x{0}, vector has {1} entries",
                    m.dim(),
                    x.dim()
                )));
            }
            // The certificate needs a wide window for a stable fit even if
            // the exported grid is narrow.
            let cert = orbit_growth(&m, &x, args.t_max.max(10.0), args.step)?;
            let decomp = spectral_decomposition(&m, config::DEFAULT_CLUSTER_TOL)?;
            let evaluator = OrbitEvaluator::new(&m, &decomp, &x);
            let rows = symmetric_grid(args.t_max, args.step)
                .into_iter()
                .map(|t| SweepRow {
                    t,
                    norm: evaluator.evaluate(t).norm(family),
                    bound: cert.bound(t),
                })
                .collect();
            SweepData {
                kind: "vector_orbit".into(),
                fitted_alpha: cert.fitted_alpha,
                fitted_c: cert.fitted_c,
                exponential: !cert.polynomial_bidirectional,
                rows,
            }
        }
        (None, None, Some(pair)) => {
            let a = io::read_matrix(&pair[0])?;
            let t_op = io::read_matrix(&pair[1])?;
            if a.dim() != t_op.dim() {
                return Err(Error::Input(format!(
                    "dimension mismatch: pair files are {}x{} and {}x{}",
                    a.dim(),
                    a.dim(),
                    t_op.dim(),
                    t_op.dim()
                )));
            }
            let ctx = DerivationContext::new(&a, family)?;
            let orbit = conjugation_orbit(&ctx, &t_op, &symmetric_grid(args.t_max, args.step))?;
            let alpha_env = orbit.fitted_alpha.max(0.0);
            let rows = orbit
                .samples
                .iter()
                .map(|&(t, norm)| SweepRow {
                    t,
                    norm,
                    bound: orbit.fitted_c * (1.0 + t.abs()).powf(alpha_env),
                })
                .collect();
            SweepData {
                kind: "conjugation_orbit".into(),
                fitted_alpha: orbit.fitted_alpha,
                fitted_c: orbit.fitted_c,
                exponential: orbit.exponential,
                rows,
            }
        }
        _ => {
            return Err(Error::Input(
                "sweep needs either --input with --vector, or --pair A T".into(),
            ))
        }
    };
    let text = match args.format {
        FormatArg::Csv => io::sweep_csv(&data),
        FormatArg::Json => io::to_json_string(&data)?,
    };
    emit(args.out.as_deref(), &text)?;
    Ok(true)
}

fn cmd_report(args: &ReportArgs) -> Result<bool, Error> {
    let mut runs: Vec<SuiteReport> = Vec::new();
    for path in &args.inputs {
        runs.extend(io::read_report_runs(path)?);
    }
    let merged: MergedReport = io::merge_runs(runs)?;
    for r in &merged.runs {
        println!(
            "{}: {} cases, {} passed, {} failed, {} not applicable -> {}",
            r.run_id,
            r.cases.len(),
            r.passed,
            r.failed,
            r.not_applicable,
            if r.all_passed() { "PASS" } else { "FAIL" }
        );
    }
    if let Some(path) = &args.out {
        match args.format {
            FormatArg::Json => io::write_json(path, &merged)?,
            FormatArg::Csv => fs::write(path, io::summary_csv(&merged))?,
        }
    }
    Ok(merged.failed_runs() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_line_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn norm_values_parse_as_documented() {
        for (text, family) in [
            ("l1", NormFamily::L1),
            ("l2", NormFamily::L2),
            ("linf", NormFamily::LInf),
        ] {
            let cli = Cli::try_parse_from([
                "speclab", "sweep", "--pair", "a.json", "t.json", "--norm", text,
            ])
            .unwrap();
            match cli.command {
                Command::Sweep(s) => assert_eq!(NormFamily::from(s.norm), family),
                _ => panic!("expected sweep"),
            }
        }
    }

    #[test]
    fn sweep_rejects_mixing_vector_and_pair_modes() {
        let result = Cli::try_parse_from([
            "speclab", "sweep", "--input", "m.json", "--vector", "x.json", "--pair", "a.json",
            "t.json",
        ]);
        assert!(result.is_err());
    }
}
