//! `geoqsl`: speed-limit bounds, simplex scans, the decay-chain experiment
//! and a seeded self-test from the command line.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 configuration error, 3 numerical
//! validation failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use geoqsl::geometry::{geometry_report, GeometryReport, TangentOperator};
use geoqsl::operator::{ComplexMatrix, DensityMatrix, HermitianOperator};
use geoqsl::scan::config::parse_json;
use geoqsl::scan::{experiment_csv, run_experiment, scan_energy_bounds, scan_fast_h, scan_xi};
use geoqsl::scan::{ExperimentConfig, ScanConfig, ScanOutput};
use geoqsl::selftest::run_selftest;
use geoqsl::speed::{bound_split, BoundReport};
use geoqsl::{Error, MonotoneFunction};

#[derive(Parser, Debug)]
#[command(name = "geoqsl", version, about = "Generalized geometric quantum speed limits on observables")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON scenario file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file; a `.summary.json` sidecar is written next to scan output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Metric: a decimal in [-1, 1] or one of sld, wy, rld, log.
    #[arg(long, global = true, allow_hyphen_values = true)]
    beta: Option<String>,

    /// Simplex grid step, overriding the scenario.
    #[arg(long, global = true)]
    grid_step: Option<f64>,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for random self-test instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bounds for one (state, tangent or Hamiltonian, observable) triple.
    Bound,
    /// Minimize the coherent ratio over beta at every simplex point.
    ScanXi,
    /// Speed gain of beta-optimal fast Hamiltonians over the SLD one.
    ScanFastH,
    /// Energy-variance bound relative to the ordinary-variance bound.
    ScanEnergy,
    /// Decay-chain preparation, drive and short-window speed fit.
    Experiment,
    /// Oracle equivalence and bound validity on random instances.
    Selftest {
        #[arg(long, default_value_t = 200)]
        instances: usize,
    },
}

enum Failure {
    Io(String),
    Config(String),
    Numerical(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Config(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Config(m) | Failure::Numerical(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(io) => Failure::Io(io.to_string()),
            e if e.is_config() => Failure::Config(e.to_string()),
            e => Failure::Numerical(e.to_string()),
        }
    }
}

/// Single-triple input for `bound`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundInput {
    state: ComplexMatrix,
    observable: ComplexMatrix,
    hamiltonian: Option<ComplexMatrix>,
    tangent: Option<ComplexMatrix>,
    beta: Option<MonotoneFunction>,
}

#[derive(Serialize)]
struct BoundOutput {
    report: BoundReport,
    geometry: GeometryReport,
}

fn read_config(path: Option<&Path>) -> Result<Option<String>, Failure> {
    match path {
        None => Ok(None),
        Some(p) => fs::read_to_string(p).map(Some).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
    }
}

fn parse_beta(text: &str) -> Result<MonotoneFunction, Failure> {
    text.parse().map_err(|e: Error| Failure::Config(format!("--beta: {e}")))
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("summary.json")
}

fn emit_scan(cli: &Cli, output: &ScanOutput) -> Result<(), Failure> {
    write_out(cli.out.as_deref(), &output.to_csv())?;
    let summary = serde_json::to_string(&output.summary()).expect("plain data");
    match cli.out.as_deref() {
        Some(p) => {
            let side = sidecar_path(p);
            fs::write(&side, summary + "\n").map_err(|e| Failure::Io(format!("{}: {e}", side.display())))
        }
        None => {
            eprintln!("{summary}");
            Ok(())
        }
    }
}

fn scan_config(cli: &Cli) -> Result<ScanConfig, Failure> {
    let mut config = match read_config(cli.config.as_deref())? {
        Some(text) => ScanConfig::from_json(&text)?,
        None => ScanConfig::default(),
    };
    if let Some(step) = cli.grid_step {
        config.grid.step = step;
    }
    if let Some(b) = &cli.beta {
        config.beta = Some(parse_beta(b)?);
    }
    Ok(config)
}

fn run_bound(cli: &Cli) -> Result<(), Failure> {
    let text = read_config(cli.config.as_deref())?.ok_or_else(|| {
        Failure::Config("bound needs --config with state, observable and hamiltonian or tangent".into())
    })?;
    let input: BoundInput = parse_json(&text)?;
    let config_err = |what: &str, e: Error| Failure::Config(format!("{what}: {e}"));
    let rho = DensityMatrix::new(input.state).map_err(|e| config_err("state", e))?;
    let a = HermitianOperator::new(input.observable).map_err(|e| config_err("observable", e))?;
    let rdot = match (input.hamiltonian, input.tangent) {
        (Some(h), None) => {
            let h = HermitianOperator::new(h).map_err(|e| config_err("hamiltonian", e))?;
            TangentOperator::commutator(&rho, &h).map_err(|e| config_err("hamiltonian", e))?
        }
        (None, Some(t)) => TangentOperator::new(t).map_err(|e| config_err("tangent", e))?,
        _ => return Err(Failure::Config("give exactly one of `hamiltonian` or `tangent`".into())),
    };
    let f = match &cli.beta {
        Some(b) => parse_beta(b)?,
        None => input.beta.unwrap_or(MonotoneFunction::SLD),
    };
    let out =
        BoundOutput { report: bound_split(&rho, &rdot, &a, &f)?, geometry: geometry_report(&rho, &rdot, &a, &f)? };
    write_out(cli.out.as_deref(), &(serde_json::to_string_pretty(&out).expect("plain data") + "\n"))
}

fn run_experiment_cmd(cli: &Cli) -> Result<(), Failure> {
    let mut config = match read_config(cli.config.as_deref())? {
        Some(text) => ExperimentConfig::from_json(&text)?,
        None => ExperimentConfig::default(),
    };
    if let Some(b) = &cli.beta {
        config.beta_list.push(parse_beta(b)?);
    }
    let rows = run_experiment(&config)?;
    write_out(cli.out.as_deref(), &experiment_csv(&rows, &config.extra_betas()))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Bound => run_bound(cli),
        Command::ScanXi => emit_scan(cli, &scan_xi(&scan_config(cli)?)?),
        Command::ScanFastH => emit_scan(cli, &scan_fast_h(&scan_config(cli)?)?),
        Command::ScanEnergy => emit_scan(cli, &scan_energy_bounds(&scan_config(cli)?)?),
        Command::Experiment => run_experiment_cmd(cli),
        Command::Selftest { instances } => {
            let report = run_selftest(cli.seed, *instances)?;
            write_out(cli.out.as_deref(), &(serde_json::to_string_pretty(&report).expect("plain data") + "\n"))?;
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Numerical("self-test failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
