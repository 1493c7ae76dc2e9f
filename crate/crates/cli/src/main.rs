//! Deterministic command-line front end.
//!
//! Exit codes: 0 success, 1 claim failure, 2 usage error, 3 numerical
//! failure. Output is byte-identical for identical flags; randomized checks
//! take `--seed` (default 0).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use adiasearch::schedule::ScheduleKind;
use adiasearch::Error as CoreError;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Claim(String),
    Numerical(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Claim(_) => 1,
            CliError::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Claim(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        let msg = err.to_string();
        match err {
            CoreError::Integration(_)
            | CoreError::StepUnderflow { .. }
            | CoreError::QuadratureNonConvergence { .. }
            | CoreError::LambdaNotIndependent { .. } => CliError::Numerical(msg),
            CoreError::SweepPoint { source, .. } => match *source {
                CoreError::Integration(_) | CoreError::StepUnderflow { .. } => {
                    CliError::Numerical(msg)
                }
                _ => CliError::Usage(msg),
            },
            _ => CliError::Usage(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {err}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Constant,
    ConstantPrimed,
    Fast,
    FastPrimed,
    Standard,
}

impl FamilyArg {
    pub fn kind(self) -> ScheduleKind {
        match self {
            FamilyArg::Constant => ScheduleKind::Constant,
            FamilyArg::ConstantPrimed => ScheduleKind::ConstantPrimed,
            FamilyArg::Fast => ScheduleKind::Fast,
            FamilyArg::FastPrimed => ScheduleKind::FastPrimed,
            FamilyArg::Standard => ScheduleKind::Standard,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SpacingArg {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConventionArg {
    AsWritten,
    Complemented,
}

#[derive(Debug, Parser)]
#[command(
    name = "adiasearch",
    about = "Simulation and verification of adiabatic and gate-model fixed-point search",
    version
)]
pub struct Cli {
    /// Optional key=value config file; explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Seed for the randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for sweeps and verification (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit t,s,ds_dt samples of one schedule family.
    Schedule {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        w: f64,
        #[arg(long, default_value_t = 201)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Integrate the Schrödinger equation for one (schedule, λ).
    Simulate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        w: f64,
        #[arg(long)]
        lambda: f64,
        /// Target phase advance per step.
        #[arg(long, default_value_t = 0.01, conflicts_with = "step")]
        phase: f64,
        /// Fixed step size instead of phase control.
        #[arg(long)]
        step: Option<f64>,
        /// Integrate in the rotating frame instead of the lab frame.
        #[arg(long)]
        phi_frame: bool,
        /// Trajectory samples to record.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        /// Write the trajectory CSV here.
        #[arg(long, value_name = "FILE")]
        trajectory: Option<PathBuf>,
    },
    /// λ-sweep CSV with per-row bounds and dominance flags.
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        w: f64,
        /// Grid minimum (defaults to w).
        #[arg(long)]
        grid_min: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        grid_max: f64,
        #[arg(long, default_value_t = 50)]
        grid_count: usize,
        #[arg(long, value_enum, default_value_t = SpacingArg::Linear)]
        spacing: SpacingArg,
    },
    /// Evaluate every applicable bound at one (schedule, λ).
    Bounds {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        w: f64,
        #[arg(long)]
        lambda: f64,
        /// Also evaluate the Trotterized bound at this step size.
        #[arg(long)]
        dt: Option<f64>,
    },
    /// Run the Trotterized gate-model simulation.
    Gate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        w: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        dt: f64,
        /// Append one exact-endpoint step at s = 1.
        #[arg(long)]
        final_step: bool,
        /// Write the angle sequence CSV here.
        #[arg(long, value_name = "FILE")]
        emit_angles: Option<PathBuf>,
    },
    /// Relatively-prime state preparation as a search instance.
    Relprime {
        #[arg(long)]
        j: u64,
        #[arg(long)]
        epsilon: f64,
        /// Run the gate model at this step size instead of the adiabatic run.
        #[arg(long)]
        gate_dt: Option<f64>,
    },
    /// Oblivious amplitude amplification on a dense statevector.
    Oaa {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        w: f64,
        /// Gate-mode step size.
        #[arg(long, default_value_t = 0.1)]
        dt: f64,
        /// Integrate the interpolated projector Hamiltonian instead of
        /// applying the gate sequence.
        #[arg(long)]
        adiabatic: bool,
        #[arg(long, value_enum, default_value_t = ConventionArg::AsWritten)]
        convention: ConventionArg,
    },
    /// Run claim suites and emit a machine-readable report.
    Verify {
        /// Suites to run (repeatable; default all).
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
    /// Emit the three-family schedule comparison at w = 1/20 plus the
    /// run-time-vs-w table.
    Figure2 {
        #[arg(long, default_value = "figure2")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 501)]
        samples: usize,
    },
}

/// Applies `key=value` lines from the config file as defaults: every key
/// becomes `--key value` unless that flag is already present.
fn merge_config(mut args: Vec<String>) -> CliResult<Vec<String>> {
    let path = args
        .iter()
        .position(|a| a == "--config")
        .and_then(|i| args.get(i + 1).cloned())
        .or_else(|| {
            args.iter()
                .find_map(|a| a.strip_prefix("--config=").map(str::to_string))
        });
    let Some(path) = path else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::Usage(format!("cannot read config {path}: {e}")))?;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!(
                "{path}:{}: expected key=value, got '{line}'",
                lineno + 1
            )));
        };
        let flag = format!("--{}", key.trim().replace('_', "-"));
        let already = args
            .iter()
            .any(|a| a == &flag || a.starts_with(&format!("{flag}=")));
        if !already {
            args.push(flag);
            args.push(value.trim().to_string());
        }
    }
    Ok(args)
}

fn main() -> ExitCode {
    let raw: Vec<String> = std::env::args().collect();
    let merged = match merge_config(raw) {
        Ok(args) => args,
        Err(err) => {
            eprintln!("error: {}", err.message());
            return ExitCode::from(err.code());
        }
    };
    let cli = match Cli::try_parse_from(merged) {
        Ok(cli) => cli,
        Err(err) => {
            // clap prints help/usage itself; exit 2 on genuine parse errors.
            let _ = err.print();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(2),
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .is_err()
        {
            // pool already installed (tests); keep going
        }
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}
