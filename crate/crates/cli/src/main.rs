//! `ddf` — CSV-emitting front end for the dunkl-deng-fan library.
//!
//! Subcommands: `potential`, `spectrum`, `sweep-mu`, `wavefunction`,
//! `validate`. Every run is deterministic: identical invocations produce
//! byte-identical files.
//!
//! Exit codes: 0 success, 1 validation failure (including absent bound
//! states), 2 configuration error, 3 I/O error. Configuration precedence is
//! command-line flag over config-file entry over built-in default.

mod commands;
mod config;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use dunkl_deng_fan::model::CentrifugalConvention;
use dunkl_deng_fan::nu::SpectrumMode;

#[derive(Parser)]
#[command(
    name = "ddf",
    version,
    about = "Bound states of a Dunkl-deformed radial equation with a Deng-Fan-form well: \
             spectra, densities, and a three-way verification pipeline"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    shared: SharedArgs,
}

#[derive(Args, Debug, Clone)]
struct SharedArgs {
    /// Well depth D_e in hartree [default 15.0]
    #[arg(long, global = true)]
    de: Option<f64>,
    /// Screening parameter lambda in 1/bohr [default 0.5]
    #[arg(long, global = true)]
    lambda: Option<f64>,
    /// Equilibrium distance r_e in bohr [default 1.0]
    #[arg(long, global = true)]
    re: Option<f64>,
    /// Reduced mass in electron masses [default 1.0]
    #[arg(long, global = true)]
    mass: Option<f64>,
    /// Dunkl deformation parameter mu > -1/2 [default 0.0]
    #[arg(long, global = true)]
    mu: Option<f64>,
    /// Orbital quantum number ell [default 0]
    #[arg(long, global = true)]
    ell: Option<u32>,
    /// Highest radial quantum number in tables [default 2]
    #[arg(long = "n-max", global = true)]
    n_max: Option<u32>,
    /// Highest orbital quantum number in tables [default 0]
    #[arg(long = "ell-max", global = true)]
    ell_max: Option<u32>,
    /// How energies are computed [default paper]
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Centrifugal eigenvalue convention [default radial-eq]
    #[arg(long, global = true, value_enum)]
    convention: Option<ConventionArg>,
    /// Normalize densities with the r^(2mu+1) measure (the default)
    #[arg(long, global = true)]
    weighted: bool,
    /// Normalize densities with the plain dr measure
    #[arg(long, global = true, conflicts_with = "weighted")]
    unweighted: bool,
    /// Output path: a file for table commands, a directory for validate
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Flat `key = value` config file with `#` comments
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Closed-form spectrum expression, evaluated verbatim
    Paper,
    /// Numerical root of the series-termination condition
    SelfConsistent,
    /// Finite-difference eigensolver
    Oracle,
}

impl From<ModeArg> for SpectrumMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Paper => SpectrumMode::ClosedForm,
            ModeArg::SelfConsistent => SpectrumMode::SelfConsistent,
            ModeArg::Oracle => SpectrumMode::Oracle,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    /// gamma = ell(ell + 2 mu + 1)
    RadialEq,
    /// gamma = mu(2 ell + 1) + ell(ell + 1)
    ResultsSec,
}

impl From<ConventionArg> for CentrifugalConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::RadialEq => CentrifugalConvention::RadialEquation,
            ConventionArg::ResultsSec => CentrifugalConvention::ResultsSection,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the molecular well and a curvature-matched Morse comparison
    Potential {
        /// Number of grid points (default: 120 points on r_e·[1/20, 6])
        #[arg(long)]
        points: Option<u32>,
        /// Smallest radius of a custom grid
        #[arg(long = "r-min")]
        r_min: Option<f64>,
        /// Largest radius of a custom grid
        #[arg(long = "r-max")]
        r_max: Option<f64>,
    },
    /// Tabulate energies over n <= n-max, ell <= ell-max in the chosen mode
    Spectrum,
    /// Sweep mu and tabulate E_00, E_10, E_20
    SweepMu {
        /// Smallest mu of the sweep [default 0.0]
        #[arg(long = "mu-min")]
        mu_min: Option<f64>,
        /// Largest mu of the sweep [default 3.0]
        #[arg(long = "mu-max")]
        mu_max: Option<f64>,
        /// Sweep step [default 0.25]
        #[arg(long = "mu-step")]
        mu_step: Option<f64>,
    },
    /// Tabulate radial probability densities for a list of mu values
    Wavefunction {
        /// Comma-separated mu list [default 0,1.5,3]
        #[arg(long = "mu-values")]
        mu_values: Option<String>,
        /// Radial quantum number of the state [default 0]
        #[arg(long)]
        n: Option<u32>,
        /// Rows in the emitted grid [default 1200]
        #[arg(long)]
        points: Option<u32>,
        /// Largest radius of the grid [default: localization-scaled]
        #[arg(long = "r-max")]
        r_max: Option<f64>,
    },
    /// Run the verification pipeline; write the report and CSV tables
    Validate {
        /// Base oracle grid intervals [default 2000]; small values fail
        #[arg(long = "oracle-points")]
        oracle_points: Option<usize>,
        /// Random draws for the alpha9 check [default 1000]
        #[arg(long)]
        draws: Option<usize>,
    },
}

/// Error with the process exit code it maps to.
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let ctx = commands::Context::resolve(&cli.shared)?;
    match cli.command {
        Command::Potential {
            points,
            r_min,
            r_max,
        } => commands::cmd_potential(&ctx, points, r_min, r_max),
        Command::Spectrum => commands::cmd_spectrum(&ctx),
        Command::SweepMu {
            mu_min,
            mu_max,
            mu_step,
        } => commands::cmd_sweep_mu(&ctx, mu_min, mu_max, mu_step),
        Command::Wavefunction {
            mu_values,
            n,
            points,
            r_max,
        } => commands::cmd_wavefunction(&ctx, mu_values, n, points, r_max),
        Command::Validate {
            oracle_points,
            draws,
        } => commands::cmd_validate(&ctx, oracle_points, draws),
    }
}
