//! Command-line front end for the `spectra` library.
//!
//! Every subcommand produces a [`RunReport`]; `main` only prints it and exits
//! with its code. Exit codes: 0 when every verdict passes, 1 for failed
//! verdicts or numerical errors, 2 for usage and parse errors.

mod commands;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spectra::{Error, Tolerance};

pub use report::{RunReport, Verdict};

#[derive(Debug, Parser)]
#[command(name = "spectra", version, about = "Spectral decompositions, Fourier analysis on groups, and Riesz certificates")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Seed for every random choice (test matrices, eigenpair restarts).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print `key=value` lines instead of the human-readable report.
    #[arg(long, global = true)]
    pub porcelain: bool,
    /// Absolute tolerance; overrides SPECTRA_TOL, which overrides the default.
    #[arg(long, global = true, env = "SPECTRA_TOL")]
    pub tol: Option<f64>,
    /// Directory for output files (default: beside the input).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Auto,
    Deflation,
    Qr,
}

impl From<MethodArg> for spectra::schur::SchurMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Self::Auto,
            MethodArg::Deflation => Self::Deflation,
            MethodArg::Qr => Self::Qr,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Unitary triangularization; writes u.mat and b.mat.
    Schur {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// One eigenpair, plus the full spectrum when the matrix is Hermitian.
    Eig { input: PathBuf },
    /// Eigenvalues and eigenprojections of a normal matrix.
    Spectral { input: PathBuf },
    /// Lists the characters of a product of cyclic groups.
    GroupDual {
        /// Cyclic factor orders, e.g. `2,3`.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        factors: Vec<u64>,
    },
    /// Fourier transform of a group signal.
    GroupFt {
        input: PathBuf,
        /// Treat the input as coefficients and synthesize the signal.
        #[arg(long)]
        inverse: bool,
    },
    /// Riesz certificate for a finite vector family.
    Riesz {
        input: PathBuf,
        /// Smallest accepted A/B ratio.
        #[arg(long, default_value_t = spectra::riesz::DEFAULT_DEGENERATE_THRESHOLD)]
        threshold: f64,
    },
    /// Fourier coefficients of a sampled function on the circle.
    CircleSeries {
        /// Sample file; omit to use --function.
        #[arg(required_unless_present = "function", conflicts_with = "function")]
        input: Option<PathBuf>,
        /// Built-in test function: constant, character:N, sawtooth, square-wave.
        #[arg(long)]
        function: Option<String>,
        /// Quadrature order Q (defaults to the sample count, or 64).
        #[arg(long)]
        grid: Option<usize>,
        /// Largest |n| in the coefficient window (default (Q-1)/2).
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Runs every invariant suite.
    Selftest,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Schur { .. } => "schur",
            Command::Eig { .. } => "eig",
            Command::Spectral { .. } => "spectral",
            Command::GroupDual { .. } => "group-dual",
            Command::GroupFt { .. } => "group-ft",
            Command::Riesz { .. } => "riesz",
            Command::CircleSeries { .. } => "circle-series",
            Command::Selftest => "selftest",
        }
    }
}

/// Why a command stopped early.
#[derive(Debug)]
pub enum Failure {
    Module(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Module(e)
    }
}

impl Failure {
    fn into_report(self, command: &str) -> RunReport {
        match self {
            Failure::Module(e) => {
                let code = if matches!(e, Error::Parse(_)) { 2 } else { 1 };
                RunReport::failed(command, e.name(), e.to_string(), code)
            }
            Failure::Io(msg) => RunReport::failed(command, "Io", msg, 1),
        }
    }
}

/// Absolute tolerance from `--tol` / `SPECTRA_TOL`, default otherwise.
pub fn resolve_tolerance(abs: Option<f64>) -> Result<Tolerance, Error> {
    match abs {
        Some(abs) => Tolerance::new(abs, Tolerance::DEFAULT_REL),
        None => Ok(Tolerance::default()),
    }
}

/// Parses `argv` (program name first) and runs the chosen subcommand.
pub fn run<I, T>(argv: I) -> RunReport
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                RunReport::failed("usage", "Usage", text, 2)
            } else {
                RunReport {
                    command: "help".to_string(),
                    message: Some(text),
                    ..RunReport::default()
                }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> RunReport {
    let name = cli.command.name();
    let result = resolve_tolerance(cli.global.tol)
        .map_err(Failure::from)
        .and_then(|tol| commands::dispatch(&cli.command, &cli.global, &tol));
    match result {
        Ok(report) => report.settle(),
        Err(f) => f.into_report(name),
    }
}

/// Report text for the selected output mode.
pub fn render(report: &RunReport, porcelain: bool) -> String {
    if report.command == "help" {
        return report.message.clone().unwrap_or_default();
    }
    if porcelain {
        report.porcelain()
    } else {
        report.human()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_subcommand_is_usage_error() {
        let r = run(["spectra", "frobnicate"]);
        assert_eq!(r.exit_code, 2);
        assert_eq!(r.error.as_deref(), Some("Usage"));
    }

    #[test]
    fn help_exits_cleanly() {
        let r = run(["spectra", "--help"]);
        assert_eq!(r.exit_code, 0);
        assert!(r.message.unwrap().contains("selftest"));
    }

    #[test]
    fn group_dual_lists_every_character() {
        let r = run(["spectra", "group-dual", "--factors", "2,3"]);
        assert_eq!(r.exit_code, 0);
        let listed = r.entries.iter().filter(|(k, _)| k.starts_with("character.")).count();
        assert_eq!(listed, 6);
    }

    #[test]
    fn invalid_tolerance_is_numerical_error() {
        let r = run(["spectra", "--tol=-1", "group-dual", "--factors", "2"]);
        assert_eq!(r.exit_code, 1);
        assert_eq!(r.error.as_deref(), Some("InvalidTolerance"));
    }

    #[test]
    fn bad_group_order_is_reported_by_name() {
        let r = run(["spectra", "group-dual", "--factors", "2,1"]);
        assert_eq!(r.exit_code, 1);
        assert_eq!(r.error.as_deref(), Some("InvalidOrder"));
    }

    #[test]
    fn circle_series_needs_a_source() {
        assert_eq!(run(["spectra", "circle-series"]).exit_code, 2);
        let r = run(["spectra", "circle-series", "--function", "character:3", "--grid", "16"]);
        assert_eq!(r.exit_code, 0, "{}", r.human());
    }
}
