//! `pearlhom` command line: load a datum or a built-in example, specialize
//! it, and report checks, homology, the Maslov spectral sequence or the dual
//! complex.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 bad input or usage.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod pipeline;
mod report;

pub use pipeline::{parse_degrees, Options, Source};
pub use report::{Report, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Specialization {
    Novikov,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "pearlhom",
    version,
    about = "Pearl complexes over group rings: checks, homology, spectral sequence, duality"
)]
pub struct Cli {
    /// Built-in example: clifford, chekanov, exotic-s2s2, rp1-canonical, rp<n>-window
    #[arg(long, global = true, value_name = "NAME")]
    pub example: Option<String>,

    /// Quantum datum in JSON
    #[arg(long, global = true, value_name = "PATH")]
    pub input: Option<PathBuf>,

    /// Z, Q, Fp:<p> (or F<p>), Zmod:<m>
    #[arg(long, visible_alias = "field", global = true, value_name = "RING")]
    pub coefficients: Option<String>,

    #[arg(long, global = true, value_enum)]
    pub specialize: Option<Specialization>,

    /// Subsystem file: generators, sign character, optional holonomy
    #[arg(long, global = true, value_name = "PATH")]
    pub quotient: Option<PathBuf>,

    /// Rank-one local system, one value per class generator: v1,v2,...
    #[arg(long, global = true, value_name = "LIST", allow_hyphen_values = true)]
    pub holonomy: Option<String>,

    /// Degree window a..b (inclusive)
    #[arg(long, global = true, value_name = "A..B", allow_hyphen_values = true)]
    pub degrees: Option<String>,

    /// Last spectral page to report
    #[arg(long, global = true, value_name = "R")]
    pub pages: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Grading, ∂² = 0 and the unit cycle
    Check,
    /// Homology over a degree window
    Homology,
    /// Pages of the Maslov spectral sequence and convergence
    Spectral,
    /// Dual complex, the pairing sign identity and cohomology
    Dual,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Homology => "homology",
            Command::Spectral => "spectral",
            Command::Dual => "dual",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: String) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::usage(text)
            };
        }
    };
    let format = cli.format;
    let report = Options::from_cli(&cli).and_then(|opts| commands::execute(cli.command, &opts));
    match report {
        Ok(r) => Outcome {
            code: match r.status {
                Status::Pass => EXIT_OK,
                Status::Fail => EXIT_CHECK_FAILED,
            },
            stdout: r.render(format),
            stderr: String::new(),
        },
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}
