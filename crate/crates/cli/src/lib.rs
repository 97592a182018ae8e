//! Command-line front end for `spinsurgery`.
//!
//! [`run`] does all the work and returns the captured output, so the binary
//! is a thin shim and tests can drive commands in-process.

pub mod commands;
pub mod error;
pub mod files;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use error::{CliError, EXIT_INPUT, EXIT_PRECONDITION};

#[derive(Debug, Parser)]
#[command(name = "spinsurgery", version, about = "Spin 3-manifolds presented by framed links")]
pub struct Cli {
    /// Emit machine-readable JSON (errors included) on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print nothing on success; the exit code carries the result.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the spin structures of a linking matrix.
    Spins { file: PathBuf },
    /// Compute the mod-2 invariant of a spin presentation.
    Invariant { file: PathBuf },
    /// Check a presentation file and summarize it.
    Validate { file: PathBuf },
    /// Apply spin Kirby moves, e.g. `--ops "slide:0,1; blowup:+1"`.
    Move {
        file: PathBuf,
        #[arg(long)]
        ops: String,
        /// Write the result here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Apply a seeded random move sequence, checking invariance at every step.
    Fuzz {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Alternating sums over surgery schemes and the resulting order verdict.
    Vassiliev {
        #[arg(required = true)]
        schemes: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        max_order: usize,
        #[arg(long, value_enum, default_value_t = InvariantChoice::Rohlin)]
        invariant: InvariantChoice,
        /// Defaults to `declared` when every scheme declares `extras_c`, else `unique`.
        #[arg(long, value_enum)]
        policy: Option<PolicyChoice>,
    },
    /// Casson invariant of surgery on a knot with framing 1/n.
    Casson(CassonArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "knot_source")]
pub struct KnotSource {
    /// A knot from the built-in table (unknot, trefoil, figure8).
    #[arg(long)]
    pub knot: Option<String>,
    /// A Seifert matrix file.
    #[arg(long)]
    pub seifert: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CassonArgs {
    #[command(flatten)]
    pub source: KnotSource,
    #[arg(long, allow_negative_numbers = true)]
    pub n: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InvariantChoice {
    /// `n + cᵀBc mod 2`.
    Rohlin,
    /// The constant 1; a sanity baseline of order 0.
    Const,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolicyChoice {
    Unique,
    Average,
    Declared,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    stderr: text,
                    code: EXIT_INPUT,
                    ..Outcome::default()
                }
            };
        }
    };
    match commands::execute(&cli) {
        Ok(report) => Outcome {
            stdout: if cli.quiet {
                String::new()
            } else if cli.json {
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report.json).expect("serializable")
                )
            } else {
                report.text
            },
            ..Outcome::default()
        },
        Err(e) => {
            let code = e.exit_code();
            if cli.json {
                let body = serde_json::to_string_pretty(&e.to_json()).expect("serializable");
                Outcome {
                    stdout: format!("{body}\n"),
                    code,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    stderr: format!("error[{}]: {e}\n", e.kind()),
                    code,
                    ..Outcome::default()
                }
            }
        }
    }
}
