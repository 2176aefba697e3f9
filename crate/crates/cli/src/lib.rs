//! The `lc` command line: build, classify, export, walk and dilatation
//! reports for line complexes described by spec files.
//!
//! Reports are line-oriented `key: value` text with a fixed key set per
//! command and surface kind, so two runs can be compared with `diff`.
//! Exit codes: 0 success, 1 parse, validation or I/O failure, 2 an internal
//! invariant breach.

mod commands;
mod report;
pub mod spec;
mod surface;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use report::Report;
pub use spec::{parse_document, Document, SCHEMA};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("invariant breach: {0}")]
    Breach(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Breach(_) => 2,
            _ => 1,
        }
    }
}

impl From<linecomplex::Error> for CliError {
    fn from(e: linecomplex::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "lc", version, about = "Line complexes of branched coverings of the sphere")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Construct the complex and print its statistics.
    Build(Flags),
    /// Type verdicts by every applicable method, and the mean-excess conjecture.
    Classify(Flags),
    /// Write the complex (or a ball of it) as DOT or as a table spec.
    Export(Flags),
    /// Random-walk returns and effective resistance.
    Walk(Flags),
    /// Dilatation quotients and annulus moduli.
    Dilatation(Flags),
}

#[derive(clap::Args, Debug, Clone)]
pub struct Flags {
    /// Spec file (TOML).
    pub spec: PathBuf,
    /// Exhaustion depth, ball radius or profile horizon.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Face tracing cap; longer faces count as logarithmic.
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    pub walk_trials: usize,
    /// Step limit of each walk.
    #[arg(long, default_value_t = 10_000)]
    pub horizon: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Trailing generations used to read off V.
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    pub format: Format,
    /// Write the report or export here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Tolerance for V_ν convergence and for E = 0, as a fraction.
    #[arg(long, default_value = "1/100")]
    pub tol: String,
    /// Largest resistance depth. Defaults: on trees the distance spanned by
    /// `--depth` generations, at most 65536; 64 otherwise.
    #[arg(long)]
    pub resistance_depth: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dot,
    Structured,
}

/// What a run printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command line (including the program name) without touching the
/// process: the binary prints the result and exits with `code`.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Output {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Output {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let flags = match &cli.command {
        Command::Build(f)
        | Command::Classify(f)
        | Command::Export(f)
        | Command::Walk(f)
        | Command::Dilatation(f) => f,
    };
    let path = flags.spec.display().to_string();
    let text = std::fs::read_to_string(&flags.spec).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let doc = parse_document(&text, &path)?;
    let body = match &cli.command {
        Command::Build(f) => commands::build(doc, f)?,
        Command::Classify(f) => commands::classify(doc, f)?,
        Command::Export(f) => commands::export(doc, f)?,
        Command::Walk(f) => commands::walk(doc, f)?,
        Command::Dilatation(f) => commands::dilatation(doc, f)?,
    };
    match &flags.out {
        Some(out) => {
            std::fs::write(out, &body).map_err(|source| CliError::Io {
                path: out.display().to_string(),
                source,
            })?;
            Ok(String::new())
        }
        None => Ok(body),
    }
}
