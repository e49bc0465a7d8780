//! Batch front end: parses description files (see [`format`]), runs one
//! computation and prints a versioned key-value report (see [`report`]).
//!
//! Exit status is 0 when every verdict passes, 1 when one fails and 2 on
//! an input error, which includes parse diagnostics and size-guard
//! refusals.

mod commands;
pub mod format;
pub mod report;
mod suite;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::limits::SizeLimits;

pub use format::{DiagnosticKind, GroupSection, Item, ParseError, Workspace};
pub use report::{format_matrix, Report, REPORT_HEADER};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Compute(#[from] crate::Error),
}

#[derive(Parser, Debug)]
#[command(name = "kanext", version, about = "Exact weighted colimits, ends and Kan extensions of finite diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Options {
    /// Include basis matrices and certificates in the report.
    #[arg(long, global = true)]
    pub bases: bool,
    /// Append wall-clock time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Bound on the morphisms of derived categories (env KANEXT_MAX_MORPHISMS).
    #[arg(long, global = true, value_name = "N")]
    pub max_morphisms: Option<usize>,
    /// Bound on brute-force search spaces (env KANEXT_MAX_SEARCH).
    #[arg(long, global = true, value_name = "N")]
    pub max_search: Option<u128>,
    /// Bound on ambient dimensions (env KANEXT_MAX_AMBIENT).
    #[arg(long, global = true, value_name = "N")]
    pub max_ambient: Option<usize>,
}

impl Options {
    pub fn limits(&self) -> SizeLimits {
        let mut limits = SizeLimits::from_env();
        if let Some(v) = self.max_morphisms {
            limits.max_morphisms = v;
        }
        if let Some(v) = self.max_search {
            limits.max_search = v;
        }
        if let Some(v) = self.max_ambient {
            limits.max_ambient = v;
        }
        limits
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Orthogonal,
    Quotient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Args, Debug, Clone)]
pub struct Inputs {
    /// Description files, read in order into one namespace.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every item against its axioms.
    Validate {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Limit of a vector-space diagram.
    Limit {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        diagram: Option<String>,
    },
    /// Colimit of a vector-space diagram.
    Colimit {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        diagram: Option<String>,
    },
    /// Limit of a diagram weighted by a covariant set functor.
    WeightedLimit {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        weight: Option<String>,
        #[arg(long)]
        diagram: Option<String>,
    },
    /// Colimit of a diagram weighted by a contravariant set functor.
    WeightedColimit {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        weight: Option<String>,
        #[arg(long)]
        diagram: Option<String>,
        #[arg(long, value_enum, default_value = "orthogonal")]
        method: Method,
        /// Certify that every universal component is a contraction.
        #[arg(long)]
        contraction: bool,
    },
    /// Pointwise Kan extension of a diagram along a functor.
    Kan {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        along: Option<String>,
        #[arg(long)]
        functor: Option<String>,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
    },
    /// End of a bifunctor, given directly or as `--hom F,G`.
    End {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, conflicts_with = "hom")]
        bifunctor: Option<String>,
        /// Category `C` with the bifunctor defined on `op(C)*C`.
        #[arg(long)]
        over: Option<String>,
        #[arg(long, value_name = "F,G")]
        hom: Option<String>,
    },
    /// Coend of a bifunctor.
    Coend {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        bifunctor: Option<String>,
        #[arg(long)]
        over: Option<String>,
    },
    /// Compare both iterated ends of a bifunctor on two twisted products.
    FubiniCheck {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, conflicts_with = "kan", requires = "over")]
        bifunctor: Option<String>,
        #[arg(long, value_name = "C,M")]
        over: Option<String>,
        /// Build the bifunctor from `K : M -> C`, `T` on `M` and `S` on `C`.
        #[arg(long, value_name = "K,T,S")]
        kan: Option<String>,
    },
    /// Induce a representation along a subgroup inclusion.
    Induce {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        along: Option<String>,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Restrict a representation along a subgroup inclusion.
    Restrict {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        along: Option<String>,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Compare `Hom(Ind V, W)` with `Hom(V, Res W)`.
    Frobenius {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        along: Option<String>,
        #[arg(long)]
        sub_rep: Option<String>,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Count natural transformations between set functors.
    NatCount {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
    },
    /// Seeded randomized checks of the main identities.
    Suite {
        #[arg(long)]
        seed: u64,
        /// Instances per check.
        #[arg(long, default_value_t = 20)]
        cases: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Limit { .. } => "limit",
            Command::Colimit { .. } => "colimit",
            Command::WeightedLimit { .. } => "weighted-limit",
            Command::WeightedColimit { .. } => "weighted-colimit",
            Command::Kan { .. } => "kan",
            Command::End { .. } => "end",
            Command::Coend { .. } => "coend",
            Command::FubiniCheck { .. } => "fubini-check",
            Command::Induce { .. } => "induce",
            Command::Restrict { .. } => "restrict",
            Command::Frobenius { .. } => "frobenius",
            Command::NatCount { .. } => "nat-count",
            Command::Suite { .. } => "suite",
        }
    }
}

/// Runs a parsed command line and builds its report.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut report = commands::dispatch(&cli.command, &cli.options)?;
    if cli.options.timing {
        report.set_timing(start.elapsed());
    }
    Ok(report)
}

/// Parses `args`, runs the command, writes the report to `out` and errors
/// to `err`, and returns the exit status.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let _ = out.write_all(report.render().as_bytes());
            if report.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
