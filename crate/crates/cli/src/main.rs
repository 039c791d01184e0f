//! `qwhit`: compute q-Whittaker values and verify the identities around them.
//!
//! Exit codes: 0 every identity holds, 1 an identity failed, 2 usage error,
//! 3 resource budget exceeded.

mod commands;
mod config;
mod table;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{CharMode, LogKind};
use crate::config::{Opts, BUDGET_ENV};
use crate::table::Table;
use crate::verify::Suite;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(qwhit::Error),
    Io(String),
}

impl From<qwhit::Error> for CliError {
    fn from(e: qwhit::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(qwhit::Error::Domain(_)) => 2,
            CliError::Core(qwhit::Error::Budget { .. }) => 3,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "output: {m}"),
        }
    }
}

/// A table plus whether every identity it reports held.
pub struct Outcome {
    pub table: Table,
    pub pass: bool,
}

impl Outcome {
    pub fn pass(table: Table) -> Self {
        Outcome { table, pass: true }
    }
}

#[derive(Parser, Debug)]
#[command(name = "qwhit", version, about = "Exact q-Whittaker functions and their identities")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ψ at every dominant point of the window, or at --point.
    Whittaker,
    /// Check the q-Toda eigenvalue equations on the window.
    Toda {
        /// Only this Hamiltonian index.
        #[arg(long)]
        r: Option<usize>,
    },
    /// The specialization Ψ(n,k), its difference equation and series form.
    Spec,
    /// Characters of the quasi-map section spaces.
    Char {
        /// Stable limit d → ∞ modulo q^{q_order+1}, compared with Ψ(n,k).
        #[arg(long)]
        limit: bool,
        /// Evaluate at q = 0 (only 0 is accepted).
        #[arg(long)]
        q: Option<i64>,
        /// Enumerate monomials instead of using the closed form.
        #[arg(long)]
        oracle: bool,
    },
    /// Fixed-point localization sum against the full contour value.
    Localize,
    /// J-function components, the pairing, and its eigenproperty.
    Jfunction,
    /// Genus data for a logarithm.
    Genus {
        #[arg(long, value_enum, default_value = "multiplicative")]
        log: LogKind,
    },
    /// Run one verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Run every verification suite.
    VerifyAll,
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    let cfg = config::resolve(&cli.opts, std::env::var(BUDGET_ENV).ok())?;
    let outcome = match cli.cmd {
        Command::Whittaker => commands::whittaker(&cfg)?,
        Command::Toda { r } => {
            if r.is_some_and(|r| r == 0 || r > cfg.ell + 1) {
                return Err(CliError::Usage(format!("--r must lie in 1..={}", cfg.ell + 1)));
            }
            commands::toda(&cfg, r)?
        }
        Command::Spec => commands::spec(&cfg)?,
        Command::Char { limit, q, oracle } => {
            if q.is_some_and(|q| q != 0) {
                return Err(CliError::Usage("--q only accepts 0".into()));
            }
            if limit && (oracle || q.is_some()) {
                return Err(CliError::Usage("--limit excludes --oracle and --q".into()));
            }
            let mode = CharMode {
                limit,
                at_q_zero: q.is_some(),
                oracle,
            };
            commands::character(&cfg, &mode)?
        }
        Command::Localize => commands::localize(&cfg)?,
        Command::Jfunction => commands::jfunction_cmd(&cfg)?,
        Command::Genus { log } => commands::genus(&cfg, log)?,
        Command::Verify { suite } => verify::verify(&[suite], &cfg)?,
        Command::VerifyAll => verify::verify(&verify::all_suites(), &cfg)?,
    };
    outcome.table.emit(cfg.format, out)?;
    if !outcome.pass {
        eprintln!("identity check failed ({} rows reported)", outcome.table.len());
    }
    Ok(outcome.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qwhit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
