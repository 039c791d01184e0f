//! Run configuration: command-line flags over a flat TOML file over defaults,
//! with `QWHIT_BUDGET` overriding everything for the brute-force budget.

use std::path::Path;

use clap::{Args, ValueEnum};
use serde::Deserialize;

use crate::CliError;

pub const BUDGET_ENV: &str = "QWHIT_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Deliberate corruptions for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Perturb {
    /// Drop the first `X̃` factor of every Hamiltonian term.
    DropFirstFactor,
    /// Use `q^{n+1}` in place of `q^n` as eigenvalue.
    WrongEigenvalue,
    /// Sum the fixed-point components over `0..d` instead of `0..=d`.
    OffByOne,
}

/// Inclusive range `lo..=hi`; empty when `hi < lo`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn range(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

pub fn parse_window(s: &str) -> Result<Window, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("window `{s}` is not of the form a..b"))?;
    let parse = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("window bound `{x}`: {e}"));
    Ok(Window {
        lo: parse(a)?,
        hi: parse(b)?,
    })
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Default)]
pub struct Opts {
    /// Rank parameter: the group is gl_{ell+1}.
    #[arg(long, global = true)]
    pub ell: Option<usize>,
    #[arg(long, global = true)]
    pub n: Option<i64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub k: Option<i64>,
    /// Quasi-map degree.
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Results are exact modulo q^{q_order+1}.
    #[arg(long, global = true)]
    pub q_order: Option<usize>,
    /// Series are truncated after t^{t_order}.
    #[arg(long, global = true)]
    pub t_order: Option<usize>,
    /// Inclusive window a..b of lattice coordinates.
    #[arg(long, global = true, value_parser = parse_window)]
    pub window: Option<Window>,
    /// A single lattice point p1,p2,...
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub point: Option<Vec<i64>>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of random z-assignments, seeds seed, seed+1, ...
    #[arg(long, global = true)]
    pub reps: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Maximum number of monomials a brute-force enumeration may visit.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Flat TOML file with any of the keys above (q_order, t_order with underscores).
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,
    #[arg(long, global = true, hide = true, value_enum)]
    pub perturb: Option<Perturb>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    ell: Option<usize>,
    n: Option<i64>,
    k: Option<i64>,
    d: Option<usize>,
    q_order: Option<usize>,
    t_order: Option<usize>,
    window: Option<String>,
    point: Option<Vec<i64>>,
    seed: Option<u64>,
    reps: Option<usize>,
    format: Option<Format>,
    budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub ell: usize,
    pub n: i64,
    pub k: i64,
    pub d: usize,
    pub q_order: usize,
    pub t_order: usize,
    pub window: Window,
    pub point: Option<Vec<i64>>,
    /// Whether `--window` (or the file) set the window explicitly.
    pub window_given: bool,
    pub seed: u64,
    pub reps: usize,
    pub format: Format,
    pub budget: u64,
    pub perturb: Option<Perturb>,
}

impl RunConfig {
    pub fn seeds(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.reps as u64).map(|r| self.seed.wrapping_add(r))
    }
}

fn read_file(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn resolve(opts: &Opts, env_budget: Option<String>) -> Result<RunConfig, CliError> {
    let file = match &opts.config {
        Some(p) => read_file(p)?,
        None => FileConfig::default(),
    };
    let file_window = file.window.as_deref().map(parse_window).transpose().map_err(CliError::Usage)?;
    let env_budget = env_budget
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|e| CliError::Usage(format!("{BUDGET_ENV}=`{s}`: {e}")))
        })
        .transpose()?;
    let window = opts.window.or(file_window);
    let cfg = RunConfig {
        ell: opts.ell.or(file.ell).unwrap_or(1),
        n: opts.n.or(file.n).unwrap_or(2),
        k: opts.k.or(file.k).unwrap_or(0),
        d: opts.d.or(file.d).unwrap_or(1),
        q_order: opts.q_order.or(file.q_order).unwrap_or(4),
        t_order: opts.t_order.or(file.t_order).unwrap_or(4),
        window_given: window.is_some(),
        window: window.unwrap_or(Window { lo: 0, hi: 2 }),
        point: opts.point.clone().or(file.point),
        seed: opts.seed.or(file.seed).unwrap_or(0),
        reps: opts.reps.or(file.reps).unwrap_or(1),
        format: opts.format.or(file.format).unwrap_or(Format::Json),
        budget: env_budget.or(opts.budget).or(file.budget).unwrap_or(qwhit::characters::DEFAULT_BUDGET),
        perturb: opts.perturb,
    };
    if cfg.ell == 0 {
        return Err(CliError::Usage("--ell must be at least 1".into()));
    }
    if cfg.n < 0 {
        return Err(CliError::Usage(format!("--n {} must be non-negative", cfg.n)));
    }
    if cfg.window.lo < 0 {
        return Err(CliError::Usage(format!("window bound {} must be non-negative", cfg.window.lo)));
    }
    if cfg.reps == 0 {
        return Err(CliError::Usage("--reps must be at least 1".into()));
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(parse_window("0..2"), Ok(Window { lo: 0, hi: 2 }));
        assert_eq!(parse_window("1..=3"), Ok(Window { lo: 1, hi: 3 }));
        assert!(parse_window("3").is_err());
        assert!(parse_window("a..2").is_err());
    }

    #[test]
    fn precedence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "ell = 3\nn = 4\nbudget = 10\nwindow = \"1..2\"\n").unwrap();
        let opts = Opts {
            ell: Some(2),
            config: Some(path),
            ..Opts::default()
        };
        let cfg = resolve(&opts, None).unwrap();
        assert_eq!((cfg.ell, cfg.n, cfg.budget), (2, 4, 10));
        assert_eq!(cfg.window, Window { lo: 1, hi: 2 });
        let cfg = resolve(&opts, Some("77".into())).unwrap();
        assert_eq!(cfg.budget, 77);
        assert!(resolve(&opts, Some("x".into())).is_err());
    }

    #[test]
    fn invariants() {
        let bad = Opts {
            reps: Some(0),
            ..Opts::default()
        };
        assert!(resolve(&bad, None).is_err());
        let bad = Opts {
            n: Some(-1),
            ..Opts::default()
        };
        assert!(resolve(&bad, None).is_err());
    }
}
