use std::fmt;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use thetagraph::indices::{check_tolerance, DEFAULT_ZERO_TOL};
use thetagraph::survey::{Statement, DEFAULT_WITNESS_CAP};

pub const DEFAULT_MAX_ORDER: usize = 6;
pub const DEFAULT_TRIALS: usize = 10_000;
pub const DEFAULT_TOP_K: usize = 4;

#[derive(Debug, Parser)]
#[command(
    name = "thetagraph",
    version,
    about = "Sign census of ABC - ABS over trees and small graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonFlags,
}

/// Flags shared by every subcommand. Each may also be set in the `--config` file.
#[derive(Debug, Default, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct CommonFlags {
    /// TOML file whose keys mirror these flags; flags given on the command line win
    #[arg(long, global = true, value_name = "PATH")]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Zero band for theta
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Worker threads [default: available parallelism]
    #[arg(long, global = true)]
    pub workers: Option<NonZeroUsize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write results here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// graph6 input file [default: stdin for `index`]
    #[arg(long = "in", global = true, value_name = "PATH")]
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Negative witnesses kept per order
    #[arg(long, global = true)]
    pub witness_cap: Option<usize>,
    /// Largest order of the internal graph universe (at most 7)
    #[arg(long, global = true)]
    pub max_order: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Index values for each graph6 line of the input
    Index,
    /// Sign census over all trees of each order in RANGE
    Scan {
        /// `N`, `A..B` or `A..=B` (both ends inclusive)
        range: OrderRange,
        /// Also write every reported negative witness, as graph6, to this file
        #[arg(long, value_name = "PATH")]
        witness_out: Option<PathBuf>,
    },
    /// Trees of order N with the smallest |ABC - ABS|
    NearTies {
        n: usize,
        #[arg(long)]
        top_k: Option<usize>,
    },
    /// Check one statement over a graph universe (or random trials for p2)
    Verify {
        statement: Statement,
        /// Random subdivision trials (p2 only)
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Stream graph6 lines for a family of graphs
    Enum { kind: EnumKind, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Graph6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumKind {
    Trees,
    Connected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderRange {
    pub from: usize,
    pub to: usize,
}

impl FromStr for OrderRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad order `{t}`: {e}"));
        let (from, to) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if from > to {
            return Err(format!("empty range {from}..{to}"));
        }
        Ok(OrderRange { from, to })
    }
}

impl fmt::Display for OrderRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..={}", self.from, self.to)
    }
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub tol: f64,
    pub workers: NonZeroUsize,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub input: Option<PathBuf>,
    pub seed: u64,
    pub witness_cap: usize,
    pub max_order: usize,
}

impl RunConfig {
    pub fn resolve(flags: CommonFlags) -> Result<Self> {
        let file = match &flags.config {
            Some(path) => load_config(path)?,
            None => CommonFlags::default(),
        };
        let workers = match flags.workers.or(file.workers) {
            Some(w) => w,
            None => std::thread::available_parallelism().unwrap_or(NonZeroUsize::MIN),
        };
        let tol = flags.tol.or(file.tol).unwrap_or(DEFAULT_ZERO_TOL);
        check_tolerance(tol).with_context(|| "--tol must be positive and finite")?;
        Ok(RunConfig {
            tol,
            workers,
            format: flags.format.or(file.format),
            out: flags.out.or(file.out),
            input: flags.input.or(file.input),
            seed: flags.seed.or(file.seed).unwrap_or(0),
            witness_cap: flags.witness_cap.or(file.witness_cap).unwrap_or(DEFAULT_WITNESS_CAP),
            max_order: flags.max_order.or(file.max_order).unwrap_or(DEFAULT_MAX_ORDER),
        })
    }

    /// The requested format if it is one of `allowed`, else the first allowed one.
    pub fn format_among(&self, allowed: &[Format], command: &str) -> Result<Format> {
        match self.format {
            None => Ok(allowed[0]),
            Some(f) if allowed.contains(&f) => Ok(f),
            Some(f) => bail!("`{command}` does not support --format {}", f.name()),
        }
    }
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Graph6 => "graph6",
        }
    }
}

fn load_config(path: &Path) -> Result<CommonFlags> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("3..15".parse::<OrderRange>().unwrap(), OrderRange { from: 3, to: 15 });
        assert_eq!("3..=15".parse::<OrderRange>().unwrap(), OrderRange { from: 3, to: 15 });
        assert_eq!("11".parse::<OrderRange>().unwrap(), OrderRange { from: 11, to: 11 });
        assert!("15..3".parse::<OrderRange>().is_err());
        assert!("x..3".parse::<OrderRange>().is_err());
    }

    #[test]
    fn flags_override_the_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "tol = 1e-6\nseed = 9\nwitness-cap = 3\nformat = \"json\"\n").unwrap();
        let flags = CommonFlags {
            config: Some(path),
            seed: Some(4),
            ..CommonFlags::default()
        };
        let cfg = RunConfig::resolve(flags).unwrap();
        assert_eq!((cfg.tol, cfg.seed, cfg.witness_cap), (1e-6, 4, 3));
        assert_eq!(cfg.format, Some(Format::Json));
        assert_eq!(cfg.max_order, DEFAULT_MAX_ORDER);
    }

    #[test]
    fn unknown_config_keys_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "tolerance = 1e-6\n").unwrap();
        let flags = CommonFlags {
            config: Some(path),
            ..CommonFlags::default()
        };
        assert!(RunConfig::resolve(flags).is_err());
    }

    #[test]
    fn bad_tolerance() {
        let flags = CommonFlags {
            tol: Some(0.0),
            ..CommonFlags::default()
        };
        assert!(RunConfig::resolve(flags).is_err());
    }
}
