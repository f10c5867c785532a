mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mills_core::Error;

use crate::config::{CliConfig, CACHE_ENV};

#[derive(Parser, Debug)]
#[command(name = "mills", version, about = "Prime chains, cubic Pisot numbers and reproducible verification reports.")]
pub struct Cli {
    /// Line-oriented output for scripts.
    #[arg(long, global = true)]
    pub machine: bool,

    /// `key = value` configuration file.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    /// Chain cache directory (overrides $MILLS_CACHE_DIR and the config file).
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Report runtimes.
    #[arg(long, global = true)]
    pub timings: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build, extend or show cached prime chains.
    #[command(subcommand)]
    Chain(ChainCmd),
    /// Certified decimal digits of the chain constant.
    Digits(DigitsArgs),
    /// Check a condition profile (A, B, B', C) up to a horizon.
    Check(CheckArgs),
    /// Asymptotic gcd sweep.
    Agcd(AgcdArgs),
    /// Least period of a linear recurrence modulo q.
    PeriodMod(PeriodArgs),
    /// Index k with C_m | C_k for C_k = r·3^k − 1.
    DivisibleIndex(DivisibleArgs),
    /// Cubic Pisot numbers, dominant roots, traces and floors.
    #[command(subcommand)]
    Pisot(PisotCmd),
    /// Reproduce the catalogue of numeric claims.
    Verify(VerifyArgs),
    /// Finite-depth diagnostics.
    #[command(subcommand)]
    Diagnose(DiagnoseCmd),
}

#[derive(Args, Debug, Clone)]
pub struct SeqArg {
    /// Sequence file, or shorthand such as `mills` or `shifted(1, 3, -1)`.
    #[arg(long)]
    pub seq: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Greedy,
    Dfs,
}

#[derive(Args, Debug, Clone)]
pub struct ChainArgs {
    #[command(flatten)]
    pub seq: SeqArg,
    #[arg(long, value_enum, default_value_t = StrategyArg::Greedy)]
    pub strategy: StrategyArg,
    /// Primes tried per level before the level counts as exhausted.
    #[arg(long)]
    pub candidate_cap: Option<u64>,
    #[arg(long)]
    pub backtrack_limit: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum ChainCmd {
    /// Build a chain, reusing and extending the cache.
    Build {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Append levels to a cached chain.
    Extend {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long)]
        depth: usize,
    },
    /// Print a cached chain without computing anything.
    Show {
        #[command(flatten)]
        chain: ChainArgs,
    },
}

#[derive(Args, Debug)]
pub struct DigitsArgs {
    #[command(flatten)]
    pub chain: ChainArgs,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub digits: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// A, B, B' (or BP), C or C:<c>.
    #[arg(long)]
    pub profile: String,
    #[command(flatten)]
    pub seq: SeqArg,
    #[arg(long)]
    pub horizon: Option<usize>,
}

#[derive(Args, Debug)]
pub struct AgcdArgs {
    #[command(flatten)]
    pub seq: SeqArg,
    #[arg(long, default_value_t = 10)]
    pub m_max: usize,
    #[arg(long, default_value_t = 10)]
    pub window: usize,
}

#[derive(Args, Debug)]
pub struct PeriodArgs {
    /// A linear recurrence, e.g. `recurrence(1, 1; 1, 1)`.
    #[command(flatten)]
    pub seq: SeqArg,
    #[arg(long, short = 'q')]
    pub modulus: u64,
}

#[derive(Args, Debug)]
pub struct DivisibleArgs {
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub m: usize,
}

#[derive(Args, Debug, Clone)]
pub struct PolyArg {
    /// Cubic X^3 − a2X^2 − a1X − a0 given as `a2,a1,a0`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "poly")]
    pub coeffs: Option<String>,
    /// Monic polynomial by coefficients, highest degree first, e.g. `1,-1,-1`.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum PisotCmd {
    /// All cubic Pisot numbers <= M.
    Enumerate {
        #[arg(long, default_value = "3")]
        max: String,
    },
    /// Largest real root of a cubic.
    Root {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        eps: Option<String>,
    },
    /// S(n), the n-th power sum of the conjugates.
    Trace {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        n: u64,
    },
    /// ⌊β^n⌋.
    Floor {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    All,
    Table2,
    Floors,
    Threshold,
    Mills,
    Agcd,
    RhStep,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub target: VerifyTarget,
    /// Chain depth for the Mills digits.
    #[arg(long, default_value_t = mills_core::verify::DEFAULT_MILLS_DEPTH)]
    pub depth: usize,
    #[arg(long, default_value_t = mills_core::verify::DEFAULT_AGCD_R_MAX)]
    pub r_max: u64,
}

#[derive(Subcommand, Debug)]
pub enum DiagnoseCmd {
    /// Fractional-part bound at level k against the chain enclosure.
    Frac {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "21/40")]
        theta: String,
    },
}

/// 0 ok, 1 verification failure, 2 usage/parse/io, 3 resource/search/indeterminate.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Argument(_) | Error::OutOfRange { .. } | Error::Parse { .. } | Error::Io(_) => 2,
        Error::Resource(_) | Error::SearchExhausted { .. } | Error::Indeterminate(_) | Error::Internal(_) => 3,
    }
}

fn report_error(e: &Error) {
    eprintln!("error: {e}");
    if let Error::SearchExhausted { partial, .. } = e {
        let p: Vec<String> = partial.iter().map(|p| p.to_string()).collect();
        eprintln!("partial chain: [{}]", p.join(", "));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match &cli.config {
        Some(path) => match CliConfig::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => CliConfig::default(),
    };
    cfg.resolve_cache_dir(cli.cache_dir.clone(), std::env::var(CACHE_ENV).ok());
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        cfg.threads = t;
    }
    if cfg.threads > 0 {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global();
    }
    let mut out = std::io::stdout().lock();
    match commands::run(&cli, &cfg, &mut out) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            report_error(&e);
            ExitCode::from(exit_code(&e))
        }
    }
}
