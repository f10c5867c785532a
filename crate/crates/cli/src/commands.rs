//! Subcommand bodies. Each returns the process status for a completed run;
//! errors are mapped to status codes by the caller.

use std::fs;
use std::io::Write;
use std::path::Path;

use mills_core::chain::cache::{self, cached_chain};
use mills_core::chain::diagnostic::default_theta;
use mills_core::chain::{certified_digits, fractional_diagnostic, ChainMode, ChainStrategy, PrimeChain};
use mills_core::exactnum::enclosure::{decimal_ceiled, decimal_truncated};
use mills_core::exactnum::{factorize, parse_rational, RealEnclosure};
use mills_core::pisot::poly::{Poly, Sturm};
use mills_core::pisot::{enumerate_cubic_pisot, floor_power, table_row, CubicCoeffs, PisotNumber, TraceSequence};
use mills_core::sequences::agcd::agcd_closed_form;
use mills_core::sequences::specfile::parse_any;
use mills_core::sequences::{agcd, check_conditions, divisible_index, recurrence_period_mod, CheckOptions, ExponentSequence, Family, Profile, Verdict};
use mills_core::verify::{self, VerificationReport};
use mills_core::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::config::CliConfig;
use crate::{ChainArgs, ChainCmd, Cli, Command, DiagnoseCmd, PisotCmd, PolyArg, StrategyArg, VerifyTarget};

const OK: u8 = 0;
const VERIFY_FAILED: u8 = 1;

pub fn run(cli: &Cli, cfg: &CliConfig, out: &mut dyn Write) -> Result<u8> {
    let m = cli.machine;
    match &cli.command {
        Command::Chain(c) => chain(c, cfg, m, out),
        Command::Digits(a) => {
            let depth = a.depth.unwrap_or(cfg.depth);
            let decimals = a.digits.unwrap_or(cfg.digits);
            let chain = load_or_build(&a.chain, cfg, depth)?;
            let d = certified_digits(&chain, decimals)?;
            if m {
                writeln!(out, "digits | {} | {} | {}", d.text, d.decimals, chain.depth())?;
            } else {
                writeln!(out, "{}", d.text)?;
                writeln!(out, "{} of {decimals} decimals certified at depth {}", d.decimals, chain.depth())?;
            }
            Ok(OK)
        }
        Command::Check(a) => {
            let profile = Profile::parse(&a.profile)?;
            let horizon = a.horizon.unwrap_or(cfg.horizon);
            let seq = sequence(a.seq.seq.as_deref(), cfg, horizon)?;
            let report = check_conditions(&seq, &profile, horizon, &CheckOptions::default())?;
            if m {
                for l in report.machine_lines() {
                    writeln!(out, "{l}")?;
                }
            } else {
                write!(out, "{report}")?;
            }
            let failed = report.conditions.iter().any(|c| matches!(c.verdict, Verdict::Fail { .. }));
            Ok(if failed { VERIFY_FAILED } else { OK })
        }
        Command::Agcd(a) => {
            let seq = sequence(a.seq.seq.as_deref(), cfg, cfg.horizon)?;
            let r = agcd(&seq, a.m_max, a.window)?;
            let closed = agcd_closed_form(&seq);
            if m {
                let trace: Vec<String> = r.trace.iter().map(|g| g.to_string()).collect();
                writeln!(out, "agcd | {} | {} | {}", r.describe(), trace.join(","), closed.map_or("-".into(), |c| c.to_string()))?;
            } else {
                writeln!(out, "sequence {}", seq.family())?;
                for (i, g) in r.trace.iter().enumerate() {
                    writeln!(out, "  g_{:<3} = {g}", i + 1)?;
                }
                writeln!(out, "agcd: {} (window {})", r.describe(), r.window)?;
                if let Some(c) = closed {
                    writeln!(out, "closed form: {c}")?;
                }
            }
            Ok(OK)
        }
        Command::PeriodMod(a) => {
            let seq = sequence(a.seq.seq.as_deref(), cfg, cfg.horizon)?;
            let Family::LinearRecurrence(rec) = seq.family() else {
                return Err(Error::Argument(format!("period-mod needs a linear recurrence, got {}", seq.family().kind())));
            };
            let p = recurrence_period_mod(rec, a.modulus)?;
            if m {
                writeln!(out, "period | {} | {p}", a.modulus)?;
            } else {
                writeln!(out, "least period of {} modulo {}: {p}", seq.family(), a.modulus)?;
            }
            Ok(OK)
        }
        Command::DivisibleIndex(a) => {
            let k = divisible_index(&BigUint::from(a.r), a.m)?;
            if m {
                writeln!(out, "divisible-index | {} | {} | {k}", a.r, a.m)?;
            } else {
                writeln!(out, "C_{} divides C_{k} for C_k = {}·3^k − 1", a.m, a.r)?;
            }
            Ok(OK)
        }
        Command::Pisot(p) => pisot(p, cfg, m, out),
        Command::Verify(a) => {
            let report = verify_target(a.target, a.depth, a.r_max, cfg, cli.timings)?;
            if m {
                write!(out, "{}", report.machine(cli.timings))?;
            } else {
                write!(out, "{}", report.text(cli.timings))?;
            }
            Ok(if report.all_pass() { OK } else { VERIFY_FAILED })
        }
        Command::Diagnose(DiagnoseCmd::Frac { chain, depth, k, theta }) => {
            let theta = if theta.trim() == "21/40" { default_theta() } else { parse_rational(theta)? };
            let depth = depth.unwrap_or(cfg.depth);
            let c = load_or_build(chain, cfg, depth)?;
            let d = fractional_diagnostic(&c, *k, &theta)?;
            let obs = decimal_ceiled(&d.observed_upper, 12);
            let bound = decimal_truncated(&d.bound, 12);
            if m {
                writeln!(out, "frac | {k} | {obs} | {bound} | {}", d.satisfied)?;
            } else {
                writeln!(out, "level {k} of {} (depth {})", c.sequence.family(), c.depth())?;
                writeln!(out, "  observed fractional part <= {obs}")?;
                writeln!(out, "  bound                    >= {bound}")?;
                writeln!(out, "  {}", if d.satisfied { "within bound" } else { "not within bound" })?;
            }
            Ok(OK)
        }
    }
}

/// A `--seq` value names a file when one exists at that path, otherwise it is shorthand.
fn sequence(flag: Option<&str>, cfg: &CliConfig, default_horizon: usize) -> Result<ExponentSequence> {
    let text = flag
        .or(cfg.seq.as_deref())
        .ok_or_else(|| Error::Argument("no sequence given; pass --seq or set `seq` in the config".into()))?;
    let path = Path::new(text);
    let spec = if path.is_file() { parse_any(&fs::read_to_string(path)?)? } else { parse_any(text)? };
    spec.build(default_horizon)
}

fn strategy(a: &ChainArgs, cfg: &CliConfig) -> ChainStrategy {
    ChainStrategy {
        mode: match a.strategy {
            StrategyArg::Greedy => ChainMode::GreedyMin,
            StrategyArg::Dfs => ChainMode::DfsLexicographicMin,
        },
        candidate_cap: a.candidate_cap.unwrap_or(cfg.candidate_cap),
        backtrack_limit: a.backtrack_limit.unwrap_or(cfg.backtrack_limit),
    }
}

fn chain_sequence(a: &ChainArgs, cfg: &CliConfig, depth: usize) -> Result<ExponentSequence> {
    sequence(a.seq.seq.as_deref(), cfg, depth.max(cfg.horizon))
}

fn load_or_build(a: &ChainArgs, cfg: &CliConfig, depth: usize) -> Result<PrimeChain> {
    let seq = chain_sequence(a, cfg, depth)?;
    Ok(cached_chain(&cfg.cache_dir, &seq, depth, &strategy(a, cfg))?.chain)
}

fn chain(c: &ChainCmd, cfg: &CliConfig, m: bool, out: &mut dyn Write) -> Result<u8> {
    let (chain, note) = match c {
        ChainCmd::Build { chain, depth } => {
            let depth = depth.unwrap_or(cfg.depth);
            let seq = chain_sequence(chain, cfg, depth)?;
            let r = cached_chain(&cfg.cache_dir, &seq, depth, &strategy(chain, cfg))?;
            let note = format!("{} levels from cache, {} appended", r.reused, r.appended);
            (r.chain, Some(note))
        }
        ChainCmd::Extend { chain, depth } => {
            let seq = chain_sequence(chain, cfg, *depth)?;
            let st = strategy(chain, cfg);
            let path = cfg.cache_dir.join(cache::file_name(&seq, &st));
            if cache::load(&path, &seq, &st)?.is_none() {
                return Err(Error::Argument(format!("no cached chain at {}; run `chain build` first", path.display())));
            }
            let r = cached_chain(&cfg.cache_dir, &seq, *depth, &st)?;
            let note = format!("{} levels from cache, {} appended", r.reused, r.appended);
            (r.chain, Some(note))
        }
        ChainCmd::Show { chain } => {
            let seq = chain_sequence(chain, cfg, cfg.horizon)?;
            let st = strategy(chain, cfg);
            let path = cfg.cache_dir.join(cache::file_name(&seq, &st));
            let c = cache::load(&path, &seq, &st)?
                .ok_or_else(|| Error::Argument(format!("no cached chain at {}", path.display())))?;
            (c, None)
        }
    };
    if m {
        for (i, p) in chain.primes.iter().enumerate() {
            writeln!(out, "{} | {p} | {}", i + 1, chain.certainty[i])?;
        }
        return Ok(OK);
    }
    writeln!(out, "chain for {} ({}), depth {}", chain.sequence.family(), chain.strategy.mode, chain.depth())?;
    for (i, p) in chain.primes.iter().enumerate() {
        let digits = p.to_string().len();
        let shown = if digits > 40 { format!("{}...{} ({digits} digits)", &p.to_string()[..12], &p.to_string()[digits - 12..]) } else { p.to_string() };
        writeln!(out, "  p_{:<3} {shown}  [{}]", i + 1, chain.certainty[i])?;
    }
    if chain.unsupported_territory() {
        writeln!(out, "note: some ratio c_(k+1) is below 2")?;
    }
    if let Some(n) = note {
        writeln!(out, "{n}")?;
    }
    Ok(OK)
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Argument(format!("expected an integer, got {:?}", t.trim()))))
        .collect()
}

/// Low-first monic coefficients from `--coeffs a2,a1,a0` or `--poly` (high first).
fn monic(p: &PolyArg) -> Result<Vec<BigInt>> {
    match (&p.coeffs, &p.poly) {
        (Some(c), None) => {
            let v = parse_ints(c)?;
            let [a2, a1, a0] = v[..] else {
                return Err(Error::Argument(format!("--coeffs takes a2,a1,a0, got {} values", v.len())));
            };
            Ok(CubicCoeffs::new(a2, a1, a0)?.monic())
        }
        (None, Some(s)) => {
            let v = parse_ints(s)?;
            if v.len() < 2 || v[0] != 1 {
                return Err(Error::Argument("--poly must be monic of degree at least 1, leading coefficient first".into()));
            }
            Ok(v.into_iter().rev().map(BigInt::from).collect())
        }
        _ => Err(Error::Argument("give exactly one of --coeffs or --poly".into())),
    }
}

fn pisot_number(p: &PolyArg) -> Result<PisotNumber> {
    let c = monic(p)?;
    let shown = Poly::from_integers(&c).to_string();
    PisotNumber::from_monic(c)?.ok_or_else(|| Error::Argument(format!("{shown} does not define a Pisot number")))
}

/// Decimals that an enclosure of width eps can be expected to certify.
fn decimals_for(eps: &BigRational) -> usize {
    let mut d = 0;
    let mut unit = BigRational::from_integer(1.into());
    let ten = BigRational::from_integer(10.into());
    while unit > *eps && d < 10_000 {
        unit /= &ten;
        d += 1;
    }
    d
}

fn pisot(c: &PisotCmd, cfg: &CliConfig, m: bool, out: &mut dyn Write) -> Result<u8> {
    match c {
        PisotCmd::Enumerate { max } => {
            let bound = parse_rational(max)?;
            let found = enumerate_cubic_pisot(&bound)?;
            if !m {
                writeln!(out, "{} cubic Pisot numbers <= {max}", found.len())?;
                writeln!(out, "{:>3}  {:<24} {:>4} {:>4} {:>4}  polynomial", "#", "root", "a2", "a1", "a0")?;
            }
            for (i, p) in found.iter().enumerate() {
                let row = table_row(i + 1, p)?;
                if m {
                    writeln!(out, "{row}")?;
                } else {
                    let f: Vec<&str> = row.split(", ").collect();
                    writeln!(out, "{:>3}  {:<24} {:>4} {:>4} {:>4}  {}", f[0], f[1], f[2], f[3], f[4], p.poly())?;
                }
            }
            Ok(OK)
        }
        PisotCmd::Root { poly, eps } => {
            let eps = match eps {
                Some(e) => parse_rational(e)?,
                None => cfg.eps.clone(),
            };
            if eps <= BigRational::from_integer(0.into()) {
                return Err(Error::Argument("eps must be positive".into()));
            }
            let f = Poly::from_integers(&monic(poly)?);
            let sturm = Sturm::new(&f)?;
            let Some((a, b)) = sturm.isolate().pop() else {
                return Err(Error::Argument(format!("{f} has no real root")));
            };
            let e: RealEnclosure = sturm.refine(&a, &b, &eps)?;
            let d = decimals_for(&eps);
            let digits = e.certified_digits(d);
            let (lo, hi) = (decimal_truncated(e.lo(), d + 2), decimal_ceiled(e.hi(), d + 2));
            if m {
                writeln!(out, "root | {} | {lo} | {hi}", digits.text)?;
            } else {
                writeln!(out, "largest real root of {f}")?;
                writeln!(out, "  {}", digits.text)?;
                writeln!(out, "  in [{lo}, {hi}]")?;
            }
            Ok(OK)
        }
        PisotCmd::Trace { poly, n } => {
            let c = monic(poly)?;
            let n = usize::try_from(*n).map_err(|_| Error::Resource("n too large".into()))?;
            let s = TraceSequence::from_monic(&c).get(n).clone();
            if m {
                writeln!(out, "trace | {n} | {s}")?;
            } else {
                writeln!(out, "S({n}) = {s}  for {}", Poly::from_integers(&c))?;
            }
            Ok(OK)
        }
        PisotCmd::Floor { poly, n } => {
            let p = pisot_number(poly)?;
            let v = floor_power(&p, *n)?;
            if m {
                writeln!(out, "floor | {n} | {v}")?;
            } else {
                writeln!(out, "floor(beta^{n}) = {v}  for beta root of {}", p.poly())?;
                if v.to_string().len() <= 40 && v > BigUint::from(1u32) {
                    writeln!(out, "  = {}", factorize(&v)?.render())?;
                }
            }
            Ok(OK)
        }
    }
}

fn verify_target(t: VerifyTarget, depth: usize, r_max: u64, cfg: &CliConfig, timings: bool) -> Result<VerificationReport> {
    let mills = || {
        let seq = ExponentSequence::mills(depth.max(1));
        let c = cached_chain(&cfg.cache_dir, &seq, depth, &ChainStrategy::greedy())?;
        verify::verify_mills_chain(&c.chain)
    };
    let run = |f: &dyn Fn() -> Result<VerificationReport>| if timings { verify::timed(f) } else { f() };
    match t {
        VerifyTarget::All => verify::verify_all_with(mills, r_max, timings),
        VerifyTarget::Table2 => run(&verify::verify_table2),
        VerifyTarget::Floors => run(&verify::verify_floor_table),
        VerifyTarget::Threshold => run(&verify::verify_threshold),
        VerifyTarget::Mills => run(&mills),
        VerifyTarget::Agcd => run(&|| verify::verify_agcd_formula(r_max)),
        VerifyTarget::RhStep => run(&verify::verify_rh_interval_step),
    }
}
