//! Reproduction of the concrete numeric claims, one check per claim.

pub mod report;
pub mod rh;
pub mod table;
pub mod threshold;

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::chain::{build_chain, certified_digits, ChainStrategy, PrimeChain};
use crate::error::{Error, Result};
use crate::sequences::{agcd, agcd_shifted_geometric_exact, ExponentSequence, Family};

pub use report::{timed, Check, Comparison, Outcome, VerificationReport};
pub use rh::verify_rh_interval_step;
pub use table::{verify_floor_table, verify_table2};
pub use threshold::verify_threshold;

/// The printed 30 decimals of Mills' constant.
pub const MILLS_DIGITS: &str = "1.306377883863080690468614492602";

pub const DEFAULT_MILLS_DEPTH: usize = 8;
pub const DEFAULT_AGCD_R_MAX: u64 = 50;

/// Check the certified digits of a chain for 3^k against the printed ones.
pub fn verify_mills_chain(chain: &PrimeChain) -> Result<VerificationReport> {
    let mills = Family::GeometricFloor { alpha: BigRational::from_integer(1.into()), b: BigRational::from_integer(3.into()) };
    if *chain.sequence.family() != mills {
        return Err(Error::arg("chain is not for C_k = 3^k"));
    }
    let printed_decimals = MILLS_DIGITS.len() - 2;
    let d = certified_digits(chain, printed_decimals)?;
    let outcome = if !MILLS_DIGITS.starts_with(&d.text) || d.text.is_empty() {
        Outcome::Fail
    } else if d.decimals == 0 {
        Outcome::Insufficient("insufficient depth".into())
    } else {
        Outcome::Pass
    };
    let mut r = VerificationReport::default();
    r.push(Check::new(
        "mills.digits",
        "decimal expansion of Mills' constant",
        MILLS_DIGITS,
        format!("{} ({} of {printed_decimals} decimals certified at depth {})", d.text, d.decimals, chain.depth()),
        Comparison::Prefix,
        outcome,
    ));
    Ok(r)
}

pub fn verify_mills_digits(depth: usize) -> Result<VerificationReport> {
    let seq = ExponentSequence::mills(depth.max(1));
    verify_mills_chain(&build_chain(&seq, depth, &ChainStrategy::greedy())?)
}

/// agcd(r·3^k − 1) by scanning against 2 for odd r, 1 for even r.
pub fn verify_agcd_formula(r_max: u64) -> Result<VerificationReport> {
    if r_max == 0 {
        return Err(Error::arg("r_max must be at least 1"));
    }
    let mut report = VerificationReport::default();
    for r in 1..=r_max {
        let seq = ExponentSequence::shifted(r, 3, -1, 20)?;
        let scan = agcd(&seq, 10, 10)?;
        let exact = agcd_shifted_geometric_exact(&BigUint::from(r), &BigUint::from(3u32), &(-1).into())?;
        report.push(Check::new(
            format!("agcd.r{r}"),
            format!("agcd of {r}·3^k − 1"),
            format!("{exact} ({} r)", if r % 2 == 1 { "odd" } else { "even" }),
            scan.describe(),
            Comparison::Exact,
            Outcome::from_bool(scan.value.as_ref() == Some(&exact)),
        ));
    }
    Ok(report)
}

/// Every check in a fixed order.
pub fn verify_all(mills_depth: usize, agcd_r_max: u64) -> Result<VerificationReport> {
    verify_all_with(|| verify_mills_digits(mills_depth), agcd_r_max, false)
}

/// As `verify_all`, with a caller-supplied Mills check (for cached chains).
pub fn verify_all_with(
    mills: impl FnOnce() -> Result<VerificationReport>,
    agcd_r_max: u64,
    timings: bool,
) -> Result<VerificationReport> {
    let run = |f: &dyn Fn() -> Result<VerificationReport>| if timings { timed(f) } else { f() };
    let mut r = VerificationReport::default();
    r.append(run(&verify_table2)?);
    r.append(run(&verify_floor_table)?);
    r.append(run(&verify_threshold)?);
    r.append(if timings { timed(mills)? } else { mills()? });
    r.append(run(&|| verify_agcd_formula(agcd_r_max))?);
    r.append(run(&verify_rh_interval_step)?);
    Ok(r)
}
