//! T = 2·ln(2x_0^{1/3} + 1)/(3 ln κ) + 1/3 with x_0 = exp(3·exp(L)).
//!
//! ln(2x_0^{1/3} + 1) = E + ln 2 + δ with E = exp(L) and
//! 0 < δ = ln(1 + 1/(2e^E)) < 2^{−E−1}, so x_0 itself is never formed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::report::{Check, Comparison, Outcome, VerificationReport};
use crate::error::{Error, Result};
use crate::exactnum::elementary::{exp_enclosure, ln2_enclosure, ln_enclosure};
use crate::exactnum::enclosure::{decimal_truncated, parse_rational, rat, RealEnclosure};
use crate::pisot::{dominant_root, CubicCoeffs};

pub const PRINTED_LOG_EXPONENT: &str = "32.76";
pub const PRINTED_THRESHOLD: &str = "400296054181891.5";
pub const PRINTED_CEILING: &str = "400296054181892";
pub const PRINTED_KAPPA: &str = "1.324717";

const BITS: u32 = 160;

/// κ, the real root of X^3 − X − 1.
pub fn kappa(bits: u32) -> Result<RealEnclosure> {
    let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
    dominant_root(&CubicCoeffs::new(0, 1, 1)?, &eps)
}

/// Enclosure of T for the log-exponent L.
pub fn threshold(l: &BigRational, bits: u32) -> Result<RealEnclosure> {
    let e = exp_enclosure(l, bits)?;
    // δ < 2^{−E−1} <= 2^{−(bits+64)}
    if *e.lo() < BigRational::from_integer((bits + 64).into()) {
        return Err(Error::arg("log-exponent too small for the δ bound"));
    }
    let delta = RealEnclosure::new(rat(0, 1), BigRational::new(BigInt::one(), BigInt::one() << (bits + 64)))?;
    let log_term = e.add(&ln2_enclosure(bits)).add(&delta);
    let ln_kappa = ln_enclosure(&kappa(bits)?, bits)?;
    let t = log_term.scale(&rat(2, 1)).div(&ln_kappa.scale(&rat(3, 1)))?;
    Ok(t.add_rational(&rat(1, 3)))
}

/// The binary64 double nearest to the decimal, as an exact rational.
pub fn nearest_double(s: &str) -> Result<BigRational> {
    let x: f64 = s.parse().map_err(|_| Error::arg(format!("not a number: {s:?}")))?;
    BigRational::from_float(x).ok_or_else(|| Error::arg("not finite"))
}

fn show(t: &RealEnclosure) -> String {
    format!("[{}, {}]", decimal_truncated(t.lo(), 4), decimal_truncated(t.hi(), 4))
}

fn value_checks(r: &mut VerificationReport, id: &str, how: &str, l: &BigRational) -> Result<()> {
    let t = threshold(l, BITS)?;
    let printed = parse_rational(PRINTED_THRESHOLD)?;
    let tol = rat(1, 20);
    let inside = *t.lo() >= &printed - &tol && *t.hi() <= &printed + &tol;
    r.push(Check::new(
        format!("threshold.value{id}"),
        format!("threshold constant, {how}"),
        PRINTED_THRESHOLD,
        show(&t),
        Comparison::Tolerance("0.05".into()),
        Outcome::from_bool(inside),
    ));
    let ceiling = match (t.lo().ceil().to_integer(), t.hi().ceil().to_integer()) {
        (a, b) if a == b => a.to_string(),
        _ => "undetermined".to_string(),
    };
    r.push(Check::new(
        format!("threshold.ceiling{id}"),
        format!("integer threshold, {how}"),
        PRINTED_CEILING,
        ceiling.clone(),
        Comparison::Exact,
        Outcome::from_bool(ceiling == PRINTED_CEILING),
    ));
    Ok(())
}

/// κ, then T and its ceiling with L = 32.76 read as an exact decimal, then
/// the same with L read as the nearest binary64 double.
pub fn verify_threshold() -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    let k = kappa(BITS)?.certified_digits(6);
    r.push(Check::new(
        "threshold.kappa",
        "smallest Pisot number",
        PRINTED_KAPPA,
        k.text.clone(),
        Comparison::Prefix,
        Outcome::from_bool(k.text == PRINTED_KAPPA),
    ));
    value_checks(&mut r, "", "L = 32.76 exactly", &parse_rational(PRINTED_LOG_EXPONENT)?)?;
    let d = nearest_double(PRINTED_LOG_EXPONENT)?;
    let how = format!("L = nearest double to 32.76 (32.76 + {:.3e})", (&d - parse_rational(PRINTED_LOG_EXPONENT)?).to_f64().unwrap_or(0.0));
    value_checks(&mut r, ".binary64", &how, &d)?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn near(e: &RealEnclosure, s: &str, tol: BigRational) -> bool {
        let x = parse_rational(s).unwrap();
        *e.lo() >= &x - &tol && *e.hi() <= &x + &tol
    }

    #[test]
    fn values() {
        // High-precision reference values for L = 819/25 and for the double.
        let exact = threshold(&rat(819, 25), BITS).unwrap();
        assert!(near(&exact, "400296054181892.3200657726", rat(1, 1_000_000)));
        let double = threshold(&nearest_double("32.76").unwrap(), BITS).unwrap();
        assert!(near(&double, "400296054181891.5236689029", rat(1, 1_000_000)));
        assert!(exact.width() < rat(1, 1_000_000_000));
    }

    #[test]
    fn report_shape() {
        let r = verify_threshold().unwrap();
        let ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(
            ids,
            ["threshold.kappa", "threshold.value", "threshold.ceiling", "threshold.value.binary64", "threshold.ceiling.binary64"]
        );
        assert!(r.get("threshold.kappa").unwrap().passed());
        assert!(r.get("threshold.value.binary64").unwrap().passed());
        assert!(r.get("threshold.ceiling.binary64").unwrap().passed());
        // Read as an exact decimal, 32.76 does not give the printed value.
        assert!(r.get("threshold.value").unwrap().failed());
        assert_eq!(r.get("threshold.ceiling").unwrap().computed, "400296054181893");
    }
}
