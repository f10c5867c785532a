//! Certified e^x and ln x on rational arguments.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::enclosure::{int_rat, round_down, round_up, RealEnclosure};
use crate::error::{Error, Result};

fn pow2(e: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << e)
}

/// e^y for 0 <= y <= 1/2: Taylor partial sum plus a tail bounded by twice the next term.
fn exp_small(y: &BigRational, bits: u32) -> RealEnclosure {
    let tiny = pow2(bits + 2).recip();
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    let mut k = 0u32;
    loop {
        sum += &term;
        k += 1;
        term = round_up(&(&term * y / int_rat(k)), bits + 8);
        if term <= tiny {
            break;
        }
    }
    // Terms were rounded up, so the partial sum is an upper estimate of its
    // exact value; the lower end drops the rounding slack.
    let slack = int_rat(k) * pow2(bits + 8).recip();
    let lo = round_down(&(&sum - slack), bits + 4);
    let hi = round_up(&(sum + term * int_rat(2)), bits + 4);
    RealEnclosure::new(lo.min(hi.clone()), hi).expect("ordered")
}

/// Enclosure of e^x with relative width about 2^-bits.
pub fn exp_enclosure(x: &BigRational, bits: u32) -> Result<RealEnclosure> {
    if x.is_negative() {
        return exp_enclosure(&-x, bits)?.recip();
    }
    // halve until x / 2^s <= 1/2, then square s times
    let mut s = 0u32;
    let half = BigRational::new(1.into(), 2.into());
    while x / pow2(s) > half {
        s += 1;
        if s > 4096 {
            return Err(Error::Resource("exponent too large".into()));
        }
    }
    let w = bits + s + 16;
    let mut e = exp_small(&(x / pow2(s)), w);
    for _ in 0..s {
        e = e.mul(&e).round_outward(w);
    }
    Ok(e)
}

/// ln m for 1 <= m <= 2 through 2·atanh((m−1)/(m+1)).
fn ln_small(m: &BigRational, bits: u32) -> RealEnclosure {
    let one = BigRational::one();
    let z = (m - &one) / (m + &one);
    let z2 = &z * &z;
    let tiny = pow2(bits + 2).recip();
    let mut sum = BigRational::zero();
    let mut power = z.clone();
    let mut j = 0u32;
    let slack_unit = pow2(bits + 8).recip();
    loop {
        sum += round_down(&(&power / int_rat(2 * j + 1)), bits + 8);
        power = round_up(&(&power * &z2), bits + 8);
        j += 1;
        if power <= tiny {
            break;
        }
    }
    // tail: Σ_{i>=j} z^{2i+1}/(2i+1) <= z^{2j+1} / ((2j+1)(1 − z^2))
    let tail = &power / (int_rat(2 * j + 1) * (&one - &z2));
    let slack = int_rat(2 * j as i64 + 2) * slack_unit;
    let lo = round_down(&(&sum * int_rat(2) - &slack), bits + 4).max(BigRational::zero());
    let hi = round_up(&((sum + tail) * int_rat(2) + slack), bits + 4);
    RealEnclosure::new(lo, hi).expect("ordered")
}

/// Enclosure of ln 2.
pub fn ln2_enclosure(bits: u32) -> RealEnclosure {
    ln_small(&int_rat(2), bits)
}

/// Enclosure of ln x for rational x > 0, absolute width about 2^-bits·(1 + |log2 x|).
pub fn ln_rational(x: &BigRational, bits: u32) -> Result<RealEnclosure> {
    if !x.is_positive() {
        return Err(Error::arg("ln needs a positive argument"));
    }
    if *x < BigRational::one() {
        return Ok(ln_rational(&x.recip(), bits)?.neg());
    }
    // x = 2^k · m with 1 <= m < 2
    let mut k = (x.numer().bits() as i64) - (x.denom().bits() as i64);
    let scale = |k: i64| if k >= 0 { pow2(k as u32) } else { pow2((-k) as u32).recip() };
    let mut m = x / scale(k);
    while m >= int_rat(2) {
        k += 1;
        m = x / scale(k);
    }
    while m < BigRational::one() {
        k -= 1;
        m = x / scale(k);
    }
    let ln_m = ln_small(&m, bits);
    Ok(ln2_enclosure(bits).scale(&int_rat(k)).add(&ln_m))
}

/// ln over a positive enclosure; ln is increasing.
pub fn ln_enclosure(x: &RealEnclosure, bits: u32) -> Result<RealEnclosure> {
    if !x.is_positive() {
        return Err(Error::arg("ln needs a positive enclosure"));
    }
    let lo = ln_rational(x.lo(), bits)?;
    let hi = ln_rational(x.hi(), bits)?;
    RealEnclosure::new(lo.lo().clone(), hi.hi().clone())
}
