//! Integer roots and exact comparisons between rational powers.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed};

use super::enclosure::RealEnclosure;
use crate::error::{Error, Result};

/// Largest m with m^k <= n.
pub fn floor_nth_root(n: &BigUint, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::arg("root index must be at least 1"));
    }
    let mut m = n.nth_root(k);
    // Guard against any off-by-one in the backing routine.
    while Pow::pow(&m, k) > *n {
        m -= 1u32;
    }
    while Pow::pow(&(&m + 1u32), k) <= *n {
        m += 1u32;
    }
    Ok(m)
}

/// Smallest m with m^k >= n.
pub fn ceil_nth_root(n: &BigUint, k: u32) -> Result<BigUint> {
    let m = floor_nth_root(n, k)?;
    if Pow::pow(&m, k) == *n {
        Ok(m)
    } else {
        Ok(m + 1u32)
    }
}

/// Ordering of q against p^(a/b), decided as q^b against p^a.
pub fn compare_powers(p: &BigUint, a: u64, q: &BigUint, b: u64) -> Result<Ordering> {
    if b == 0 {
        return Err(Error::arg("denominator exponent must be at least 1"));
    }
    Ok(Pow::pow(q, b).cmp(&Pow::pow(p, a)))
}

/// Ordering of a non-negative rational x against p^(a/b).
///
/// With x = u/v this is u^b against p^a * v^b.
pub fn compare_rational_power(x: &BigRational, p: &BigUint, a: u64, b: u64) -> Result<Ordering> {
    if b == 0 {
        return Err(Error::arg("denominator exponent must be at least 1"));
    }
    if x.is_negative() {
        return Ok(Ordering::Less);
    }
    let u = x.numer().magnitude();
    let v = x.denom().magnitude();
    let lhs = Pow::pow(u, b);
    let rhs = Pow::pow(p, a) * Pow::pow(v, b);
    Ok(lhs.cmp(&rhs))
}

/// Enclosure of n^(1/k) of width at most `eps`.
///
/// The result is the dyadic interval [r/2^s, (r+1)/2^s] with the least s
/// such that 2^-s <= eps. This is exactly where bisection from
/// [floor_nth_root(n, k), floor_nth_root(n, k) + 1] ends after s halvings;
/// r comes from one verified integer root instead of s comparisons.
pub fn root_enclosure(n: &BigUint, k: u32, eps: &BigRational) -> Result<RealEnclosure> {
    if !eps.is_positive() {
        return Err(Error::arg("enclosure width must be positive"));
    }
    if k == 0 {
        return Err(Error::arg("root index must be at least 1"));
    }
    let m = floor_nth_root(n, k)?;
    if Pow::pow(&m, k) == *n {
        return Ok(RealEnclosure::point(BigRational::from_integer(BigInt::from(m))));
    }
    // least s with 2^s >= 1/eps
    let need = eps.recip().ceil().to_integer();
    let mut s: u32 = 0;
    while (BigInt::one() << s) < need {
        s += 1;
    }
    dyadic_root(n, k, s)
}

/// [r/2^s, (r+1)/2^s] with r = floor(n^(1/k) · 2^s); a point when exact.
pub fn dyadic_root(n: &BigUint, k: u32, s: u32) -> Result<RealEnclosure> {
    let scaled: BigUint = n << (s as u64 * k as u64);
    let r = floor_nth_root(&scaled, k)?;
    let den = BigInt::one() << s;
    let lo = BigRational::new(BigInt::from(r.clone()), den.clone());
    if Pow::pow(&r, k) == scaled {
        return Ok(RealEnclosure::point(lo));
    }
    let hi = BigRational::new(BigInt::from(r + 1u32), den);
    RealEnclosure::new(lo, hi)
}

/// Reference bisection from [m, m+1]; kept as an oracle for [`dyadic_root`].
pub fn bisect_root(n: &BigUint, k: u32, s: u32) -> Result<RealEnclosure> {
    let m = floor_nth_root(n, k)?;
    let mut lo_num = m;
    for step in 1..=s {
        let mid: BigUint = (&lo_num << 1u32) + 1u32;
        let lhs: BigUint = Pow::pow(&mid, k);
        let rhs: BigUint = n << (step as u64 * k as u64);
        if lhs <= rhs {
            lo_num = mid;
        } else {
            lo_num <<= 1u32;
        }
    }
    let den = BigInt::one() << s;
    let lo = BigRational::new(BigInt::from(lo_num.clone()), den.clone());
    let hi = BigRational::new(BigInt::from(lo_num + 1u32), den);
    RealEnclosure::new(lo, hi)
}

/// [`root_enclosure`] with width 2^-bits.
pub fn root_enclosure_bits(n: &BigUint, k: u32, bits: u32) -> Result<RealEnclosure> {
    let eps = BigRational::new(BigInt::one(), BigInt::from(BigUint::one() << bits));
    root_enclosure(n, k, &eps)
}
