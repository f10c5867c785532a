//! Exact check of the implication
//! ‖x‖ > 1/(c⌊x⌋^{c−1})  ⇒  ⌊x⌋^c ≤ ⌊x^c⌋ < (⌊x⌋ + 1)^c − 1
//! for x ≥ 1 and rational c = a/b ≥ 1.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::enclosure::{dist_to_nearest_integer, floor_natural, RealEnclosure};
use crate::exactnum::roots::{dyadic_root, floor_nth_root};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealIneqResult {
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
}

impl IdealIneqResult {
    pub fn implication_holds(&self) -> bool {
        !self.hypothesis_holds || self.conclusion_holds
    }
}

fn exponent_parts(c: &BigRational) -> Result<(u64, u32)> {
    if *c < BigRational::one() {
        return Err(Error::arg(format!("c must be at least 1, got {c}")));
    }
    let a = c.numer().to_u64().ok_or_else(|| Error::Resource("numerator of c too large".into()))?;
    let b = c.denom().to_u32().ok_or_else(|| Error::Resource("denominator of c too large".into()))?;
    Ok((a, b))
}

/// (c·d)^b · f^{a−b} > 1, i.e. d > 1/(c f^{c−1}).
fn hypothesis(d: &BigRational, f: &BigUint, c: &BigRational, a: u64, b: u32) -> bool {
    let lhs: BigRational = Pow::pow(&(c * d), b) * BigRational::from(BigInt::from(Pow::pow(f, a - b as u64)));
    lhs > BigRational::one()
}

/// f^a ≤ F^b and (F + 1)^b < (f + 1)^a.
fn conclusion(f: &BigUint, big_f: &BigUint, a: u64, b: u32) -> bool {
    Pow::pow(f, a) <= Pow::pow(big_f, b) && Pow::pow(&(big_f + 1u32), b) < Pow::pow(&(f + 1u32), a)
}

/// ⌊x^{a/b}⌋ = ⌊⌊x^a⌋^{1/b}⌋.
fn floor_power(x: &BigRational, a: u64, b: u32) -> Result<BigUint> {
    let xa: BigRational = Pow::pow(x, a);
    let n = floor_natural(&xa).ok_or_else(|| Error::arg("x must be non-negative"))?;
    floor_nth_root(&n, b)
}

/// Exact evaluation at a rational point.
pub fn idealineq_check_rational(x: &BigRational, c: &BigRational) -> Result<IdealIneqResult> {
    let (a, b) = exponent_parts(c)?;
    if *x < BigRational::one() {
        return Err(Error::arg(format!("x must be at least 1, got {x}")));
    }
    let f = floor_natural(x).expect("x >= 1");
    let hypothesis_holds = hypothesis(&dist_to_nearest_integer(x), &f, c, a, b);
    let big_f = floor_power(x, a, b)?;
    Ok(IdealIneqResult { hypothesis_holds, conclusion_holds: conclusion(&f, &big_f, a, b) })
}

/// Evaluation over an enclosure; every quantity must be the same at all points.
pub fn idealineq_check(x: &RealEnclosure, c: &BigRational) -> Result<IdealIneqResult> {
    let (a, b) = exponent_parts(c)?;
    let x = x.closure();
    if *x.lo() < BigRational::one() {
        return Err(Error::arg("enclosure must lie in [1, ∞)"));
    }
    let f = x.floor().ok_or_else(|| Error::Indeterminate("⌊x⌋ is not determined by the enclosure".into()))?;
    let f = f.to_biguint().expect("x >= 1");
    // ‖·‖ is piecewise linear on [f, f+1] with its peak at f + 1/2.
    let half = BigRational::from(BigInt::from(f.clone())) + BigRational::new(1.into(), 2.into());
    let d_lo = dist_to_nearest_integer(x.lo()).min(dist_to_nearest_integer(x.hi()));
    let d_hi = if x.contains(&half) {
        BigRational::new(1.into(), 2.into())
    } else {
        dist_to_nearest_integer(x.lo()).max(dist_to_nearest_integer(x.hi()))
    };
    let h_lo = hypothesis(&d_lo, &f, c, a, b);
    let h_hi = hypothesis(&d_hi, &f, c, a, b);
    if h_lo != h_hi {
        return Err(Error::Indeterminate("hypothesis changes inside the enclosure".into()));
    }
    let f_lo = floor_power(x.lo(), a, b)?;
    let f_hi = floor_power(x.hi(), a, b)?;
    if f_lo != f_hi {
        return Err(Error::Indeterminate("⌊x^c⌋ is not determined by the enclosure".into()));
    }
    Ok(IdealIneqResult { hypothesis_holds: h_lo, conclusion_holds: conclusion(&f, &f_lo, a, b) })
}

/// Whether [p^c, p^c + c·p^{c−1}] ⊆ [p^c, (p+1)^c − 1], i.e.
/// p^c + c·p^{c−1} ≤ (p+1)^c − 1, decided exactly for integer c and by
/// refining enclosures otherwise.
pub fn const_interval_contained(p: &BigUint, c: &BigRational) -> Result<bool> {
    let (a, b) = exponent_parts(c)?;
    if p.is_zero() {
        return Err(Error::arg("p must be positive"));
    }
    if b == 1 {
        let lhs: BigUint = Pow::pow(p, a) + BigUint::from(a) * Pow::pow(p, a - 1);
        return Ok(lhs < Pow::pow(&(p + 1u32), a));
    }
    let pa = Pow::pow(p, a);
    let pab = Pow::pow(p, a - b as u64);
    let qa = Pow::pow(&(p + 1u32), a);
    let c_enc = RealEnclosure::point(c.clone());
    let mut bits = 64;
    while bits <= 1 << 14 {
        let lhs = dyadic_root(&pa, b, bits)?.add(&c_enc.mul(&dyadic_root(&pab, b, bits)?));
        let rhs = dyadic_root(&qa, b, bits)?.add_rational(&-BigRational::one());
        if lhs.hi() <= rhs.lo() {
            return Ok(true);
        }
        if lhs.lo() > rhs.hi() {
            return Ok(false);
        }
        bits *= 2;
    }
    Err(Error::Indeterminate(format!("cannot separate the endpoints for p = {p}, c = {c}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::enclosure::rat;

    fn check(x: BigRational, c: BigRational) -> (bool, bool) {
        let r = idealineq_check_rational(&x, &c).unwrap();
        (r.hypothesis_holds, r.conclusion_holds)
    }

    #[test]
    fn examples() {
        assert_eq!(check(rat(5, 2), rat(2, 1)), (true, true));
        assert!(!check(rat(2, 1), rat(5, 1)).0);
        assert_eq!(check(rat(39, 10), rat(3, 1)), (true, true));
        assert!(idealineq_check_rational(&rat(1, 2), &rat(2, 1)).is_err());
        assert!(idealineq_check_rational(&rat(2, 1), &rat(1, 2)).is_err());
    }

    #[test]
    fn fractional_exponent() {
        // x = 5/2, c = 3/2: ‖x‖ = 1/2 > 1/(1.5·√2); ⌊2.5^{1.5}⌋ = 3, 2^{1.5} ≈ 2.83 ≤ 3, 4 < 3^{1.5} ≈ 5.196
        assert_eq!(check(rat(5, 2), rat(3, 2)), (true, true));
    }

    #[test]
    fn enclosure_version() {
        let e = RealEnclosure::new(rat(249, 100), rat(251, 100)).unwrap();
        let r = idealineq_check(&e, &rat(2, 1)).unwrap();
        assert!(r.hypothesis_holds && r.conclusion_holds);
        let straddle = RealEnclosure::new(rat(19, 10), rat(21, 10)).unwrap();
        assert!(matches!(idealineq_check(&straddle, &rat(2, 1)), Err(Error::Indeterminate(_))));
        let point = RealEnclosure::point(rat(39, 10));
        assert_eq!(idealineq_check(&point, &rat(3, 1)).unwrap(), idealineq_check_rational(&rat(39, 10), &rat(3, 1)).unwrap());
    }

    #[test]
    fn const_interval() {
        for p in [2u32, 3, 5, 7, 11, 1361] {
            let p = BigUint::from(p);
            assert!(const_interval_contained(&p, &rat(2, 1)).unwrap());
            assert!(const_interval_contained(&p, &rat(3, 1)).unwrap());
            assert!(const_interval_contained(&p, &rat(5, 2)).unwrap());
            assert!(const_interval_contained(&p, &rat(201, 100)).unwrap());
        }
        // Below c = 2 the second-order term no longer covers the −1.
        assert!(!const_interval_contained(&BigUint::from(1000u32), &rat(3, 2)).unwrap());
    }
}
