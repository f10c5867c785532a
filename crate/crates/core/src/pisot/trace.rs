//! Power sums S(n) = β_1^n + ... + β_ℓ^n and floors of Pisot powers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::PisotNumber;
use crate::error::{Error, Result};
use crate::exactnum::enclosure::{int_rat, round_up};

/// S(n) for the conjugates of a Pisot number, memoized.
///
/// With f = X^ℓ + c_{ℓ−1}X^{ℓ−1} + ... + c_0, S(n+ℓ) = e_{ℓ−1}S(n+ℓ−1) + ... + e_0 S(n)
/// where e_i = −c_i; the first ℓ values come from Newton's identities.
#[derive(Debug, Clone)]
pub struct TraceSequence {
    e: Vec<BigInt>,
    memo: Vec<BigInt>,
}

impl TraceSequence {
    pub fn new(p: &PisotNumber) -> Self {
        Self::from_monic(p.coeffs())
    }

    /// Any monic integer polynomial, low-first.
    pub fn from_monic(c: &[BigInt]) -> Self {
        let l = c.len() - 1;
        let e: Vec<BigInt> = c[..l].iter().map(|x| -x).collect();
        let mut memo = vec![BigInt::from(l)];
        for k in 1..l {
            // S(k) = −(c_{ℓ−1}S(k−1) + ... + c_{ℓ−k+1}S(1)) − k c_{ℓ−k}
            let mut s = -BigInt::from(k) * &c[l - k];
            for j in 1..k {
                s -= &c[l - j] * &memo[k - j];
            }
            memo.push(s);
        }
        Self { e, memo }
    }

    /// e_0, ..., e_{ℓ−1}.
    pub fn recurrence(&self) -> &[BigInt] {
        &self.e
    }

    pub fn get(&mut self, n: usize) -> &BigInt {
        let l = self.e.len();
        while self.memo.len() <= n {
            let m = self.memo.len();
            let next = (0..l).map(|i| &self.e[i] * &self.memo[m - l + i]).sum();
            self.memo.push(next);
        }
        &self.memo[n]
    }

    /// S(0), ..., S(n).
    pub fn prefix(&mut self, n: usize) -> &[BigInt] {
        self.get(n);
        &self.memo[..=n]
    }
}

/// S(n).
pub fn trace_power(p: &PisotNumber, n: u64) -> Result<BigInt> {
    let n = usize::try_from(n).map_err(|_| Error::Resource("exponent too large".into()))?;
    Ok(TraceSequence::new(p).get(n).clone())
}

/// Characteristic polynomial of β^m (monic, low-first), from S(m), ..., S(ℓm).
pub fn power_char_poly(p: &PisotNumber, m: u64) -> Result<Vec<BigInt>> {
    if m == 0 {
        return Err(Error::arg("power must be positive"));
    }
    let m = usize::try_from(m).map_err(|_| Error::Resource("power too large".into()))?;
    let l = p.degree();
    let mut ts = TraceSequence::new(p);
    let sums: Vec<BigInt> = (1..=l).map(|j| ts.get(j * m).clone()).collect();
    // k σ_k = Σ_{i=1..k} (−1)^{i−1} σ_{k−i} P_i
    let mut sigma = vec![BigInt::one()];
    for k in 1..=l {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let t = &sigma[k - i] * &sums[i - 1];
            if i % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        let (q, r) = (&acc / BigInt::from(k), &acc % BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::Internal("non-integral symmetric function".into()));
        }
        sigma.push(q);
    }
    // X^ℓ − σ_1 X^{ℓ−1} + σ_2 X^{ℓ−2} − ...
    let mut out = vec![BigInt::zero(); l + 1];
    for (k, s) in sigma.iter().enumerate() {
        out[l - k] = if k % 2 == 0 { s.clone() } else { -s };
    }
    Ok(out)
}

/// Upper bound on (ℓ−1)·B^n, rounded outward at every step.
fn conjugate_sum_bound(p: &PisotNumber, n: u64) -> BigRational {
    let b = p.conjugate_modulus_bound();
    let mut acc = BigRational::one();
    for _ in 0..n {
        acc = round_up(&(acc * b), 64);
        if acc.is_zero() {
            break;
        }
    }
    acc * int_rat(p.degree() as i64 - 1)
}

/// ⌊β^n⌋ exactly.
///
/// |β^n − S(n)| <= (ℓ−1)B^n locates the floor within a few integers of S(n).
/// For integer x >= 1 the characteristic polynomial g of β^n has g(x) <= 0
/// exactly when x <= β^n, since every other root of g has modulus < 1.
pub fn floor_power(p: &PisotNumber, n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::arg("n must be positive"));
    }
    let s = trace_power(p, n)?;
    let k = conjugate_sum_bound(p, n).ceil().to_integer();
    let g = Poly::from_integers(&power_char_poly(p, n)?);
    let lowest = (&s - &k).max(BigInt::one());
    let mut m = &s + &k;
    while m >= lowest {
        if !g.eval(&BigRational::from_integer(m.clone())).is_positive() {
            return Ok(m.to_biguint().expect("m >= 1"));
        }
        m -= 1;
    }
    Err(Error::Internal(format!("no floor candidate for {}^{n}", p.poly())))
}

/// ⌊β^n⌋ from an enclosure of β raised to the n-th power, refined until the
/// floor is determined.
pub fn floor_power_by_enclosure(p: &PisotNumber, n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::arg("n must be positive"));
    }
    let int_bits = p.dominant_root().hi().to_integer().bits() + 1;
    let mut bits = (64 + n * int_bits).min(1 << 20) as u32;
    while bits <= 1 << 20 {
        let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
        let e = p.root_enclosure(&eps)?.pow_rounded(n, bits)?;
        if let Some(f) = e.floor() {
            return f.to_biguint().ok_or_else(|| Error::Internal("negative floor".into()));
        }
        bits *= 2;
    }
    Err(Error::Indeterminate(format!("⌊β^{n}⌋ not determined for {}", p.poly())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    use crate::exactnum::enclosure::rat;
    use crate::exactnum::factor::factorize;
    use crate::pisot::{enumerate_cubic_pisot, CubicCoeffs};

    fn cubic(a2: i64, a1: i64, a0: i64) -> PisotNumber {
        PisotNumber::from_cubic(&CubicCoeffs::new(a2, a1, a0).unwrap()).unwrap().unwrap()
    }

    #[test]
    fn traces() {
        let g = PisotNumber::golden_ratio();
        assert_eq!(trace_power(&g, 4).unwrap(), BigInt::from(7));
        let t = cubic(0, 1, 1);
        assert_eq!(trace_power(&t, 1).unwrap(), BigInt::zero());
        let a4 = cubic(1, 1, 1);
        let got: Vec<i64> = TraceSequence::new(&a4).prefix(5).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(got, [3, 1, 3, 7, 11, 21]);
    }

    #[test]
    fn char_poly_of_powers() {
        // φ^2 has minimal polynomial X^2 − 3X + 1
        let g = PisotNumber::golden_ratio();
        assert_eq!(power_char_poly(&g, 2).unwrap(), [1, -3, 1].map(BigInt::from));
        // β^1 recovers f
        let a = cubic(3, -2, 1);
        assert_eq!(power_char_poly(&a, 1).unwrap(), a.coeffs());
    }

    #[test]
    fn floors_from_the_table() {
        let t = enumerate_cubic_pisot(&rat(3, 1)).unwrap();
        let f = |j: usize, n: u64| floor_power(&t[j - 1], n).unwrap();
        assert_eq!(f(5, 4), BigUint::from(21u32));
        assert_eq!(f(6, 13), BigUint::from(29226u32));
        assert_eq!(factorize(&f(6, 13)).unwrap().render(), "2·3·4871");
        let nine = f(9, 40);
        assert_eq!(nine, BigUint::from(2u64 * 3 * 43 * 1750616861141));
        let rest: Vec<u32> = (7..=20).filter(|&j| j != 9).map(|j| f(j, 4).try_into().unwrap()).collect();
        assert_eq!(rest, [25, 26, 30, 39, 40, 42, 49, 58, 64, 64, 68, 70, 72]);
        assert_eq!(f(1, 2), BigUint::one());
        assert_eq!(f(2, 8), BigUint::from(21u32));
        for j in 1..=4 {
            assert_eq!(f(j, 1), BigUint::one());
        }
        assert_eq!(floor_power(&PisotNumber::golden_ratio(), 1).unwrap(), BigUint::one());
    }

    #[test]
    fn exact_and_enclosure_floors_agree() {
        let t = enumerate_cubic_pisot(&rat(3, 1)).unwrap();
        for p in &t {
            for n in [1u64, 2, 3, 5, 8, 13, 40] {
                assert_eq!(floor_power(p, n).unwrap(), floor_power_by_enclosure(p, n).unwrap(), "{} n={n}", p.poly());
            }
        }
    }
}
