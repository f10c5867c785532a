//! Integer polynomials with exact real-root isolation by Sturm sequences.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::enclosure::RealEnclosure;

/// Coefficients low-first; no trailing zeros, so the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(low_first: &[BigInt]) -> Self {
        Self::new(low_first.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn from_i64(low_first: &[i64]) -> Self {
        Self::new(low_first.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Remainder of division by a non-zero `d`.
    pub fn rem(&self, d: &Poly) -> Poly {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dl = d.leading();
        let dd = d.degree();
        while r.len() > dd && !r.is_empty() {
            let q = r.last().expect("non-empty") / &dl;
            let shift = r.len() - 1 - dd;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// 1 + max |c_i / c_n| bounds every root's modulus.
    pub fn cauchy_bound(&self) -> BigRational {
        let lead = self.leading().abs();
        let m = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(BigRational::zero);
        m + BigRational::one()
    }
}

impl fmt::Display for Poly {
    /// `X^3 - 2X^2 + X - 1`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let mag = if a.is_integer() { a.numer().to_string() } else { format!("({a})") };
            match (i, a.is_one()) {
                (0, _) => f.write_str(&mag)?,
                (1, true) => f.write_str("X")?,
                (1, false) => write!(f, "{mag}X")?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "{mag}X^{i}")?,
            }
        }
        Ok(())
    }
}

/// Sturm sequence p, p', −rem(p, p'), ...
#[derive(Debug, Clone)]
pub struct Sturm {
    chain: Vec<Poly>,
}

fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

impl Sturm {
    pub fn new(p: &Poly) -> Result<Self> {
        if p.degree() == 0 {
            return Err(Error::arg("Sturm sequence needs a non-constant polynomial"));
        }
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        Ok(Self { chain })
    }

    pub fn poly(&self) -> &Poly {
        &self.chain[0]
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        variations(self.chain.iter().map(|p| sign(&p.eval(x))))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        variations(self.chain.iter().map(|p| {
            let s = sign(&p.leading());
            if positive || p.degree() % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Distinct real roots in (a, b].
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Distinct real roots in (a, ∞).
    pub fn count_above(&self, a: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at_infinity(true))
    }

    /// Distinct real roots.
    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false).saturating_sub(self.variations_at_infinity(true))
    }

    /// Intervals (a, b], ascending, each holding exactly one distinct root.
    pub fn isolate(&self) -> Vec<(BigRational, BigRational)> {
        let b = self.poly().cauchy_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((a, b)) = stack.pop() {
            match self.count_in(&a, &b) {
                0 => {}
                1 => out.push((a, b)),
                _ => {
                    let mid = (&a + &b) / BigRational::from_integer(2.into());
                    stack.push((mid.clone(), b));
                    stack.push((a, mid));
                }
            }
        }
        out.sort();
        out
    }

    /// Shrink an isolating interval (a, b] to width <= eps; a closed enclosure.
    pub fn refine(&self, a: &BigRational, b: &BigRational, eps: &BigRational) -> Result<RealEnclosure> {
        if !eps.is_positive() {
            return Err(Error::arg("eps must be positive"));
        }
        let p = self.poly();
        let (mut a, mut b) = (a.clone(), b.clone());
        if p.eval(&b).is_zero() {
            return Ok(RealEnclosure::point(b));
        }
        let two = BigRational::from_integer(2.into());
        while &b - &a > *eps {
            let mid = (&a + &b) / &two;
            let pm = p.eval(&mid);
            if pm.is_zero() {
                return Ok(RealEnclosure::point(mid));
            }
            if self.count_in(&a, &mid) == 1 {
                b = mid;
            } else {
                a = mid;
            }
        }
        RealEnclosure::new(a, b)
    }

    /// Enclosures of every distinct real root, ascending, each of width <= eps.
    pub fn real_roots(&self, eps: &BigRational) -> Result<Vec<RealEnclosure>> {
        self.isolate().iter().map(|(a, b)| self.refine(a, b, eps)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::enclosure::rat;

    #[test]
    fn display() {
        assert_eq!(Poly::from_i64(&[-1, 2, -3, 1]).to_string(), "X^3 - 3X^2 + 2X - 1");
        assert_eq!(Poly::from_i64(&[-1, -1, 0, 1]).to_string(), "X^3 - X - 1");
        assert_eq!(Poly::from_i64(&[1, 0, -3, 1]).to_string(), "X^3 - 3X^2 + 1");
        assert_eq!(Poly::from_i64(&[0, 0]).to_string(), "0");
    }

    #[test]
    fn counts() {
        // (X − 1)(X − 2)(X + 3)
        let s = Sturm::new(&Poly::from_i64(&[6, -7, 0, 1])).unwrap();
        assert_eq!(s.count_real(), 3);
        assert_eq!(s.count_in(&rat(0, 1), &rat(2, 1)), 2);
        assert_eq!(s.count_above(&rat(3, 2)), 1);
        let iso = s.isolate();
        assert_eq!(iso.len(), 3);
        let roots = s.real_roots(&rat(1, 1000)).unwrap();
        assert!(roots[0].contains(&rat(-3, 1)) && roots[1].contains(&rat(1, 1)) && roots[2].contains(&rat(2, 1)));
        // X^3 − X − 1 has one real root
        assert_eq!(Sturm::new(&Poly::from_i64(&[-1, -1, 0, 1])).unwrap().count_real(), 1);
        // X^2 + 1 has none
        assert_eq!(Sturm::new(&Poly::from_i64(&[1, 0, 1])).unwrap().count_real(), 0);
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (X − 1)^2 (X + 1)
        let s = Sturm::new(&Poly::from_i64(&[1, -1, -1, 1])).unwrap();
        assert_eq!(s.count_real(), 2);
    }

    #[test]
    fn remainder() {
        let p = Poly::from_i64(&[-1, -1, 0, 1]);
        let d = Poly::from_i64(&[-1, 1]);
        assert_eq!(p.rem(&d), Poly::from_i64(&[-1]));
    }
}
