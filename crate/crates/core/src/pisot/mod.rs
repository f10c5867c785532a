//! Cubic Pisot numbers: Akiyama's criterion, enumeration below a bound,
//! certified dominant roots, trace sequences and floors of powers.

pub mod poly;
pub mod trace;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::enclosure::{int_rat, round_up, sqrt_enclosure, RealEnclosure};
use crate::exactnum::factor::divisors;
use poly::{Poly, Sturm};

pub use trace::{floor_power, floor_power_by_enclosure, power_char_poly, trace_power, TraceSequence};

/// f(X) = X^3 − a2 X^2 − a1 X − a0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubicCoeffs {
    pub a2: i64,
    pub a1: i64,
    pub a0: i64,
}

impl CubicCoeffs {
    pub fn new(a2: i64, a1: i64, a0: i64) -> Result<Self> {
        if a0 == 0 {
            return Err(Error::arg("a0 must be non-zero"));
        }
        Ok(Self { a2, a1, a0 })
    }

    /// Monic integer coefficients, low-first.
    pub fn monic(&self) -> Vec<BigInt> {
        vec![(-self.a0).into(), (-self.a1).into(), (-self.a2).into(), BigInt::one()]
    }

    pub fn poly(&self) -> Poly {
        Poly::from_integers(&self.monic())
    }
}

impl fmt::Display for CubicCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly())
    }
}

/// |a1 − 1| < a2 + a0 and a0^2 − a1 < sgn(a0)(1 + a2 a0).
pub fn akiyama_criterion(c: &CubicCoeffs) -> Result<bool> {
    if c.a0 == 0 {
        return Err(Error::arg("a0 must be non-zero"));
    }
    let (a2, a1, a0) = (c.a2 as i128, c.a1 as i128, c.a0 as i128);
    Ok((a1 - 1).abs() < a2 + a0 && a0 * a0 - a1 < a0.signum() * (1 + a2 * a0))
}

/// Bits behind the 10^-25 root width used for tables.
pub const TABLE_BITS: u32 = 90;

fn eps_bits(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

/// A real algebraic integer > 1 whose other conjugates lie in the open unit disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PisotNumber {
    /// Monic minimal polynomial, low-first.
    coeffs: Vec<BigInt>,
    dominant_root: RealEnclosure,
    conjugate_bound: BigRational,
}

/// No root in Q; complete for degree <= 3.
fn has_no_rational_root(monic: &[BigInt]) -> Result<bool> {
    let c0 = monic[0].magnitude();
    if c0.is_zero() {
        return Ok(false);
    }
    let p = Poly::from_integers(monic);
    for d in divisors(c0)? {
        let d = BigInt::from(d);
        for x in [d.clone(), -d] {
            if p.eval(&BigRational::from_integer(x)).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Decision of the root layout check.
enum Layout {
    Pisot { dominant: RealEnclosure, bound: BigRational },
    NotPisot,
}

/// Exactly one root > 1, every other root of modulus < 1; certified by
/// refining until every comparison is strict. `p` must be squarefree.
fn root_layout(monic: &[BigInt], bits: u32) -> Result<Layout> {
    let p = Poly::from_integers(monic);
    let degree = p.degree();
    let sturm = Sturm::new(&p)?;
    let one = BigRational::one();
    // A Pisot number is the only root above 1 and the others sit in (-1, 1).
    if sturm.count_above(&one) != 1 || p.eval(&one).is_zero() || p.eval(&-&one).is_zero() {
        return Ok(Layout::NotPisot);
    }
    let iso = sturm.isolate();
    let (a, b) = iso.last().expect("one root above 1");
    let real_others = iso.len() - 1;
    let below = sturm.count_in(&-&one, &one);
    if below != real_others {
        return Ok(Layout::NotPisot);
    }
    let dominant = sturm.refine(&a.clone().max(one.clone()), b, &eps_bits(bits))?;
    let complex = degree - iso.len();
    let bound = match (degree, complex) {
        (1, _) => return Err(Error::arg("degree 1 is not covered")),
        // β·β' = c0
        (2, 0) => round_up(&(int_rat(monic[0].abs()) / dominant.lo()), bits),
        // |z|^2 = |c0| / β for the complex pair
        (3, 2) => {
            let c0 = int_rat(monic[0].abs());
            if *dominant.hi() <= c0 {
                return Ok(Layout::NotPisot);
            }
            let m2 = c0 / dominant.lo();
            if m2 >= one {
                return root_layout(monic, bits * 2);
            }
            round_up(sqrt_enclosure(&m2, bits)?.hi(), bits)
        }
        (3, 0) => {
            let mut worst = BigRational::zero();
            for (a, b) in &iso[..2] {
                let e = sturm.refine(a, b, &eps_bits(bits))?;
                worst = worst.max(e.lo().abs()).max(e.hi().abs());
            }
            worst
        }
        _ => return Err(Error::arg(format!("degree {degree} is not covered"))),
    };
    if bound >= one {
        // Roots in (-1, 1) were counted exactly; only the rounding is too coarse.
        return root_layout(monic, bits * 2);
    }
    Ok(Layout::Pisot { dominant, bound })
}

impl PisotNumber {
    /// Certify a monic integer polynomial (low-first) of degree 2 or 3 as the
    /// minimal polynomial of a Pisot number.
    pub fn from_monic(coeffs: Vec<BigInt>) -> Result<Option<Self>> {
        Self::from_monic_bits(coeffs, TABLE_BITS)
    }

    pub fn from_monic_bits(coeffs: Vec<BigInt>, bits: u32) -> Result<Option<Self>> {
        let degree = coeffs.len().saturating_sub(1);
        if !(2..=3).contains(&degree) || !coeffs[degree].is_one() {
            return Err(Error::arg("expected a monic polynomial of degree 2 or 3"));
        }
        if !has_no_rational_root(&coeffs)? {
            return Ok(None);
        }
        Ok(match root_layout(&coeffs, bits)? {
            Layout::Pisot { dominant, bound } => Some(Self { coeffs, dominant_root: dominant, conjugate_bound: bound }),
            Layout::NotPisot => None,
        })
    }

    pub fn from_cubic(c: &CubicCoeffs) -> Result<Option<Self>> {
        Self::from_monic(c.monic())
    }

    pub fn from_i64(low_first: &[i64]) -> Result<Option<Self>> {
        Self::from_monic(low_first.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn golden_ratio() -> Self {
        Self::from_i64(&[-1, -1, 1]).expect("valid").expect("Pisot")
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn poly(&self) -> Poly {
        Poly::from_integers(&self.coeffs)
    }

    /// (a2, a1, a0) for cubics.
    pub fn cubic(&self) -> Option<CubicCoeffs> {
        if self.degree() != 3 {
            return None;
        }
        let g = |i: usize| (-&self.coeffs[i]).to_i64();
        Some(CubicCoeffs { a2: g(2)?, a1: g(1)?, a0: g(0)? })
    }

    pub fn dominant_root(&self) -> &RealEnclosure {
        &self.dominant_root
    }

    /// Rational bound < 1 on the modulus of every other conjugate.
    pub fn conjugate_modulus_bound(&self) -> &BigRational {
        &self.conjugate_bound
    }

    /// Dominant root to width <= eps.
    pub fn root_enclosure(&self, eps: &BigRational) -> Result<RealEnclosure> {
        if self.dominant_root.width() <= *eps {
            return Ok(self.dominant_root.clone());
        }
        let sturm = Sturm::new(&self.poly())?;
        sturm.refine(self.dominant_root.lo(), self.dominant_root.hi(), eps)
    }

    pub fn trace(&self) -> BigInt {
        -&self.coeffs[self.degree() - 1]
    }

    /// β^m as a Pisot number, from the characteristic polynomial of β^m.
    pub fn power(&self, m: u64) -> Result<Option<PisotNumber>> {
        Self::from_monic(power_char_poly(self, m)?)
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        if self.coeffs == other.coeffs {
            return Ordering::Equal;
        }
        // Distinct minimal polynomials have distinct roots; the enclosures are
        // narrow enough to separate every table entry.
        self.dominant_root.lo().cmp(other.dominant_root.lo())
    }
}

impl fmt::Display for PisotNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.dominant_root.display_lo(20), self.poly())
    }
}

/// Largest real root of f to width <= eps.
pub fn dominant_root(c: &CubicCoeffs, eps: &BigRational) -> Result<RealEnclosure> {
    if !eps.is_positive() {
        return Err(Error::arg("eps must be positive"));
    }
    let sturm = Sturm::new(&c.poly())?;
    let iso = sturm.isolate();
    let (a, b) = iso.last().expect("odd degree has a real root");
    sturm.refine(a, b, eps)
}

/// Integer points of the open box a2 ∈ (−1, M+2), |a1| < 2M+1, 0 < |a0| < M.
pub fn coefficient_box(m: &BigRational) -> Result<Vec<CubicCoeffs>> {
    let below = |x: BigRational| -> Result<i64> {
        // largest integer strictly below x
        let f: BigInt = x.ceil().to_integer() - 1;
        f.to_i64().ok_or_else(|| Error::Resource("coefficient box too large".into()))
    };
    let a2_max = below(m + int_rat(2))?;
    let a1_max = below(m * int_rat(2) + int_rat(1))?;
    let a0_max = below(m.clone())?;
    let mut out = Vec::new();
    for a2 in 0..=a2_max {
        for a1 in -a1_max..=a1_max {
            for a0 in (-a0_max..=a0_max).filter(|&a0| a0 != 0) {
                out.push(CubicCoeffs { a2, a1, a0 });
            }
        }
    }
    Ok(out)
}

/// Every real root of f is <= M.
fn real_roots_at_most(c: &CubicCoeffs, m: &BigRational) -> Result<bool> {
    Ok(Sturm::new(&c.poly())?.count_above(m) == 0)
}

fn sort_by_root(mut v: Vec<PisotNumber>) -> Vec<PisotNumber> {
    v.sort_by(|a, b| a.cmp_value(b));
    v
}

/// All cubic Pisot numbers <= M, ascending.
pub fn enumerate_cubic_pisot(m: &BigRational) -> Result<Vec<PisotNumber>> {
    if *m <= BigRational::one() {
        return Err(Error::arg("M must exceed 1"));
    }
    let cands = coefficient_box(m)?;
    let found: Vec<Option<PisotNumber>> = cands
        .par_iter()
        .map(|c| -> Result<Option<PisotNumber>> {
            if !akiyama_criterion(c)? || !real_roots_at_most(c, m)? {
                return Ok(None);
            }
            let p = PisotNumber::from_cubic(c)?
                .ok_or_else(|| Error::Internal(format!("{c} passes the criterion but not the root layout")))?;
            Ok(Some(p))
        })
        .collect::<Result<_>>()?;
    Ok(sort_by_root(found.into_iter().flatten().collect()))
}

/// Oracle: the same box, filtered by exact root layout instead of the criterion.
pub fn enumerate_cubic_pisot_by_roots(m: &BigRational) -> Result<Vec<PisotNumber>> {
    if *m <= BigRational::one() {
        return Err(Error::arg("M must exceed 1"));
    }
    let found: Vec<Option<PisotNumber>> = coefficient_box(m)?
        .par_iter()
        .map(|c| -> Result<Option<PisotNumber>> {
            if !real_roots_at_most(c, m)? {
                return Ok(None);
            }
            PisotNumber::from_cubic(c)
        })
        .collect::<Result<_>>()?;
    Ok(sort_by_root(found.into_iter().flatten().collect()))
}

/// Trace 1 for a quadratic Pisot number forces X^2 − X − 1.
pub fn quadratic_trace_one(p: &PisotNumber) -> Result<bool> {
    if p.degree() != 2 {
        return Err(Error::arg(format!("expected degree 2, got {}", p.degree())));
    }
    if !p.trace().is_one() {
        return Ok(false);
    }
    let golden = [BigInt::from(-1), BigInt::from(-1), BigInt::one()];
    if p.coeffs() != golden {
        return Err(Error::Internal(format!("trace-one quadratic Pisot number {} is not the golden ratio", p.poly())));
    }
    Ok(true)
}

/// Table row: `index, root_decimal(20), a2, a1, a0`.
pub fn table_row(index: usize, p: &PisotNumber) -> Result<String> {
    let c = p.cubic().ok_or_else(|| Error::arg("not a cubic"))?;
    let digits = p.dominant_root().certified_digits(20);
    if digits.decimals < 20 {
        return Err(Error::Indeterminate(format!("only {} decimals certified for {}", digits.decimals, p.poly())));
    }
    Ok(format!("{index}, {}, {}, {}, {}", digits.text, c.a2, c.a1, c.a0))
}

/// α^{gcd(n, m)}.
pub fn gcd_power(p: &PisotNumber, n: u64, m: u64) -> Result<Option<PisotNumber>> {
    p.power(n.gcd(&m))
}

/// Digits of the table's printed precision, for display.
pub fn root_decimal(p: &PisotNumber) -> String {
    p.dominant_root().certified_digits(20).text
}

/// Whether a cubic (a2, a1, a0) lies in the box for M.
pub fn in_box(c: &CubicCoeffs, m: &BigRational) -> bool {
    let (a2, a1, a0) = (int_rat(c.a2), int_rat(c.a1), int_rat(c.a0));
    a2 > int_rat(-1) && a2 < m + int_rat(2) && a1.abs() < m * int_rat(2) + int_rat(1) && !a0.is_zero() && a0.abs() < *m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::enclosure::rat;

    /// (a2, a1, a0) in ascending order of the dominant root.
    pub(crate) const TABLE: [(i64, i64, i64); 20] = [
        (0, 1, 1),
        (1, 0, 1),
        (2, -1, 1),
        (1, 1, 1),
        (1, 2, 1),
        (2, 0, 1),
        (2, 1, -1),
        (1, 2, 2),
        (3, -2, 1),
        (2, 0, 2),
        (1, 3, 2),
        (3, -2, 2),
        (2, 1, 1),
        (2, 1, 2),
        (3, -1, 1),
        (2, 2, 1),
        (4, -4, 2),
        (3, 0, -1),
        (3, -1, 2),
        (2, 2, 2),
    ];

    #[test]
    fn criterion_examples() {
        assert!(akiyama_criterion(&CubicCoeffs::new(0, 1, 1).unwrap()).unwrap());
        assert!(akiyama_criterion(&CubicCoeffs::new(1, 0, 1).unwrap()).unwrap());
        assert!(!akiyama_criterion(&CubicCoeffs::new(1, 0, -1).unwrap()).unwrap());
        assert!(CubicCoeffs::new(1, 0, 0).is_err());
        assert!(akiyama_criterion(&CubicCoeffs { a2: 1, a1: 0, a0: 0 }).is_err());
    }

    #[test]
    fn box_size() {
        assert_eq!(coefficient_box(&rat(3, 1)).unwrap().len(), 260);
        assert!(coefficient_box(&rat(5, 2)).unwrap().iter().all(|c| in_box(c, &rat(5, 2))));
    }

    #[test]
    fn table_at_three() {
        let v = enumerate_cubic_pisot(&rat(3, 1)).unwrap();
        let got: Vec<_> = v.iter().map(|p| p.cubic().unwrap()).map(|c| (c.a2, c.a1, c.a0)).collect();
        assert_eq!(got, TABLE);
        assert_eq!(root_decimal(&v[8]), "2.32471795724474602596");
        assert_eq!(v[8].poly().to_string(), "X^3 - 3X^2 + 2X - 1");
        for p in &v {
            assert!(p.dominant_root().width() <= rat(1, 10).pow(25));
            assert!(p.conjugate_modulus_bound() < &BigRational::one());
        }
    }

    #[test]
    fn small_bounds() {
        assert!(enumerate_cubic_pisot(&rat(13, 10)).unwrap().is_empty());
        let v = enumerate_cubic_pisot(&rat(2, 1)).unwrap();
        let r: Vec<String> = v.iter().map(|p| p.dominant_root().display_lo(4)).collect();
        assert_eq!(r, ["1.3247", "1.4655", "1.7548", "1.8392"]);
        assert!(enumerate_cubic_pisot(&rat(1, 1)).is_err());
    }

    #[test]
    fn criterion_matches_root_layout() {
        for m in [rat(3, 2), rat(2, 1), rat(5, 2), rat(3, 1)] {
            assert_eq!(enumerate_cubic_pisot(&m).unwrap(), enumerate_cubic_pisot_by_roots(&m).unwrap(), "M = {m}");
        }
    }

    #[test]
    fn dominant_root_examples() {
        let eps = rat(1, 10).pow(22);
        let check = |c: CubicCoeffs, s: &str| {
            let e = dominant_root(&c, &eps).unwrap();
            assert!(e.certified_digits(20).text.starts_with(s), "{c}: {}", e.display_lo(22));
        };
        check(CubicCoeffs::new(0, 1, 1).unwrap(), "1.32471795724474602596");
        check(CubicCoeffs::new(1, 1, 1).unwrap(), "1.83928675521416113255");
        check(CubicCoeffs::new(2, 2, 2).unwrap(), "2.91963956583941814511");
        assert!(dominant_root(&CubicCoeffs::new(0, 1, 1).unwrap(), &rat(0, 1)).is_err());
    }

    #[test]
    fn quadratics() {
        let g = PisotNumber::golden_ratio();
        assert!(quadratic_trace_one(&g).unwrap());
        let silver = PisotNumber::from_i64(&[-1, -2, 1]).unwrap().unwrap();
        assert!(!quadratic_trace_one(&silver).unwrap());
        let p3 = PisotNumber::from_i64(&[-1, -3, 1]).unwrap().unwrap();
        assert!(!quadratic_trace_one(&p3).unwrap());
        let cubic = PisotNumber::from_i64(&[-1, -1, 0, 1]).unwrap().unwrap();
        assert!(quadratic_trace_one(&cubic).is_err());
        // X^2 − 2 is not Pisot; X^2 − 3X + 2 is reducible
        assert!(PisotNumber::from_i64(&[-2, 0, 1]).unwrap().is_none());
        assert!(PisotNumber::from_i64(&[2, -3, 1]).unwrap().is_none());
    }
}
