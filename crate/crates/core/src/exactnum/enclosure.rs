//! Rational interval enclosures of real numbers.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An interval `[lo, hi]`, or `[lo, hi)` when `upper_exclusive`, that is
/// known to contain some target real.
///
/// Invariant: `lo <= hi`, and `lo < hi` whenever the upper end is open.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealEnclosure {
    lo: BigRational,
    hi: BigRational,
    upper_exclusive: bool,
}

/// Decimal digits on which every point of an enclosure agrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedDigits {
    /// Integer part, a point, then `decimals` fractional digits.
    /// Empty when not even the integer part is determined.
    pub text: String,
    pub decimals: usize,
}

impl CertifiedDigits {
    pub fn integer_certified(&self) -> bool {
        !self.text.is_empty()
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// x rounded down to a multiple of 2^-bits.
pub fn round_down(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = (x * BigRational::from_integer(scale.clone())).floor().to_integer();
    BigRational::new(scaled, scale)
}

/// x rounded up to a multiple of 2^-bits.
pub fn round_up(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = (x * BigRational::from_integer(scale.clone())).ceil().to_integer();
    BigRational::new(scaled, scale)
}

/// Largest integer strictly below x.
fn floor_below(x: &BigRational) -> BigInt {
    x.ceil().to_integer() - 1
}

impl RealEnclosure {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Internal(format!("enclosure with lo {lo} > hi {hi}")));
        }
        Ok(Self { lo, hi, upper_exclusive: false })
    }

    /// `[lo, hi)`; requires `lo < hi`.
    pub fn half_open(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::Internal(format!("half-open enclosure with lo {lo} >= hi {hi}")));
        }
        Ok(Self { lo, hi, upper_exclusive: true })
    }

    pub fn point(x: BigRational) -> Self {
        Self { lo: x.clone(), hi: x, upper_exclusive: false }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn is_upper_exclusive(&self) -> bool {
        self.upper_exclusive
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / int_rat(2)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        *x >= self.lo && if self.upper_exclusive { *x < self.hi } else { *x <= self.hi }
    }

    /// Every point of `other` is a point of `self`.
    pub fn contains_enclosure(&self, other: &RealEnclosure) -> bool {
        if other.lo < self.lo {
            return false;
        }
        match other.hi.cmp(&self.hi) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Equal => !self.upper_exclusive || other.upper_exclusive,
            std::cmp::Ordering::Greater => false,
        }
    }

    /// Intersection, or `None` if the two are disjoint.
    pub fn intersect(&self, other: &RealEnclosure) -> Option<RealEnclosure> {
        let lo = if self.lo >= other.lo { self.lo.clone() } else { other.lo.clone() };
        let (hi, excl) = match self.hi.cmp(&other.hi) {
            std::cmp::Ordering::Less => (self.hi.clone(), self.upper_exclusive),
            std::cmp::Ordering::Greater => (other.hi.clone(), other.upper_exclusive),
            std::cmp::Ordering::Equal => (self.hi.clone(), self.upper_exclusive || other.upper_exclusive),
        };
        if lo > hi || (excl && lo == hi) {
            None
        } else {
            Some(Self { lo, hi, upper_exclusive: excl })
        }
    }

    /// The closed hull `[lo, hi]`.
    pub fn closure(&self) -> RealEnclosure {
        Self { lo: self.lo.clone(), hi: self.hi.clone(), upper_exclusive: false }
    }

    /// Widen both ends outward to multiples of 2^-bits.
    pub fn round_outward(&self, bits: u32) -> RealEnclosure {
        let lo = round_down(&self.lo, bits);
        let hi = round_up(&self.hi, bits);
        let excl = self.upper_exclusive && hi == self.hi;
        Self { lo, hi, upper_exclusive: excl }
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative() || (self.upper_exclusive && self.hi.is_zero())
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    pub fn neg(&self) -> RealEnclosure {
        // Negation would make the open end the lower one; keep the closed hull.
        Self { lo: -&self.hi, hi: -&self.lo, upper_exclusive: false }
    }

    pub fn add(&self, other: &RealEnclosure) -> RealEnclosure {
        Self {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            upper_exclusive: self.upper_exclusive || other.upper_exclusive,
        }
    }

    pub fn sub(&self, other: &RealEnclosure) -> RealEnclosure {
        Self { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo, upper_exclusive: false }
    }

    pub fn add_rational(&self, x: &BigRational) -> RealEnclosure {
        Self { lo: &self.lo + x, hi: &self.hi + x, upper_exclusive: self.upper_exclusive }
    }

    pub fn mul(&self, other: &RealEnclosure) -> RealEnclosure {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().cloned().unwrap_or_default();
        let hi = products.iter().max().cloned().unwrap_or_default();
        Self { lo, hi, upper_exclusive: false }
    }

    pub fn scale(&self, x: &BigRational) -> RealEnclosure {
        if x.is_negative() {
            Self { lo: &self.hi * x, hi: &self.lo * x, upper_exclusive: false }
        } else {
            Self { lo: &self.lo * x, hi: &self.hi * x, upper_exclusive: self.upper_exclusive && x.is_positive() }
        }
    }

    /// 1/x for an enclosure that excludes zero.
    pub fn recip(&self) -> Result<RealEnclosure> {
        if self.contains_zero() || self.hi.is_zero() {
            return Err(Error::Indeterminate("reciprocal of an enclosure containing zero".into()));
        }
        Ok(Self { lo: self.hi.recip(), hi: self.lo.recip(), upper_exclusive: false })
    }

    pub fn div(&self, other: &RealEnclosure) -> Result<RealEnclosure> {
        Ok(self.mul(&other.recip()?))
    }

    /// x^n by exact endpoint powers; requires `lo >= 0` for even-safe monotonicity.
    pub fn pow(&self, n: u32) -> Result<RealEnclosure> {
        if self.lo.is_negative() {
            return Err(Error::arg("pow is defined here for non-negative enclosures only"));
        }
        Ok(Self {
            lo: Pow::pow(&self.lo, n),
            hi: Pow::pow(&self.hi, n),
            upper_exclusive: self.upper_exclusive && n > 0,
        })
    }

    /// x^n by square-and-multiply, rounding outward to 2^-bits after each step.
    /// Keeps endpoint sizes bounded for large exponents.
    pub fn pow_rounded(&self, n: u64, bits: u32) -> Result<RealEnclosure> {
        if self.lo.is_negative() {
            return Err(Error::arg("pow is defined here for non-negative enclosures only"));
        }
        let mut acc = RealEnclosure::point(int_rat(1));
        let mut base = self.closure().round_outward(bits);
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).round_outward(bits);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).round_outward(bits);
            }
        }
        Ok(acc)
    }

    /// ⌊x⌋ if it is the same for every enclosed x.
    pub fn floor(&self) -> Option<BigInt> {
        let lo = self.lo.floor().to_integer();
        let hi = if self.upper_exclusive { floor_below(&self.hi) } else { self.hi.floor().to_integer() };
        (lo == hi).then_some(lo)
    }

    /// Upper bound on `{x}` as a rational when ⌊x⌋ is determined.
    pub fn fractional_upper(&self) -> Option<BigRational> {
        let f = self.floor()?;
        Some(&self.hi - int_rat(f))
    }

    /// Decimal expansion agreed on by every enclosed point, up to `max_decimals`.
    ///
    /// Only enclosures with `lo >= 0` are handled; others certify nothing.
    pub fn certified_digits(&self, max_decimals: usize) -> CertifiedDigits {
        let empty = CertifiedDigits { text: String::new(), decimals: 0 };
        if self.lo.is_negative() {
            return empty;
        }
        let scale = int_rat(BigInt::from(10u32).pow(max_decimals as u32));
        let lo_scaled = (&self.lo * &scale).floor().to_integer();
        let hi_scaled_r = &self.hi * &scale;
        let hi_scaled = if self.upper_exclusive {
            floor_below(&hi_scaled_r)
        } else {
            hi_scaled_r.floor().to_integer()
        };
        let lo_s = lo_scaled.to_string();
        let hi_s = hi_scaled.to_string();
        let width = lo_s.len().max(hi_s.len()).max(max_decimals + 1);
        let lo_p = format!("{lo_s:0>width$}");
        let hi_p = format!("{hi_s:0>width$}");
        let common = lo_p.bytes().zip(hi_p.bytes()).take_while(|(a, b)| a == b).count();
        let int_len = width - max_decimals;
        if common < int_len {
            return empty;
        }
        let decimals = common - int_len;
        let int_part = lo_p[..int_len].trim_start_matches('0');
        let int_part = if int_part.is_empty() { "0" } else { int_part };
        let text = format!("{int_part}.{}", &lo_p[int_len..int_len + decimals]);
        CertifiedDigits { text, decimals }
    }

    /// Lower endpoint truncated to `decimals` places, for display only.
    pub fn display_lo(&self, decimals: usize) -> String {
        decimal_truncated(&self.lo, decimals)
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

/// x truncated toward negative infinity to `decimals` places.
pub fn decimal_truncated(x: &BigRational, decimals: usize) -> String {
    let scale = int_rat(BigInt::from(10u32).pow(decimals as u32));
    let scaled = (x * scale).floor().to_integer();
    format_scaled(&scaled, decimals)
}

/// x rounded up to `decimals` places.
pub fn decimal_ceiled(x: &BigRational, decimals: usize) -> String {
    let scale = int_rat(BigInt::from(10u32).pow(decimals as u32));
    let scaled = (x * scale).ceil().to_integer();
    format_scaled(&scaled, decimals)
}

fn format_scaled(scaled: &BigInt, decimals: usize) -> String {
    let neg = scaled.sign() == Sign::Minus;
    let digits = scaled.magnitude().to_string();
    let digits = format!("{digits:0>width$}", width = decimals + 1);
    let (int_part, frac) = digits.split_at(digits.len() - decimals);
    let sign = if neg { "-" } else { "" };
    if decimals == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

/// Exact rational parsed from a decimal literal such as `-2.414` or `1e-3`,
/// or a fraction such as `21/40`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::arg(format!("not a rational literal: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigRational = parse_rational(n)?;
        let d: BigRational = parse_rational(d)?;
        if d.is_zero() {
            return Err(Error::arg(format!("zero denominator in {s:?}")));
        }
        return Ok(n / d);
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    let digit_ok = |p: &str| p.bytes().all(|c| c.is_ascii_digit() || c == b'_');
    if (int_part.is_empty() && frac_part.is_empty()) || !digit_ok(int_part) || !digit_ok(frac_part) {
        return Err(bad());
    }
    let digits: String = format!("{int_part}{frac_part}").replace('_', "");
    let n = if digits.is_empty() { BigInt::zero() } else { digits.parse::<BigInt>().map_err(|_| bad())? };
    let frac_len = frac_part.replace('_', "").len() as i32;
    let e = exp - frac_len;
    let ten = BigInt::from(10u32);
    let mut r = if e >= 0 {
        BigRational::from_integer(n * ten.pow(e as u32))
    } else {
        BigRational::new(n, ten.pow((-e) as u32))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Canonical text of a rational: an integer, or `n/d` in lowest terms.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Square root enclosure of a non-negative rational to 2^-bits.
pub fn sqrt_enclosure(x: &BigRational, bits: u32) -> Result<RealEnclosure> {
    if x.is_negative() {
        return Err(Error::arg("square root of a negative rational"));
    }
    // sqrt(u/v) = sqrt(u v)/v; floor sqrt of u v 4^bits gives the lower end.
    let u = x.numer().magnitude();
    let v = x.denom().magnitude();
    let scaled: BigUint = (u * v) << (2 * bits as u64);
    let r = num_integer::Roots::sqrt(&scaled);
    let exact = &r * &r == scaled;
    let den = BigInt::from(v.clone()) << bits;
    let lo = BigRational::new(BigInt::from(r.clone()), den.clone());
    let hi = if exact { lo.clone() } else { BigRational::new(BigInt::from(r + 1u32), den) };
    RealEnclosure::new(lo, hi)
}

/// ⌊x⌋ for a rational, as a natural number when non-negative.
pub fn floor_natural(x: &BigRational) -> Option<BigUint> {
    x.floor().to_integer().to_biguint()
}

/// ‖x‖, the distance from x to the nearest integer.
pub fn dist_to_nearest_integer(x: &BigRational) -> BigRational {
    let f = x - x.floor();
    let g = int_rat(1) - &f;
    if f <= g {
        f
    } else {
        g
    }
}

impl fmt::Display for RealEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let close = if self.upper_exclusive { ")" } else { "]" };
        write!(f, "[{}, {}{close}", format_rational(&self.lo), format_rational(&self.hi))
    }
}
