//! Exponent sequences (C_k) and their admissibility profiles.

pub mod agcd;
pub mod conditions;
pub mod divisible;
pub mod recurrence;
pub mod specfile;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::enclosure::format_rational;

pub use agcd::{agcd, agcd_shifted_geometric_exact, AgcdResult};
pub use conditions::{check_conditions, CheckOptions, ConditionReport, ConditionVerdict, Profile, Verdict};
pub use divisible::divisible_index;
pub use recurrence::{recurrence_period_mod, RecurrenceSpec};

/// Default horizon for sequences that do not state one.
pub const DEFAULT_HORIZON: usize = 30;

/// Terms beyond this index are never materialised eagerly.
pub const MAX_HORIZON: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    /// C_k = ⌊alpha · b^k⌋.
    GeometricFloor { alpha: BigRational, b: BigRational },
    /// C_k = r · s^k + t.
    ShiftedGeometric { r: BigUint, s: BigUint, t: BigInt },
    LinearRecurrence(RecurrenceSpec),
    /// C_1, ..., C_n given outright; the horizon is n.
    Literal(Vec<BigUint>),
}

impl Family {
    /// C_k computed from scratch, for any k >= 1 except past the end of a literal.
    pub fn term(&self, k: usize) -> Result<BigUint> {
        if k == 0 {
            return Err(Error::OutOfRange { index: 0, horizon: 0 });
        }
        let value: BigInt = match self {
            Family::GeometricFloor { alpha, b } => {
                let x = alpha * Pow::pow(b, k as u32);
                x.floor().to_integer()
            }
            Family::ShiftedGeometric { r, s, t } => BigInt::from(r * Pow::pow(s, k as u32)) + t,
            Family::LinearRecurrence(rec) => rec.terms(k).pop().unwrap_or_default(),
            Family::Literal(v) => match v.get(k - 1) {
                Some(x) => BigInt::from(x.clone()),
                None => return Err(Error::OutOfRange { index: k as u64, horizon: v.len() as u64 }),
            },
        };
        if !value.is_positive() {
            return Err(Error::arg(format!("C_{k} = {value} is not a positive integer")));
        }
        Ok(value.to_biguint().expect("positive"))
    }

    /// C_k mod q without materialising C_k when the family allows it.
    pub fn term_mod(&self, k: usize, q: &BigUint) -> Result<BigUint> {
        match self {
            Family::ShiftedGeometric { r, s, t } => {
                let q_int = BigInt::from(q.clone());
                let head = BigInt::from((r % q) * s.modpow(&BigUint::from(k), q));
                let v = (head + t) % &q_int;
                let v = if v.is_negative() { v + &q_int } else { v };
                Ok(v.to_biguint().expect("reduced"))
            }
            Family::LinearRecurrence(rec) => match q.to_u64() {
                Some(q64) if q64 > 0 => Ok(BigUint::from(rec.term_mod(k as u64, q64))),
                _ => Ok(self.term(k)? % q),
            },
            _ => Ok(self.term(k)? % q),
        }
    }

    /// lim c_{k+1} when it is known in closed form.
    pub fn exact_ratio_limit(&self) -> Option<BigRational> {
        match self {
            Family::GeometricFloor { alpha, b } if alpha.is_positive() => Some(b.clone()),
            Family::ShiftedGeometric { s, .. } => Some(BigRational::from_integer(BigInt::from(s.clone()))),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Family::GeometricFloor { .. } => "geometric_floor",
            Family::ShiftedGeometric { .. } => "shifted_geometric",
            Family::LinearRecurrence(_) => "linear_recurrence",
            Family::Literal(_) => "literal",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::GeometricFloor { alpha, b } => {
                write!(f, "geometric({}, {})", format_rational(alpha), format_rational(b))
            }
            Family::ShiftedGeometric { r, s, t } => write!(f, "shifted({r}, {s}, {t})"),
            Family::LinearRecurrence(rec) => {
                let a: Vec<String> = rec.coeffs_high_first().iter().map(|x| x.to_string()).collect();
                let i: Vec<String> = rec.initial().iter().map(|x| x.to_string()).collect();
                write!(f, "recurrence({}; {})", a.join(", "), i.join(", "))
            }
            Family::Literal(v) => {
                let i: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "literal({})", i.join(", "))
            }
        }
    }
}

/// A family together with the range 1..=horizon on which it is evaluated.
///
/// Invariant: `terms[k-1] = C_k >= 1` for every `1 <= k <= horizon`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSequence {
    family: Family,
    horizon: usize,
    terms: Vec<BigUint>,
}

impl ExponentSequence {
    pub fn new(family: Family, horizon: usize) -> Result<Self> {
        let horizon = match &family {
            Family::Literal(v) => {
                if v.is_empty() {
                    return Err(Error::arg("literal sequence needs at least one term"));
                }
                v.len()
            }
            _ => horizon,
        };
        if horizon == 0 || horizon > MAX_HORIZON {
            return Err(Error::arg(format!("horizon must be in 1..={MAX_HORIZON}, got {horizon}")));
        }
        let terms = match &family {
            Family::LinearRecurrence(rec) => rec
                .terms(horizon)
                .into_iter()
                .enumerate()
                .map(|(i, x)| {
                    x.to_biguint()
                        .filter(|v| !v.is_zero())
                        .ok_or_else(|| Error::arg(format!("C_{} = {x} is not a positive integer", i + 1)))
                })
                .collect::<Result<Vec<_>>>()?,
            _ => (1..=horizon).map(|k| family.term(k)).collect::<Result<Vec<_>>>()?,
        };
        Ok(Self { family, horizon, terms })
    }

    /// The Mills exponents C_k = 3^k.
    pub fn mills(horizon: usize) -> Self {
        let family = Family::GeometricFloor { alpha: BigRational::one(), b: BigRational::from_integer(3.into()) };
        Self::new(family, horizon).expect("3^k is positive")
    }

    pub fn shifted(r: u64, s: u64, t: i64, horizon: usize) -> Result<Self> {
        Self::new(Family::ShiftedGeometric { r: r.into(), s: s.into(), t: t.into() }, horizon)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Same family on a different horizon.
    pub fn with_horizon(&self, horizon: usize) -> Result<Self> {
        if horizon >= 1 && horizon <= self.horizon && !matches!(self.family, Family::Literal(_)) {
            return Ok(Self { family: self.family.clone(), horizon, terms: self.terms[..horizon].to_vec() });
        }
        Self::new(self.family.clone(), horizon)
    }

    /// C_k for 1 <= k <= horizon.
    pub fn eval_c(&self, k: usize) -> Result<&BigUint> {
        if k == 0 || k > self.horizon {
            return Err(Error::OutOfRange { index: k as u64, horizon: self.horizon as u64 });
        }
        Ok(&self.terms[k - 1])
    }

    /// C_1, ..., C_horizon.
    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }

    /// c_{k+1} = C_{k+1}/C_k for 1 <= k < horizon.
    pub fn ratio(&self, k: usize) -> Result<BigRational> {
        if k == 0 || k >= self.horizon {
            return Err(Error::OutOfRange { index: k as u64, horizon: self.horizon.saturating_sub(1) as u64 });
        }
        Ok(BigRational::new(BigInt::from(self.terms[k].clone()), BigInt::from(self.terms[k - 1].clone())))
    }

    /// C_k for any k the family can produce, including past the horizon.
    pub fn term_unbounded(&self, k: usize) -> Result<BigUint> {
        if k >= 1 && k <= self.horizon {
            return Ok(self.terms[k - 1].clone());
        }
        self.family.term(k)
    }

    /// c_1 = C_1, as a rational.
    pub fn first_ratio(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.terms[0].clone()))
    }
}

impl fmt::Display for ExponentSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on 1..={}", self.family, self.horizon)
    }
}
