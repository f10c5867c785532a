//! Asymptotic gcd of an exponent sequence.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ExponentSequence, Family};
use crate::error::{Error, Result};

/// Outcome of an agcd sweep.
///
/// `trace[m-1]` is g_m = gcd(C_m, ..., C_{m+window}); `value` is `None` when
/// the sweep suggests the limit is infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgcdResult {
    pub value: Option<BigUint>,
    pub trace: Vec<BigUint>,
    pub window: usize,
}

impl AgcdResult {
    pub fn is_unbounded_suspected(&self) -> bool {
        self.value.is_none()
    }

    pub fn describe(&self) -> String {
        match &self.value {
            Some(v) => v.to_string(),
            None => "unbounded-suspected".into(),
        }
    }
}

fn window_gcd(seq: &ExponentSequence, m: usize, window: usize) -> Result<BigUint> {
    let mut g = BigUint::zero();
    for k in m..=m + window {
        g = g.gcd(&seq.term_unbounded(k)?);
        if g.is_one() {
            break;
        }
    }
    Ok(g)
}

/// Sweep g_m for m = 1..=m_max.
///
/// Stable when g_m is constant over the second half of the sweep and doubling
/// the window at m_max leaves it unchanged; anything else is reported as
/// unbounded-suspected, which covers strict growth over the last three m.
pub fn agcd(seq: &ExponentSequence, m_max: usize, window: usize) -> Result<AgcdResult> {
    if m_max < 1 {
        return Err(Error::arg("m_max must be at least 1"));
    }
    if window < 2 {
        return Err(Error::arg("window must be at least 2"));
    }
    let trace = (1..=m_max).map(|m| window_gcd(seq, m, window)).collect::<Result<Vec<_>>>()?;
    let tail = &trace[(m_max - 1) / 2..];
    let last = trace.last().expect("m_max >= 1");
    let constant = tail.iter().all(|g| g == last);
    let extended = window_gcd(seq, m_max, 2 * window)?;
    let value = (constant && extended == *last).then(|| last.clone());
    Ok(AgcdResult { value, trace, window })
}

/// agcd(r·3^k − 1): 2 for odd r, 1 for even r.
pub fn agcd_shifted_geometric_exact(r: &BigUint, s: &BigUint, t: &BigInt) -> Result<BigUint> {
    if *s != BigUint::from(3u32) || *t != BigInt::from(-1) {
        return Err(Error::arg(format!("closed form covers s = 3, t = -1 only, got s = {s}, t = {t}")));
    }
    if r.is_zero() {
        return Err(Error::arg("r must be positive"));
    }
    Ok(if r.is_odd() { BigUint::from(2u32) } else { BigUint::one() })
}

/// Closed form for a sequence when its family has one.
pub fn agcd_closed_form(seq: &ExponentSequence) -> Option<BigUint> {
    match seq.family() {
        Family::ShiftedGeometric { r, s, t } => agcd_shifted_geometric_exact(r, s, t).ok(),
        _ => None,
    }
}
