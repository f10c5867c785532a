//! Integer linear recurrences and their periods modulo q.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::factor::divisors_u64;

/// Default cap on the number of steps spent looking for a period.
pub const DEFAULT_PERIOD_CAP: u64 = 50_000_000;

/// R_{k+d} = a_{d-1} R_{k+d-1} + ... + a_1 R_{k+1} + a_0 R_k.
///
/// `coeffs[i]` is a_i, so `coeffs[0]` is the constant coefficient a_0 ∈ {-1, 1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RecurrenceSpec {
    coeffs: Vec<i64>,
    initial: Vec<BigUint>,
}

impl RecurrenceSpec {
    /// `high_first` lists a_{d-1}, ..., a_1, a_0; `initial` lists R_1, ..., R_d.
    pub fn new(high_first: &[i64], initial: Vec<BigUint>) -> Result<Self> {
        let d = high_first.len();
        if d < 2 {
            return Err(Error::arg("recurrence order must be at least 2"));
        }
        if initial.len() != d {
            return Err(Error::arg(format!("order {d} recurrence needs {d} initial terms, got {}", initial.len())));
        }
        let coeffs: Vec<i64> = high_first.iter().rev().copied().collect();
        if coeffs[0].abs() != 1 {
            return Err(Error::arg(format!("a_0 must be -1 or 1, got {}", coeffs[0])));
        }
        Ok(Self { coeffs, initial })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// a_i for 0 <= i < d.
    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    /// a_{d-1}, ..., a_0.
    pub fn coeffs_high_first(&self) -> Vec<i64> {
        self.coeffs.iter().rev().copied().collect()
    }

    pub fn initial(&self) -> &[BigUint] {
        &self.initial
    }

    /// R_1, ..., R_n as signed integers.
    pub fn terms(&self, n: usize) -> Vec<BigInt> {
        let d = self.order();
        let mut out: Vec<BigInt> = self.initial.iter().map(|x| BigInt::from(x.clone())).collect();
        while out.len() < n {
            let len = out.len();
            let next = (0..d).fold(BigInt::zero(), |acc, i| acc + &out[len - d + i] * self.coeffs[i]);
            out.push(next);
        }
        out.truncate(n);
        out
    }

    /// R_1 mod q, ..., R_n mod q.
    pub fn terms_mod(&self, n: usize, q: u64) -> Vec<u64> {
        let d = self.order();
        let c = self.coeffs_mod(q);
        let mut out: Vec<u64> = self.initial.iter().map(|x| (x % q).to_u64().unwrap_or(0)).collect();
        while out.len() < n {
            let len = out.len();
            out.push(step(&out[len - d..], &c, q));
        }
        out.truncate(n);
        out
    }

    /// R_k mod q by iteration.
    pub fn term_mod(&self, k: u64, q: u64) -> u64 {
        let d = self.order();
        let c = self.coeffs_mod(q);
        let mut window: Vec<u64> = self.initial.iter().map(|x| (x % q).to_u64().unwrap_or(0)).collect();
        if k >= 1 && (k as usize) <= d {
            return window[k as usize - 1];
        }
        for _ in d as u64..k {
            let next = step(&window, &c, q);
            window.rotate_left(1);
            window[d - 1] = next;
        }
        window[d - 1]
    }

    fn coeffs_mod(&self, q: u64) -> Vec<u64> {
        self.coeffs
            .iter()
            .map(|&a| {
                let r = (a as i128).rem_euclid(q as i128);
                r as u64
            })
            .collect()
    }
}

fn step(window: &[u64], c: &[u64], q: u64) -> u64 {
    let mut acc: u128 = 0;
    for (x, a) in window.iter().zip(c) {
        acc = (acc + (*x as u128) * (*a as u128)) % q as u128;
    }
    acc as u64
}

/// Least L >= 1 with R_k ≡ R_{k+L} (mod q) for all k.
pub fn recurrence_period_mod(rec: &RecurrenceSpec, q: u64) -> Result<u64> {
    recurrence_period_mod_capped(rec, q, DEFAULT_PERIOD_CAP)
}

/// As [`recurrence_period_mod`], failing with a resource error after `cap` steps.
///
/// With a_0 = ±1 the state map is invertible mod q, so the state sequence is
/// purely periodic and the first return to the initial state bounds the period.
pub fn recurrence_period_mod_capped(rec: &RecurrenceSpec, q: u64, cap: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::arg("modulus must be at least 1"));
    }
    if q == 1 {
        return Ok(1);
    }
    let d = rec.order();
    let c = rec.coeffs_mod(q);
    let start: Vec<u64> = rec.initial.iter().map(|x| (x % q).to_u64().unwrap_or(0)).collect();
    let mut window = start.clone();
    let mut p: u64 = 0;
    loop {
        let next = step(&window, &c, q);
        window.rotate_left(1);
        window[d - 1] = next;
        p += 1;
        if window == start {
            break;
        }
        if p >= cap {
            return Err(Error::Resource(format!("no period mod {q} within {cap} steps")));
        }
    }
    // Least period divides any period; test divisors in increasing order.
    for l in divisors_u64(p) {
        if is_state_period(rec, &c, &start, q, l) {
            return Ok(l);
        }
    }
    Err(Error::Internal(format!("period {p} found but no divisor verified")))
}

fn is_state_period(rec: &RecurrenceSpec, c: &[u64], start: &[u64], q: u64, l: u64) -> bool {
    let d = rec.order();
    let mut window = start.to_vec();
    for _ in 0..l {
        let next = step(&window, c, q);
        window.rotate_left(1);
        window[d - 1] = next;
    }
    window == start
}

/// Smallest L with `seq[k] == seq[k + L]` for every k in range, by brute force.
pub fn brute_force_period(seq: &[u64]) -> Option<usize> {
    (1..seq.len()).find(|&l| (0..seq.len() - l).all(|k| seq[k] == seq[k + l]))
}
