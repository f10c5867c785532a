//! Integer factorization: trial division followed by Pollard-Brent rho.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::prime::is_prime;
use crate::error::{Error, Result};

/// Default number of rho iterations allowed per factorization.
pub const DEFAULT_FACTOR_BUDGET: u64 = 20_000_000;

const TRIAL_LIMIT: u32 = 10_000;

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * num_traits::Pow::pow(p, *e))
    }

    /// A composite has at least two prime factors counted with multiplicity.
    pub fn is_composite(&self) -> bool {
        self.factors.iter().map(|(_, e)| *e).sum::<u32>() >= 2
    }

    /// `2·3·4871` style rendering; exponents above one print as `2^6`.
    pub fn render(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect::<Vec<_>>()
            .join("·")
    }
}

pub fn factorize(n: &BigUint) -> Result<Factorization> {
    factorize_with_budget(n, DEFAULT_FACTOR_BUDGET)
}

/// Fails with a resource error once `budget` rho iterations are spent.
pub fn factorize_with_budget(n: &BigUint, budget: u64) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::arg("cannot factor zero"));
    }
    let mut primes: Vec<BigUint> = Vec::new();
    let mut rest = n.clone();
    let mut d = 2u32;
    while d <= TRIAL_LIMIT {
        let db = BigUint::from(d);
        if &db * &db > rest {
            break;
        }
        while (&rest % d).is_zero() {
            primes.push(db.clone());
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut remaining = budget;
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            primes.push(m);
            continue;
        }
        let f = pollard_brent(&m, &mut remaining)?;
        stack.push(&m / &f);
        stack.push(f);
    }
    primes.sort();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { factors })
}

/// A non-trivial factor of composite m.
fn pollard_brent(m: &BigUint, remaining: &mut u64) -> Result<BigUint> {
    if m.is_even() {
        return Ok(BigUint::from(2u32));
    }
    let one = BigUint::one();
    for c in 1u64.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % m;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BLOCK: u64 = 128;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..BLOCK.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % m;
                }
                g = q.gcd(m);
                k += BLOCK;
                let spent = BLOCK.min(r);
                if *remaining < spent {
                    return Err(Error::Resource(format!(
                        "factorization budget exhausted on a {}-digit cofactor",
                        m.to_string().len()
                    )));
                }
                *remaining -= spent;
            }
            r *= 2;
        }
        if g == *m {
            // Backtrack one step at a time from the saved state.
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(m);
                if g > one {
                    break;
                }
            }
        }
        if g != *m {
            return Ok(g);
        }
    }
    unreachable!("the constant sequence 1, 2, ... is unbounded")
}

/// Euler's totient from a factorization.
pub fn euler_phi(n: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::arg("phi(0) is undefined"));
    }
    let fac = factorize(n)?;
    let mut phi = BigUint::one();
    for (p, e) in &fac.factors {
        phi *= num_traits::Pow::pow(p, e - 1) * (p - 1u32);
    }
    Ok(phi)
}

/// Divisors of n in increasing order (n small enough to factor).
pub fn divisors(n: &BigUint) -> Result<Vec<BigUint>> {
    let fac = factorize(n)?;
    let mut divs = vec![BigUint::one()];
    for (p, e) in &fac.factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..*e {
                pk *= p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Divisors of a u64.
pub fn divisors_u64(n: u64) -> Vec<u64> {
    divisors(&BigUint::from(n))
        .expect("u64 inputs factor within budget")
        .into_iter()
        .filter_map(|d| d.to_u64())
        .collect()
}
