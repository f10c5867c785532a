//! Primality testing and prime search in intervals.
//!
//! Inputs below 2^64 get a deterministic Miller-Rabin verdict. Larger inputs
//! go through Baillie-PSW followed by extra Miller-Rabin rounds with bases
//! drawn from a ChaCha stream seeded by the candidate itself, so verdicts are
//! reproducible run to run.

use std::fmt;

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Extra Miller-Rabin rounds after BPSW for inputs of 64 bits or more.
/// Each round has worst-case error 1/4, so 64 rounds reach 2^-128.
pub const PROBABLE_PRIME_ROUNDS: usize = 64;

const SIEVE_LIMIT: u32 = 1 << 16;
const WINDOW: usize = 1 << 14;

/// How much a positive primality verdict can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certainty {
    /// Proven for every input below 2^64.
    Deterministic,
    /// Strong probable prime (BPSW plus [`PROBABLE_PRIME_ROUNDS`] MR rounds).
    Probable,
}

impl Certainty {
    pub fn as_str(self) -> &'static str {
        match self {
            Certainty::Deterministic => "deterministic",
            Certainty::Probable => "probable",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "deterministic" => Some(Certainty::Deterministic),
            "probable" => Some(Certainty::Probable),
            _ => None,
        }
    }
}

impl fmt::Display for Certainty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn small_primes() -> &'static [u32] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SIEVE_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

pub fn is_prime(n: &BigUint) -> bool {
    primality(n).is_some()
}

/// `None` when `n` is not prime, otherwise the certainty of the verdict.
pub fn primality(n: &BigUint) -> Option<Certainty> {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small).then_some(Certainty::Deterministic);
    }
    for &p in &small_primes()[..168] {
        if (n % p).is_zero() {
            return None;
        }
    }
    if !miller_rabin(n, &BigUint::from(2u32)) || !strong_lucas(n) {
        return None;
    }
    let mut rng = seeded_rng(n);
    let two = BigUint::from(2u32);
    let upper = n - 2u32;
    for _ in 0..PROBABLE_PRIME_ROUNDS {
        let base = rng.gen_biguint_range(&two, &upper);
        if !miller_rabin(n, &base) {
            return None;
        }
    }
    Some(Certainty::Probable)
}

fn seeded_rng(n: &BigUint) -> ChaCha20Rng {
    let digest = Sha256::digest(n.to_bytes_le());
    let mut seed = [0u8; 32];
    seed.copy_from_slice(&digest[..32]);
    ChaCha20Rng::from_seed(seed)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic for all `u64`: the first twelve primes as bases suffice.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn miller_rabin(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = base.modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let mut n = n.clone();
    let mut a = a.mod_floor(&BigInt::from_biguint(Sign::Plus, n.clone()))
        .to_biguint()
        .expect("non-negative after mod_floor");
    let mut result = 1;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        a >>= tz;
        let n_mod_8 = (&n % 8u32).to_u32().unwrap_or(0);
        if tz % 2 == 1 && (n_mod_8 == 3 || n_mod_8 == 5) {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigUint::from(3u32) && (&n % 4u32) == BigUint::from(3u32) {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice.
fn strong_lucas(n: &BigUint) -> bool {
    let root = n.sqrt();
    if &root * &root == *n {
        return false;
    }
    let mut d_param: i64 = 5;
    loop {
        let j = jacobi(&BigInt::from(d_param), n);
        if j == -1 {
            break;
        }
        if j == 0 {
            // gcd(|D|, n) > 1; n is larger than |D| here so it is composite.
            return false;
        }
        d_param = if d_param > 0 { -(d_param + 2) } else { -d_param + 2 };
    }
    let modulus = BigInt::from_biguint(Sign::Plus, n.clone());
    let d_big = BigInt::from(d_param);
    let q = BigInt::from((1 - d_param) / 4);
    let reduce = |x: BigInt| x.mod_floor(&modulus);
    let half = |x: BigInt| {
        let x = if x.is_odd() { x + &modulus } else { x };
        x >> 1
    };

    let n_plus_1 = n + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let d = &n_plus_1 >> s;

    // Binary ladder over the bits of d, starting from index 1 (P = 1).
    let mut u = BigInt::one();
    let mut v = BigInt::one();
    let mut qk = reduce(q.clone());
    let bits = d.bits();
    for i in (0..bits - 1).rev() {
        u = reduce(&u * &v);
        v = reduce(&v * &v - (&qk << 1));
        qk = reduce(&qk * &qk);
        if d.bit(i) {
            let nu = half(&u + &v);
            let nv = half(&d_big * &u + &v);
            u = reduce(nu);
            v = reduce(nv);
            qk = reduce(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = reduce(&v * &v - (&qk << 1));
        if v.is_zero() {
            return true;
        }
        qk = reduce(&qk * &qk);
    }
    false
}

/// Smallest prime p with lo <= p <= hi.
pub fn smallest_prime_in(lo: &BigUint, hi: &BigUint) -> Result<Option<BigUint>> {
    Ok(find_prime_in(lo, hi)?.map(|(p, _)| p))
}

/// Like [`smallest_prime_in`] but also reports the primality certainty.
///
/// Candidates are sieved by small primes in fixed windows; survivors inside a
/// window are tested in parallel and the least prime is kept, so the result
/// does not depend on scheduling.
pub fn find_prime_in(lo: &BigUint, hi: &BigUint) -> Result<Option<(BigUint, Certainty)>> {
    if lo > hi {
        return Err(Error::arg(format!("empty interval: {lo} > {hi}")));
    }
    let two = BigUint::from(2u32);
    if *lo <= two && two <= *hi {
        return Ok(Some((two, Certainty::Deterministic)));
    }
    let mut start = if lo.is_even() { lo + 1u32 } else { lo.clone() };
    let primes = &small_primes()[1..];
    while start <= *hi {
        // Odd candidates start + 2i for i < len.
        let span = (hi - &start) / 2u32 + 1u32;
        let len = span.to_usize().map_or(WINDOW, |s| s.min(WINDOW));
        let mut alive = vec![true; len];
        for &p in primes {
            let p_big = BigUint::from(p);
            let r = (&start % p).to_u64().unwrap_or(0);
            // first i with start + 2i ≡ 0 (mod p)
            let mut i = if r == 0 { 0 } else {
                let need = (p as u64 - r) % p as u64;
                if need.is_multiple_of(2) { need / 2 } else { (need + p as u64) / 2 }
            } as usize;
            // never strike p itself
            if i < len && &start + 2u32 * BigUint::from(i) == p_big {
                i += p as usize;
            }
            while i < len {
                alive[i] = false;
                i += p as usize;
            }
        }
        let candidates: Vec<BigUint> = alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| &start + 2u32 * BigUint::from(i))
            .filter(|c| c > &BigUint::one())
            .collect();
        let hit = candidates
            .par_iter()
            .map(primality)
            .collect::<Vec<_>>()
            .into_iter()
            .zip(candidates.iter())
            .find_map(|(cert, c)| cert.map(|cert| (c.clone(), cert)));
        if hit.is_some() {
            return Ok(hit);
        }
        start += 2u32 * BigUint::from(len);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn spec_examples() {
        assert!(is_prime(&BigUint::from(2u32)));
        assert!(is_prime(&BigUint::from(1361u32)));
        assert!(!is_prime(&BigUint::from(561u32)));
    }

    #[test]
    fn agrees_with_trial_division_to_one_million() {
        for n in 0..=1_000_000u64 {
            assert_eq!(is_prime_u64(n), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn big_path_matches_small_path() {
        // Exercise BPSW directly on values that also fit in u64.
        for n in (1_000_001u64..1_003_000).step_by(2) {
            let big = BigUint::from(n);
            let bpsw = miller_rabin(&big, &BigUint::from(2u32)) && strong_lucas(&big);
            assert_eq!(bpsw, trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_base_two_are_rejected_by_lucas() {
        // 2047 and 3215031751 are strong pseudoprimes to base 2.
        for n in [2047u64, 3_215_031_751, 3_825_123_056_546_413_051] {
            let big = BigUint::from(n);
            assert!(miller_rabin(&big, &BigUint::from(2u32)));
            assert!(!strong_lucas(&big), "n = {n}");
        }
    }

    #[test]
    fn large_known_values() {
        // 2^127 - 1 is prime, 2^128 + 1 is not.
        let m127 = (BigUint::one() << 127) - 1u32;
        assert_eq!(primality(&m127), Some(Certainty::Probable));
        let f7 = (BigUint::one() << 128) + 1u32;
        assert!(!is_prime(&f7));
        // Product of two 40-bit primes.
        let p = BigUint::from(1_099_511_627_791u64);
        let q = BigUint::from(1_099_511_627_689u64);
        assert!(is_prime(&p) && is_prime(&q));
        assert!(!is_prime(&(&p * &q)));
    }

    #[test]
    fn interval_examples() {
        let b = |x: u64| BigUint::from(x);
        assert_eq!(smallest_prime_in(&b(8), &b(25)).unwrap(), Some(b(11)));
        assert_eq!(smallest_prime_in(&b(1331), &b(1726)).unwrap(), Some(b(1361)));
        assert_eq!(smallest_prime_in(&b(24), &b(28)).unwrap(), None);
        assert_eq!(smallest_prime_in(&b(0), &b(1)).unwrap(), None);
        assert_eq!(smallest_prime_in(&b(3), &b(3)).unwrap(), Some(b(3)));
        assert!(smallest_prime_in(&b(9), &b(8)).is_err());
    }

    #[test]
    fn interval_search_matches_scan() {
        for lo in 0u64..400 {
            for width in [0u64, 1, 2, 5, 17] {
                let hi = lo + width;
                let expect = (lo..=hi).find(|&n| trial_division(n));
                let got = smallest_prime_in(&BigUint::from(lo), &BigUint::from(hi)).unwrap();
                assert_eq!(got, expect.map(BigUint::from), "[{lo}, {hi}]");
            }
        }
    }

    #[test]
    fn search_through_a_maximal_gap() {
        // Prime gap of 1132 after 1693182318746371.
        let lo = BigUint::from(1_693_182_318_746_372u64);
        let hi = BigUint::from(1_693_182_318_747_600u64);
        let p = smallest_prime_in(&lo, &hi).unwrap().unwrap();
        assert_eq!(p, BigUint::from(1_693_182_318_747_503u64));
    }

    #[test]
    fn jacobi_small_table() {
        // (a/7) for a = 0..7
        let expect = [0, 1, 1, -1, 1, -1, -1];
        for (a, &e) in expect.iter().enumerate() {
            assert_eq!(jacobi(&BigInt::from(a), &BigUint::from(7u32)), e);
        }
        assert_eq!(jacobi(&BigInt::from(-1), &BigUint::from(7u32)), -1);
    }
}
