//! Prime chains p_1, p_2, ... with p_k^{c_{k+1}} <= p_{k+1} < (p_k + 1)^{c_{k+1}} − 1.
//!
//! Every real A with p_n^{1/C_n} <= A < (p_n + 1)^{1/C_n} has ⌊A^{C_k}⌋ = p_k
//! for all k <= n, so a chain of depth n pins the constant to that interval.

pub mod cache;
pub mod diagnostic;
pub mod digits;
pub mod idealineq;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::prime::{find_prime_in, is_prime, Certainty};
use crate::exactnum::roots::{ceil_nth_root, floor_nth_root};
use crate::sequences::ExponentSequence;

pub use diagnostic::{fractional_diagnostic, FracDiagnostic};
pub use digits::{certified_digits, enclosure};
pub use idealineq::{idealineq_check, idealineq_check_rational, IdealIneqResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainMode {
    /// Smallest prime at every level; no backtracking.
    GreedyMin,
    /// Lexicographically least chain of the requested depth.
    DfsLexicographicMin,
}

impl ChainMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ChainMode::GreedyMin => "greedy_min",
            ChainMode::DfsLexicographicMin => "dfs_lexicographic_min",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "greedy_min" | "greedy" => Ok(ChainMode::GreedyMin),
            "dfs_lexicographic_min" | "dfs" => Ok(ChainMode::DfsLexicographicMin),
            other => Err(Error::arg(format!("unknown chain mode {other:?}"))),
        }
    }
}

impl fmt::Display for ChainMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainStrategy {
    pub mode: ChainMode,
    /// Primes tried at a single level before that level counts as exhausted.
    pub candidate_cap: u64,
    /// Total number of backtracking steps allowed.
    pub backtrack_limit: u64,
}

impl ChainStrategy {
    pub fn greedy() -> Self {
        Self { mode: ChainMode::GreedyMin, ..Self::default() }
    }

    pub fn dfs() -> Self {
        Self { mode: ChainMode::DfsLexicographicMin, ..Self::default() }
    }
}

impl Default for ChainStrategy {
    fn default() -> Self {
        Self { mode: ChainMode::GreedyMin, candidate_cap: 10_000, backtrack_limit: 10_000 }
    }
}

/// Admissible range for one level; `hi` is `None` only at level 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelBounds {
    pub lo: BigUint,
    pub hi: Option<BigUint>,
    /// c_{k+1} = a/b in lowest terms; (1, 1) at level 1.
    pub exponent: (BigUint, BigUint),
}

impl LevelBounds {
    pub fn contains(&self, p: &BigUint) -> bool {
        *p >= self.lo && self.hi.as_ref().is_none_or(|h| p <= h)
    }

    pub fn describe(&self) -> String {
        match &self.hi {
            Some(h) => format!("[{}, {}]", self.lo, h),
            None => format!("[{}, ∞)", self.lo),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeChain {
    pub sequence: ExponentSequence,
    pub primes: Vec<BigUint>,
    pub certainty: Vec<Certainty>,
    pub bounds: Vec<LevelBounds>,
    pub strategy: ChainStrategy,
    pub backtracks: u64,
}

impl PrimeChain {
    pub fn depth(&self) -> usize {
        self.primes.len()
    }

    /// Some level has c_{k+1} < 2, outside the range where chains are known to extend.
    pub fn unsupported_territory(&self) -> bool {
        (1..self.depth()).any(|k| {
            let (a, b) = &self.bounds[k].exponent;
            a < &(b * 2u32)
        })
    }

    pub fn all_deterministic(&self) -> bool {
        self.certainty.iter().all(|c| *c == Certainty::Deterministic)
    }

    /// p^(C_j/C_i) exponent pair (a, b) in lowest terms, i.e. C_j/C_i = a/b.
    pub fn exponent_ratio(&self, i: usize, j: usize) -> Result<(u64, u64)> {
        let ci = self.sequence.eval_c(i)?;
        let cj = self.sequence.eval_c(j)?;
        reduced_pair(cj, ci)
    }
}

pub(crate) fn reduced_pair(num: &BigUint, den: &BigUint) -> Result<(u64, u64)> {
    let g = num.gcd(den);
    let a = (num / &g).to_u64();
    let b = (den / &g).to_u64();
    match (a, b) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::Resource(format!("exponent ratio {num}/{den} too large"))),
    }
}

/// Admissible range for p_{k+1} given p_k and c_{k+1} = a/b:
/// least q with q^b >= p^a, up to largest q with (q + 1)^b < (p + 1)^a.
pub fn level_bounds(p: &BigUint, a: u64, b: u64) -> Result<(BigUint, Option<BigUint>)> {
    let bu = u32::try_from(b).map_err(|_| Error::Resource("exponent denominator too large".into()))?;
    let lo = ceil_nth_root(&Pow::pow(p, a), bu)?;
    let top: BigUint = Pow::pow(&(p + 1u32), a) - 1u32;
    let r = floor_nth_root(&top, bu)?;
    if r.is_zero() {
        return Ok((lo, None));
    }
    let hi = r - 1u32;
    Ok(if hi >= lo { (lo, Some(hi)) } else { (lo, None) })
}

/// Bounds for level `level` (1-based) given the previous prime.
pub(crate) fn bounds_for(seq: &ExponentSequence, level: usize, prev: Option<&BigUint>) -> Result<Option<LevelBounds>> {
    match prev {
        None => Ok(Some(LevelBounds { lo: BigUint::from(2u32), hi: None, exponent: (BigUint::one(), BigUint::one()) })),
        Some(p) => {
            let (a, b) = reduced_pair(seq.eval_c(level)?, seq.eval_c(level - 1)?)?;
            let (lo, hi) = level_bounds(p, a, b)?;
            Ok(hi.map(|hi| LevelBounds { lo, hi: Some(hi), exponent: (a.into(), b.into()) }))
        }
    }
}

/// Least prime >= from inside the bounds.
fn next_prime_in(bounds: &LevelBounds, from: &BigUint) -> Result<Option<(BigUint, Certainty)>> {
    let lo = if *from > bounds.lo { from.clone() } else { bounds.lo.clone() };
    match &bounds.hi {
        Some(hi) => {
            if lo > *hi {
                return Ok(None);
            }
            find_prime_in(&lo, hi)
        }
        // Bertrand: a prime lies in (n, 2n].
        None => find_prime_in(&lo, &(&lo * 2u32)),
    }
}

/// Build a chain of `depth` primes.
pub fn build_chain(seq: &ExponentSequence, depth: usize, strategy: &ChainStrategy) -> Result<PrimeChain> {
    if depth == 0 {
        return Err(Error::arg("depth must be at least 1"));
    }
    if depth > seq.horizon() {
        return Err(Error::OutOfRange { index: depth as u64, horizon: seq.horizon() as u64 });
    }
    let mut chain = PrimeChain {
        sequence: seq.clone(),
        primes: Vec::new(),
        certainty: Vec::new(),
        bounds: Vec::new(),
        strategy: strategy.clone(),
        backtracks: 0,
    };
    grow(&mut chain, depth, 0)?;
    Ok(chain)
}

/// Append levels to `chain` until it has `depth` primes. Existing levels are
/// kept: DFS backtracking stops at the existing prefix.
pub fn extend_chain(chain: &mut PrimeChain, depth: usize) -> Result<()> {
    if depth > chain.sequence.horizon() {
        return Err(Error::OutOfRange { index: depth as u64, horizon: chain.sequence.horizon() as u64 });
    }
    let frozen = chain.depth();
    grow(chain, depth, frozen)
}

fn grow(chain: &mut PrimeChain, depth: usize, frozen: usize) -> Result<()> {
    let seq = chain.sequence.clone();
    let strategy = chain.strategy.clone();
    // tried[i] = number of primes examined at level i+1 for the current prefix.
    let mut tried: Vec<u64> = vec![1; chain.depth()];
    let exhausted = |chain: &PrimeChain, reason: String| Error::SearchExhausted {
        level: chain.depth() + 1,
        reason,
        partial: chain.primes.clone(),
    };
    while chain.depth() < depth {
        let level = chain.depth() + 1;
        let found = match bounds_for(&seq, level, chain.primes.last())? {
            Some(bounds) => next_prime_in(&bounds, &bounds.lo)?.map(|(p, c)| (p, c, bounds)),
            None => None,
        };
        if let Some((p, c, bounds)) = found {
            chain.primes.push(p);
            chain.certainty.push(c);
            chain.bounds.push(bounds);
            tried.push(1);
            continue;
        }
        // Level `level` is empty under the current prefix.
        if strategy.mode == ChainMode::GreedyMin {
            return Err(exhausted(chain, "admissible interval contains no prime".into()));
        }
        loop {
            if chain.depth() <= frozen {
                return Err(exhausted(chain, "no extension of the fixed prefix".into()));
            }
            if chain.backtracks >= strategy.backtrack_limit {
                return Err(exhausted(chain, format!("backtrack limit {} reached", strategy.backtrack_limit)));
            }
            chain.backtracks += 1;
            let prev = chain.primes.pop().expect("non-empty");
            chain.certainty.pop();
            let bounds = chain.bounds.pop().expect("non-empty");
            let count = tried.pop().expect("non-empty");
            if count >= strategy.candidate_cap {
                continue;
            }
            if let Some((p, c)) = next_prime_in(&bounds, &(prev + 1u32))? {
                chain.primes.push(p);
                chain.certainty.push(c);
                chain.bounds.push(bounds);
                tried.push(count + 1);
                break;
            }
        }
    }
    Ok(())
}

/// Check the chain inequalities and primality for a given list of primes.
pub fn validate_chain(seq: &ExponentSequence, primes: &[BigUint], check_primality: bool) -> Result<()> {
    if primes.len() > seq.horizon() {
        return Err(Error::OutOfRange { index: primes.len() as u64, horizon: seq.horizon() as u64 });
    }
    for (i, p) in primes.iter().enumerate() {
        if check_primality && !is_prime(p) {
            return Err(Error::Internal(format!("p_{} = {p} is not prime", i + 1)));
        }
        if i == 0 {
            continue;
        }
        let (a, b) = reduced_pair(seq.eval_c(i + 1)?, seq.eval_c(i)?)?;
        let q = &primes[i - 1];
        let lower = Pow::pow(p, b).cmp(&Pow::pow(q, a));
        let upper = Pow::pow(&(p + 1u32), b).cmp(&Pow::pow(&(q + 1u32), a));
        if lower == Ordering::Less || upper != Ordering::Less {
            return Err(Error::Internal(format!("p_{} = {p} violates the chain inequality", i + 1)));
        }
    }
    Ok(())
}

/// For every x in the depth-n enclosure, ⌊x^{C_k}⌋ = p_k.
///
/// With C_k/C_n = a/b: p_k^b <= p_n^a and (p_n + 1)^a <= (p_k + 1)^b.
pub fn floor_recovery_holds(chain: &PrimeChain, k: usize) -> Result<bool> {
    let n = chain.depth();
    let (a, b) = chain.exponent_ratio(n, k)?;
    let pk = &chain.primes[k - 1];
    let pn = &chain.primes[n - 1];
    let low = Pow::pow(pk, b) <= Pow::pow(pn, a);
    let high = Pow::pow(&(pn + 1u32), a) <= Pow::pow(&(pk + 1u32), b);
    Ok(low && high)
}

/// The level-(k+1) interval [p^{1/C}, (p+1)^{1/C}) lies inside the level-k one.
pub fn nested_at(chain: &PrimeChain, k: usize) -> Result<bool> {
    let (a, b) = chain.exponent_ratio(k, k + 1)?;
    // C_{k+1}/C_k = a/b: p_k^{1/C_k} <= p_{k+1}^{1/C_{k+1}}  <=>  p_k^a <= p_{k+1}^b
    let p = &chain.primes[k - 1];
    let q = &chain.primes[k];
    let low = Pow::pow(p, a) <= Pow::pow(q, b);
    let high = Pow::pow(&(q + 1u32), b) <= Pow::pow(&(p + 1u32), a);
    Ok(low && high)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::Family;

    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn mills_level_bounds() {
        assert_eq!(level_bounds(&b(2), 3, 1).unwrap(), (b(8), Some(b(25))));
        assert_eq!(level_bounds(&b(11), 3, 1).unwrap(), (b(1331), Some(b(1726))));
    }

    #[test]
    fn greedy_mills() {
        let seq = ExponentSequence::mills(10);
        let c = build_chain(&seq, 2, &ChainStrategy::greedy()).unwrap();
        assert_eq!(c.primes, vec![b(2), b(11)]);
        let c = build_chain(&seq, 4, &ChainStrategy::greedy()).unwrap();
        assert_eq!(c.primes, vec![b(2), b(11), b(1361), b(2521008887)]);
        assert!(c.all_deterministic());
        validate_chain(&seq, &c.primes, true).unwrap();
    }

    #[test]
    fn literal_single_level() {
        let seq = ExponentSequence::new(Family::Literal(vec![b(1)]), 1).unwrap();
        let c = build_chain(&seq, 1, &ChainStrategy::greedy()).unwrap();
        assert_eq!(c.primes, vec![b(2)]);
        assert!(build_chain(&seq, 2, &ChainStrategy::greedy()).is_err());
        assert!(build_chain(&seq, 0, &ChainStrategy::greedy()).is_err());
    }

    #[test]
    fn greedy_equals_dfs_on_mills() {
        let seq = ExponentSequence::mills(10);
        let g = build_chain(&seq, 6, &ChainStrategy::greedy()).unwrap();
        let d = build_chain(&seq, 6, &ChainStrategy::dfs()).unwrap();
        assert_eq!(g.primes, d.primes);
        assert_eq!(d.backtracks, 0);
    }

    #[test]
    fn dfs_backtracks_where_greedy_stalls() {
        let lit = |v: &[u64]| ExponentSequence::new(Family::Literal(v.iter().map(|&x| b(x)).collect()), v.len()).unwrap();
        let cases: [(&[u64], &[u64], &[u64]); 2] = [
            (&[10, 11, 12], &[2], &[17, 23, 31]),
            (&[3, 5, 8, 13], &[2, 5], &[3, 7, 23, 167]),
        ];
        for (c, greedy_partial, dfs_chain) in cases {
            let seq = lit(c);
            match build_chain(&seq, c.len(), &ChainStrategy::greedy()) {
                Err(Error::SearchExhausted { partial, .. }) => {
                    assert_eq!(partial, greedy_partial.iter().map(|&x| b(x)).collect::<Vec<_>>())
                }
                other => panic!("expected exhaustion, got {other:?}"),
            }
            let d = build_chain(&seq, c.len(), &ChainStrategy::dfs()).unwrap();
            assert_eq!(d.primes, dfs_chain.iter().map(|&x| b(x)).collect::<Vec<_>>());
            assert!(d.backtracks > 0);
            validate_chain(&seq, &d.primes, true).unwrap();
        }
    }

    #[test]
    fn backtrack_limit_is_reported() {
        let seq = ExponentSequence::new(Family::Literal(vec![b(10), b(11), b(12)]), 3).unwrap();
        let strategy = ChainStrategy { backtrack_limit: 2, ..ChainStrategy::dfs() };
        assert!(matches!(build_chain(&seq, 3, &strategy), Err(Error::SearchExhausted { .. })));
    }

    #[test]
    fn dfs_is_lexicographically_least_on_small_case() {
        // Brute force over level-1 primes below 200 for the sequence C = (2, 3, 5).
        let seq = ExponentSequence::new(Family::Literal(vec![b(2), b(3), b(5)]), 3).unwrap();
        let d = build_chain(&seq, 3, &ChainStrategy::dfs()).unwrap();
        let primes: Vec<u64> = (2..20000u64).filter(|&n| is_prime(&b(n))).collect();
        let mut best: Option<Vec<u64>> = None;
        'outer: for &p1 in primes.iter().filter(|&&p| p < 200) {
            for &p2 in &primes {
                if validate_chain(&seq, &[b(p1), b(p2)], false).is_err() {
                    continue;
                }
                for &p3 in &primes {
                    if validate_chain(&seq, &[b(p1), b(p2), b(p3)], false).is_ok() {
                        best = Some(vec![p1, p2, p3]);
                        break 'outer;
                    }
                }
            }
        }
        let best: Vec<BigUint> = best.unwrap().into_iter().map(b).collect();
        assert_eq!(d.primes, best);
    }

    #[test]
    fn invariants_on_shifted() {
        let seq = ExponentSequence::shifted(1, 3, -1, 10).unwrap();
        let c = build_chain(&seq, 5, &ChainStrategy::greedy()).unwrap();
        validate_chain(&seq, &c.primes, true).unwrap();
        for k in 1..c.depth() {
            assert!(nested_at(&c, k).unwrap());
        }
        for k in 1..=c.depth() {
            assert!(floor_recovery_holds(&c, k).unwrap());
        }
    }

    #[test]
    fn extension_appends() {
        let seq = ExponentSequence::mills(10);
        let mut c = build_chain(&seq, 2, &ChainStrategy::greedy()).unwrap();
        extend_chain(&mut c, 4).unwrap();
        assert_eq!(c.primes[3], b(2521008887));
    }
}
