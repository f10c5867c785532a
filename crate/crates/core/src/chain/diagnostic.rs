//! Fractional-part diagnostic for finite chains.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive};

use super::{reduced_pair, PrimeChain};
use crate::error::{Error, Result};
use crate::exactnum::enclosure::{round_down, round_up};
use crate::exactnum::roots::dyadic_root;

/// Default θ.
pub fn default_theta() -> BigRational {
    BigRational::new(21.into(), 40.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FracDiagnostic {
    /// Rational upper bound on {x^{C_k}} over the chain enclosure.
    pub observed_upper: BigRational,
    /// Rational lower bound on 2/(c_{k+1}·p_k^{(1−θ)c_{k+1}−1}).
    pub bound: BigRational,
    pub satisfied: bool,
}

const BITS: u32 = 64;

/// Upper (or lower) rational bound on p^{u/v} for a rational exponent of any sign.
fn power_bound(p: &BigUint, e: &BigRational, upper: bool) -> Result<BigRational> {
    let u = e.numer().abs().to_u64().ok_or_else(|| Error::Resource("exponent numerator too large".into()))?;
    let v = e.denom().to_u32().ok_or_else(|| Error::Resource("exponent denominator too large".into()))?;
    let r = dyadic_root(&Pow::pow(p, u), v, BITS)?;
    if e.is_negative() {
        // p^{-u/v} = 1 / p^{u/v}
        let side = if upper { r.lo() } else { r.hi() };
        Ok(side.recip())
    } else {
        Ok(if upper { r.hi().clone() } else { r.lo().clone() })
    }
}

/// {x^{C_k}} for x in the depth-n enclosure is below (p_n + 1)^{C_k/C_n} − p_k,
/// the tightest bound the chain supports; the bound side uses c_{k+1}.
pub fn fractional_diagnostic(chain: &PrimeChain, k: usize, theta: &BigRational) -> Result<FracDiagnostic> {
    let n = chain.depth();
    if k == 0 || k >= n {
        return Err(Error::arg(format!("k must satisfy 1 <= k < depth = {n}, got {k}")));
    }
    let seq = &chain.sequence;
    let pk = &chain.primes[k - 1];
    let pn = &chain.primes[n - 1];

    let (a, b) = reduced_pair(seq.eval_c(k)?, seq.eval_c(n)?)?;
    let top = power_bound(&(pn + 1u32), &BigRational::new(a.into(), b.into()), true)?;
    let observed_upper = round_up(&(top - BigRational::from(BigInt::from(pk.clone()))), BITS);

    let c = BigRational::new(BigInt::from(seq.eval_c(k + 1)?.clone()), BigInt::from(seq.eval_c(k)?.clone()));
    let e = (BigRational::one() - theta) * &c - BigRational::one();
    let denom_upper = &c * power_bound(pk, &e, true)?;
    let bound = round_down(&(BigRational::from_integer(2.into()) / denom_upper), BITS);

    let satisfied = observed_upper <= bound;
    Ok(FracDiagnostic { observed_upper, bound, satisfied })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{build_chain, ChainStrategy};
    use crate::exactnum::enclosure::rat;
    use crate::sequences::ExponentSequence;

    fn mills(depth: usize) -> PrimeChain {
        build_chain(&ExponentSequence::mills(10), depth, &ChainStrategy::greedy()).unwrap()
    }

    #[test]
    fn mills_examples() {
        let chain = mills(6);
        let d = fractional_diagnostic(&chain, 1, &default_theta()).unwrap();
        // ξ^3 = 2.229494..., 2/(3·2^{0.425}) = 0.496559...
        assert!(d.observed_upper >= rat(229494, 1_000_000) && d.observed_upper <= rat(229496, 1_000_000));
        assert!(d.bound >= rat(496558, 1_000_000) && d.bound <= rat(496560, 1_000_000));
        assert!(d.satisfied);

        let d = fractional_diagnostic(&chain, 2, &default_theta()).unwrap();
        assert!(d.observed_upper >= rat(8203, 100_000) && d.observed_upper <= rat(8204, 100_000));
        assert!(d.bound >= rat(240611, 1_000_000) && d.bound <= rat(240613, 1_000_000));
        assert!(d.satisfied);
    }

    #[test]
    fn shallow_chain_is_coarser() {
        // Depth 2 only knows ξ^3 < 12^{1/3} = 2.289428...
        let d = fractional_diagnostic(&mills(2), 1, &default_theta()).unwrap();
        assert!(d.observed_upper >= rat(289428, 1_000_000) && d.observed_upper <= rat(289429, 1_000_000));
    }

    #[test]
    fn theta_zero_shape() {
        // exponent c − 1 = 2: 2/(3·2^2) = 1/6
        let d = fractional_diagnostic(&mills(4), 1, &BigRational::from_integer(0.into())).unwrap();
        assert!(d.bound <= rat(1, 6) && d.bound > rat(1, 6) - rat(1, 1 << 60));
        assert!(!d.satisfied);
    }

    #[test]
    fn index_range() {
        let chain = mills(3);
        assert!(fractional_diagnostic(&chain, 0, &default_theta()).is_err());
        assert!(fractional_diagnostic(&chain, 3, &default_theta()).is_err());
        assert!(fractional_diagnostic(&chain, 2, &default_theta()).is_ok());
    }
}
