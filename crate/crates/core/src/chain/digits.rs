//! Enclosures of the chain limit and their certified decimal digits.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::PrimeChain;
use crate::error::{Error, Result};
use crate::exactnum::enclosure::{CertifiedDigits, RealEnclosure};
use crate::exactnum::roots::dyadic_root;

/// Bits of precision that resolve `decimals` decimal places with some slack.
pub fn bits_for_decimals(decimals: usize) -> u32 {
    // log2(10) < 3.33
    (decimals as u32 * 333).div_ceil(100) + 16
}

/// [p_n^{1/C_n}, (p_n + 1)^{1/C_n}) with endpoints rounded outward to 2^-bits.
pub fn enclosure(chain: &PrimeChain, bits: u32) -> Result<RealEnclosure> {
    let n = chain.depth();
    if n == 0 {
        return Err(Error::arg("empty chain"));
    }
    let p = &chain.primes[n - 1];
    let c = chain
        .sequence
        .eval_c(n)?
        .to_u32()
        .ok_or_else(|| Error::Resource("C_n does not fit a root index".into()))?;
    let lo = dyadic_root(p, c, bits)?;
    let hi = dyadic_root(&(p + BigUint::from(1u32)), c, bits)?;
    RealEnclosure::half_open(lo.lo().clone(), hi.hi().clone())
}

/// Digits of the chain limit on which the whole enclosure agrees.
pub fn certified_digits(chain: &PrimeChain, n_digits: usize) -> Result<CertifiedDigits> {
    let e = enclosure(chain, bits_for_decimals(n_digits))?;
    Ok(e.certified_digits(n_digits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{build_chain, ChainStrategy};
    use crate::exactnum::enclosure::rat;
    use crate::sequences::{ExponentSequence, Family};

    const PUBLISHED: &str = "1.306377883863080690468614492602";

    #[test]
    fn mills_depth_one() {
        let c = build_chain(&ExponentSequence::mills(8), 1, &ChainStrategy::greedy()).unwrap();
        let e = enclosure(&c, 40).unwrap();
        // 2^{1/3} = 1.2599210..., 3^{1/3} = 1.4422495...
        assert!(e.lo() >= &rat(1259921, 1_000_000) && e.lo() <= &rat(1259922, 1_000_000));
        assert!(e.hi() >= &rat(1442249, 1_000_000) && e.hi() <= &rat(1442250, 1_000_000));
        let d = certified_digits(&c, 10).unwrap();
        assert_eq!(d.text, "1.");
        assert_eq!(d.decimals, 0);
    }

    #[test]
    fn literal_one() {
        let seq = ExponentSequence::new(Family::Literal(vec![1u32.into()]), 1).unwrap();
        let c = build_chain(&seq, 1, &ChainStrategy::greedy()).unwrap();
        let e = enclosure(&c, 10).unwrap();
        assert_eq!((e.lo().clone(), e.hi().clone()), (rat(2, 1), rat(3, 1)));
        assert!(e.is_upper_exclusive());
        assert_eq!(certified_digits(&c, 5).unwrap().text, "2.");
    }

    #[test]
    fn mills_depth_four_and_six() {
        let seq = ExponentSequence::mills(8);
        let c = build_chain(&seq, 4, &ChainStrategy::greedy()).unwrap();
        let e = enclosure(&c, 60).unwrap();
        assert!(e.width() < rat(1, 100_000_000));
        assert!(PUBLISHED.starts_with(&certified_digits(&c, 10).unwrap().text));

        let c = build_chain(&seq, 6, &ChainStrategy::greedy()).unwrap();
        let d = certified_digits(&c, 20).unwrap();
        assert_eq!(d.decimals, 20);
        assert_eq!(d.text, "1.30637788386308069046");
    }
}
