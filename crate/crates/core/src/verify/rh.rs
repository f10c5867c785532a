//! Prime-interval step: a prime in [x, x + (22/25)√x·ln x] lies in
//! [x, x + 3x^{2/3}] for every x >= 1.
//!
//! For x >= 4 the inclusion is (22/25)√x·ln x <= 3x^{2/3}, i.e.
//! ln(x)·x^{−1/6} <= 75/22; the left side peaks at ln x = 6 with value 6/e.
//! For 1 <= x < 4 explicit primes cover [x, x + 3x^{2/3}].

use num_bigint::BigUint;
use num_rational::BigRational;

use super::report::{Check, Comparison, Outcome, VerificationReport};
use crate::error::Result;
use crate::exactnum::elementary::{exp_enclosure, ln_rational};
use crate::exactnum::enclosure::{decimal_ceiled, decimal_truncated, int_rat, rat, RealEnclosure};
use crate::exactnum::roots::dyadic_root;

const BITS: u32 = 64;

fn limit() -> BigRational {
    rat(75, 22)
}

/// 6/e.
pub fn sup_enclosure() -> Result<RealEnclosure> {
    Ok(exp_enclosure(&rat(-1, 1), BITS)?.scale(&int_rat(6)))
}

/// Largest certified upper bound of ln(x)·x^{−1/6} over cells [a, ⌈5a/4⌉] covering [lo, hi].
pub fn sweep(lo: u64, hi: u64) -> Result<(usize, BigRational)> {
    let mut a = lo;
    let mut cells = 0;
    let mut worst = rat(0, 1);
    while a < hi {
        let b = (a * 5).div_ceil(4).max(a + 1);
        let ln_b = ln_rational(&int_rat(b), BITS)?;
        let root_a = dyadic_root(&BigUint::from(a), 6, BITS)?;
        let bound = ln_b.hi() / root_a.lo();
        worst = worst.max(bound);
        cells += 1;
        a = b;
    }
    Ok((cells, worst))
}

/// (lo, hi, prime): for x in the piece, prime ∈ [x, x + 3x^{2/3}].
pub const SMALL_PIECES: [(u64, u64, u64); 3] = [(1, 2, 2), (2, 3, 3), (3, 4, 5)];

/// q >= hi and q <= lo + 3 lo^{2/3}, so q covers every x in [lo, hi].
fn piece_holds(lo: u64, hi: u64, q: u64) -> bool {
    // (q − lo)^3 <= 27 lo^2
    q >= hi && (q - lo).pow(3) <= 27 * lo * lo
}

pub fn verify_rh_interval_step() -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    let sup = sup_enclosure()?;
    r.push(Check::new(
        "rh-step.sup",
        "supremum of ln(x)·x^(−1/6) on x >= 1",
        "6/e < 75/22 = 3.4090...",
        format!("6/e ∈ [{}, {}]", decimal_truncated(sup.lo(), 7), decimal_ceiled(sup.hi(), 7)),
        Comparison::Certified,
        Outcome::from_bool(*sup.hi() < limit()),
    ));

    let (cells, worst) = sweep(4, 1_000_000)?;
    r.push(Check::new(
        "rh-step.sweep",
        "ln(x)·x^(−1/6) on [4, 10^6]",
        "< 75/22 on every cell",
        format!("max cell bound {} over {cells} cells", decimal_ceiled(&worst, 4)),
        Comparison::Certified,
        Outcome::from_bool(worst < limit()),
    ));

    // x = 4: (22/25)·2·ln 4 versus 3·4^{2/3} = 3·16^{1/3}
    let left = ln_rational(&int_rat(4), BITS)?.scale(&rat(44, 25));
    let right = dyadic_root(&BigUint::from(16u32), 3, BITS)?.scale(&int_rat(3));
    r.push(Check::new(
        "rh-step.x4",
        "interval lengths at x = 4",
        "(22/25)·2·ln 4 <= 3·4^(2/3)",
        format!("{} <= {}", decimal_ceiled(left.hi(), 4), decimal_truncated(right.lo(), 4)),
        Comparison::Certified,
        Outcome::from_bool(left.hi() <= right.lo()),
    ));

    let ok = SMALL_PIECES.iter().all(|&(lo, hi, q)| piece_holds(lo, hi, q));
    let computed: Vec<String> = SMALL_PIECES.iter().map(|(lo, hi, q)| format!("{q} on [{lo}, {hi}]")).collect();
    r.push(Check::new(
        "rh-step.small",
        "x in [1, 4)",
        "a prime in [x, x + 3x^(2/3)] for every x",
        computed.join(", "),
        Comparison::Exact,
        Outcome::from_bool(ok),
    ));
    Ok(r)
}
