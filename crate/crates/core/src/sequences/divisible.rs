//! Indices k with C_m | C_k for C_k = r·3^k − 1.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::Family;
use crate::error::{Error, Result};
use crate::exactnum::factor::euler_phi;

/// k = m·φ(C_m) + m, returned only after checking C_m | C_k exactly.
///
/// C_k − C_m = r·3^m·(3^{k−m} − 1) and gcd(3r, C_m) = 1, so Euler's theorem
/// makes k − m = m·φ(C_m) suffice.
pub fn divisible_index(r: &BigUint, m: usize) -> Result<u64> {
    if r.is_zero() || m == 0 {
        return Err(Error::arg("r and m must be positive"));
    }
    let family = Family::ShiftedGeometric { r: r.clone(), s: 3u32.into(), t: (-1).into() };
    let c_m = family.term(m)?;
    let phi = euler_phi(&c_m)?;
    let k_big = BigUint::from(m) * &phi + BigUint::from(m);
    let k = k_big
        .to_u64()
        .ok_or_else(|| Error::Resource(format!("index {k_big} too large")))?;
    let residue = family.term_mod(k as usize, &c_m)?;
    if !residue.is_zero() {
        return Err(Error::Internal(format!("C_{m} does not divide C_{k}")));
    }
    debug_assert!(c_m.gcd(r).to_u64() == Some(1));
    Ok(k)
}
