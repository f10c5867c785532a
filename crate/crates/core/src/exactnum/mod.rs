//! Exact big-integer and rational-interval kernel.
//!
//! Every comparison involving a real power p^(a/b) is reduced to an integer
//! comparison of q^b against p^a; no floating point enters a decision.

pub mod elementary;
pub mod enclosure;
pub mod factor;
pub mod prime;
pub mod roots;

pub use enclosure::{parse_rational, CertifiedDigits, RealEnclosure};
pub use factor::{euler_phi, factorize, Factorization};
pub use prime::{find_prime_in, is_prime, primality, smallest_prime_in, Certainty};
pub use roots::{ceil_nth_root, compare_powers, compare_rational_power, floor_nth_root, root_enclosure};
