//! Exact arithmetic for Mills-type prime-representing constants.
//!
//! The crate builds minimal prime chains for an exponent sequence (C_k),
//! certifies decimal digits of the limiting constant, checks the admissibility
//! profiles of such sequences, enumerates cubic Pisot numbers and reproduces a
//! fixed catalogue of numeric claims as a verification report.

pub mod chain;
pub mod error;
pub mod exactnum;
pub mod pisot;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};
