//! Explicit bounds for the n-th prime, checked against a segmented sieve and
//! certified on grids with outward-rounded interval arithmetic.

pub mod error;
pub mod numeric;

pub use error::{Error, Result};
pub use numeric::{Enclosure, Interval, Real};
pub mod bound_catalog;
pub mod formula_lib;
pub mod grid_verifier;
pub mod prime_engine;
pub mod range_verifier;
pub mod selftest;
