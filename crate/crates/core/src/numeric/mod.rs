//! Enclosure arithmetic shared by every formula in the crate.
//!
//! Formulas are written once, generically over [`Real`], and evaluated with
//! `f64` intervals on the hot path, with MPFR intervals when a verdict has to
//! be escalated, and with dual numbers when a derivative enclosure is needed.

mod dual;
pub mod hexfloat;
mod interval;
mod precise;
pub mod rational;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub use dual::Dual;
pub use interval::Interval;
pub use precise::{BigInterval, Escalated128, Escalated340};

use crate::error::Result;

/// Arithmetic over some enclosure (or, for oracles, approximation) of the reals.
pub trait Real:
    Clone
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn int(v: i64) -> Self;

    /// `num / den`.
    fn ratio(num: i64, den: i64) -> Self;

    fn big_ratio(num: i128, den: i128) -> Self;

    fn from_u64(v: u64) -> Self;

    /// Lift an already computed `f64` enclosure.
    fn from_interval(iv: Interval) -> Self;

    fn exp(&self) -> Self;

    fn ln(&self) -> Result<Self>;

    fn sqr(&self) -> Self {
        self.clone() * self.clone()
    }

    fn powi(&self, k: u32) -> Self {
        match k {
            0 => Self::int(1),
            1 => self.clone(),
            _ => {
                let half = self.powi(k / 2).sqr();
                if k % 2 == 0 {
                    half
                } else {
                    half * self.clone()
                }
            }
        }
    }

    fn recip(&self) -> Self {
        Self::int(1) / self.clone()
    }
}

/// Enclosures that can be queried for rigorous `f64` bounds.
pub trait Enclosure: Real {
    /// A lower bound of the enclosed value, rounded toward `-inf`.
    fn lower(&self) -> f64;
    /// An upper bound of the enclosed value, rounded toward `+inf`.
    fn upper(&self) -> f64;

    fn to_interval(&self) -> Interval {
        Interval {
            lo: self.lower(),
            hi: self.upper(),
        }
    }
}

impl Enclosure for Interval {
    fn lower(&self) -> f64 {
        self.lo
    }
    fn upper(&self) -> f64 {
        self.hi
    }
}

/// Rational coefficient `num / den` in a static table.
pub type Coef = (i64, i64);

/// Horner evaluation of `c[0] + c[1] x + ... + c[d] x^d`.
pub fn horner<T: Real>(x: &T, ascending: &[Coef]) -> T {
    let mut acc = T::int(0);
    for (i, &(n, d)) in ascending.iter().rev().enumerate() {
        let c = if d == 1 { T::int(n) } else { T::ratio(n, d) };
        acc = if i == 0 { c } else { acc * x.clone() + c };
    }
    acc
}
