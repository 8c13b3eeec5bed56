//! Outward-rounded `f64` intervals.
//!
//! Every arithmetic result is computed in round-to-nearest and then pushed one
//! ulp outward with `next_down`/`next_up`, which is enough to keep the exact
//! result inside because the nearest-rounded value is within half an ulp.
//! `exp` and `ln` come from the platform libm (faithful, < 1 ulp) and are
//! widened by two ulps on each side.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Real;
use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` known to contain some real value.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

const EXACT_INT_LIMIT: u64 = 1 << 53;

#[inline]
pub(crate) fn down(x: f64) -> f64 {
    if x.is_nan() {
        f64::NEG_INFINITY
    } else {
        x.next_down()
    }
}

#[inline]
pub(crate) fn up(x: f64) -> f64 {
    if x.is_nan() {
        f64::INFINITY
    } else {
        x.next_up()
    }
}

#[inline]
fn down2(x: f64) -> f64 {
    down(down(x))
}

#[inline]
fn up2(x: f64) -> f64 {
    up(up(x))
}

/// Product with the interval convention `0 * inf = 0`.
#[inline]
fn mul0(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        a * b
    }
}

impl Interval {
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };

    /// Builds `[lo, hi]`; panics on inverted or NaN bounds.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// The degenerate interval holding exactly `x`.
    pub fn point(x: f64) -> Self {
        assert!(!x.is_nan());
        Interval { lo: x, hi: x }
    }

    /// Smallest interval with `f64` endpoints enclosing `num / den`.
    pub fn from_ratio_i128(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let n = Self::from_i128(num);
        let d = Self::from_i128(den);
        if n.is_point() && d.is_point() {
            let q = n.lo / d.lo;
            if q.is_finite() && is_exact_quotient(n.lo, d.lo, q) {
                return Interval::point(q);
            }
            return Interval {
                lo: down(q),
                hi: up(q),
            };
        }
        n / d
    }

    fn from_i128(v: i128) -> Self {
        if v.unsigned_abs() <= EXACT_INT_LIMIT as u128 {
            Interval::point(v as f64)
        } else {
            let f = v as f64;
            Interval {
                lo: down(f),
                hi: up(f),
            }
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> f64 {
        up(self.hi - self.lo)
    }

    pub fn mid(&self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Hull of two intervals.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Intersection, or `None` when disjoint.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Width relative to the largest magnitude; `0` for a point.
    pub fn rel_width(&self) -> f64 {
        let m = self.mag();
        if m == 0.0 {
            0.0
        } else {
            (self.hi - self.lo) / m
        }
    }

    pub fn sqrt(&self) -> Result<Interval> {
        if self.lo < 0.0 {
            return Err(Error::domain(format!("sqrt of {self:?}")));
        }
        Ok(Interval {
            lo: down(self.lo.sqrt()).max(0.0),
            hi: up(self.hi.sqrt()),
        })
    }
}

/// `q = a / b` rounded to nearest is exact iff `q * b == a` holds exactly;
/// checked with a fused multiply-add residual.
fn is_exact_quotient(a: f64, b: f64, q: f64) -> bool {
    q.mul_add(b, -a) == 0.0
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    /// Midpoint to 15 significant digits with the width annotated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.14e} ± {:.1e}", self.mid(), 0.5 * (self.hi - self.lo))
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: down(self.lo + rhs.lo),
            hi: up(self.hi + rhs.hi),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            lo: down(self.lo - rhs.hi),
            hi: up(self.hi - rhs.lo),
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    #[inline]
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, rhs: Interval) -> Interval {
        if self.lo >= 0.0 && rhs.lo >= 0.0 {
            return Interval {
                lo: down(mul0(self.lo, rhs.lo)).max(0.0),
                hi: up(mul0(self.hi, rhs.hi)),
            };
        }
        let p = [
            mul0(self.lo, rhs.lo),
            mul0(self.lo, rhs.hi),
            mul0(self.hi, rhs.lo),
            mul0(self.hi, rhs.hi),
        ];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval {
            lo: down(lo),
            hi: up(hi),
        }
    }
}

impl Div for Interval {
    type Output = Interval;
    #[inline]
    fn div(self, rhs: Interval) -> Interval {
        if rhs.lo <= 0.0 && rhs.hi >= 0.0 {
            return Interval::ENTIRE;
        }
        if self.lo >= 0.0 && rhs.lo > 0.0 {
            return Interval {
                lo: down(self.lo / rhs.hi).max(0.0),
                hi: up(self.hi / rhs.lo),
            };
        }
        if !(self.is_finite() && rhs.is_finite()) {
            return Interval::ENTIRE;
        }
        let q = [
            self.lo / rhs.lo,
            self.lo / rhs.hi,
            self.hi / rhs.lo,
            self.hi / rhs.hi,
        ];
        let lo = q.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval {
            lo: down(lo),
            hi: up(hi),
        }
    }
}

impl Real for Interval {
    #[inline]
    fn int(v: i64) -> Self {
        Interval::from_i128(v as i128)
    }

    #[inline]
    fn ratio(num: i64, den: i64) -> Self {
        Interval::from_ratio_i128(num as i128, den as i128)
    }

    fn big_ratio(num: i128, den: i128) -> Self {
        Interval::from_ratio_i128(num, den)
    }

    #[inline]
    fn from_u64(v: u64) -> Self {
        Interval::from_i128(v as i128)
    }

    fn from_interval(iv: Interval) -> Self {
        iv
    }

    #[inline]
    fn exp(&self) -> Self {
        let lo = if self.lo == f64::NEG_INFINITY {
            0.0
        } else if self.lo == 0.0 {
            1.0
        } else {
            down2(self.lo.exp()).max(0.0)
        };
        let hi = if self.hi == 0.0 { 1.0 } else { up2(self.hi.exp()) };
        Interval { lo, hi }
    }

    fn ln(&self) -> Result<Self> {
        if !(self.lo > 0.0) {
            return Err(Error::domain(format!("log of {self:?}")));
        }
        let lo = if self.lo == 1.0 { 0.0 } else { down2(self.lo.ln()) };
        let hi = if self.hi == 1.0 { 0.0 } else { up2(self.hi.ln()) };
        Ok(Interval { lo, hi })
    }

    #[inline]
    fn sqr(&self) -> Self {
        if self.lo >= 0.0 {
            Interval {
                lo: down(self.lo * self.lo).max(0.0),
                hi: up(self.hi * self.hi),
            }
        } else if self.hi <= 0.0 {
            Interval {
                lo: down(self.hi * self.hi).max(0.0),
                hi: up(self.lo * self.lo),
            }
        } else {
            let m = self.mag();
            Interval {
                lo: 0.0,
                hi: up(m * m),
            }
        }
    }
}
