//! MPFR-backed intervals with directed rounding, used when an `f64` interval
//! is too wide to decide a sign.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Round;
use rug::{Float, Rational};

use super::{Enclosure, Interval, Real};
use crate::error::{Error, Result};

/// `[lo, hi]` with `PREC`-bit endpoints.
#[derive(Clone)]
pub struct BigInterval<const PREC: u32> {
    lo: Float,
    hi: Float,
}

/// Roughly 38 significant digits.
pub type Escalated128 = BigInterval<128>;
/// Roughly 100 significant digits.
pub type Escalated340 = BigInterval<340>;

impl<const PREC: u32> BigInterval<PREC> {
    fn pair(lo: Float, hi: Float) -> Self {
        BigInterval { lo, hi }
    }

    fn entire() -> Self {
        Self::pair(
            Float::with_val(PREC, rug::float::Special::NegInfinity),
            Float::with_val(PREC, rug::float::Special::Infinity),
        )
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    fn has_nan(&self) -> bool {
        self.lo.is_nan() || self.hi.is_nan()
    }

    fn sanitize(self) -> Self {
        if self.has_nan() {
            Self::entire()
        } else {
            self
        }
    }
}

impl<const PREC: u32> fmt::Debug for BigInterval<PREC> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.30e}, {:.30e}]", self.lo, self.hi)
    }
}

macro_rules! rounded {
    ($expr:expr, $rnd:expr) => {
        Float::with_val_round(PREC, $expr, $rnd).0
    };
}

impl<const PREC: u32> Add for BigInterval<PREC> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::pair(
            rounded!(&self.lo + &rhs.lo, Round::Down),
            rounded!(&self.hi + &rhs.hi, Round::Up),
        )
        .sanitize()
    }
}

impl<const PREC: u32> Sub for BigInterval<PREC> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::pair(
            rounded!(&self.lo - &rhs.hi, Round::Down),
            rounded!(&self.hi - &rhs.lo, Round::Up),
        )
        .sanitize()
    }
}

impl<const PREC: u32> Neg for BigInterval<PREC> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::pair(-self.hi, -self.lo)
    }
}

fn min_of(v: [Float; 4]) -> Float {
    v.into_iter()
        .reduce(|a, b| if b < a { b } else { a })
        .expect("four candidates")
}

fn max_of(v: [Float; 4]) -> Float {
    v.into_iter()
        .reduce(|a, b| if b > a { b } else { a })
        .expect("four candidates")
}

fn mul_round(a: &Float, b: &Float, prec: u32, rnd: Round) -> Float {
    if a.is_zero() || b.is_zero() {
        Float::new(prec)
    } else {
        Float::with_val_round(prec, a * b, rnd).0
    }
}

impl<const PREC: u32> Mul for BigInterval<PREC> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self, &rhs);
        let lo = min_of([
            mul_round(&a.lo, &b.lo, PREC, Round::Down),
            mul_round(&a.lo, &b.hi, PREC, Round::Down),
            mul_round(&a.hi, &b.lo, PREC, Round::Down),
            mul_round(&a.hi, &b.hi, PREC, Round::Down),
        ]);
        let hi = max_of([
            mul_round(&a.lo, &b.lo, PREC, Round::Up),
            mul_round(&a.lo, &b.hi, PREC, Round::Up),
            mul_round(&a.hi, &b.lo, PREC, Round::Up),
            mul_round(&a.hi, &b.hi, PREC, Round::Up),
        ]);
        Self::pair(lo, hi).sanitize()
    }
}

impl<const PREC: u32> Div for BigInterval<PREC> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        if rhs.contains_zero() || self.has_nan() || rhs.has_nan() {
            return Self::entire();
        }
        let (a, b) = (&self, &rhs);
        let lo = min_of([
            rounded!(&a.lo / &b.lo, Round::Down),
            rounded!(&a.lo / &b.hi, Round::Down),
            rounded!(&a.hi / &b.lo, Round::Down),
            rounded!(&a.hi / &b.hi, Round::Down),
        ]);
        let hi = max_of([
            rounded!(&a.lo / &b.lo, Round::Up),
            rounded!(&a.lo / &b.hi, Round::Up),
            rounded!(&a.hi / &b.lo, Round::Up),
            rounded!(&a.hi / &b.hi, Round::Up),
        ]);
        Self::pair(lo, hi).sanitize()
    }
}

impl<const PREC: u32> Real for BigInterval<PREC> {
    fn int(v: i64) -> Self {
        Self::pair(rounded!(v, Round::Down), rounded!(v, Round::Up))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::big_ratio(num as i128, den as i128)
    }

    fn big_ratio(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let q = Rational::from((num, den));
        Self::pair(rounded!(&q, Round::Down), rounded!(&q, Round::Up))
    }

    fn from_u64(v: u64) -> Self {
        Self::pair(rounded!(v, Round::Down), rounded!(v, Round::Up))
    }

    fn from_interval(iv: Interval) -> Self {
        Self::pair(Float::with_val(PREC, iv.lo), Float::with_val(PREC, iv.hi))
    }

    fn exp(&self) -> Self {
        Self::pair(
            rounded!(self.lo.exp_ref(), Round::Down),
            rounded!(self.hi.exp_ref(), Round::Up),
        )
        .sanitize()
    }

    fn ln(&self) -> Result<Self> {
        if self.lo.cmp0() != Some(Ordering::Greater) {
            return Err(Error::domain(format!("log of {self:?}")));
        }
        Ok(Self::pair(
            rounded!(self.lo.ln_ref(), Round::Down),
            rounded!(self.hi.ln_ref(), Round::Up),
        ))
    }

    fn sqr(&self) -> Self {
        if self.lo >= 0 {
            Self::pair(
                rounded!(self.lo.square_ref(), Round::Down),
                rounded!(self.hi.square_ref(), Round::Up),
            )
        } else if self.hi <= 0 {
            Self::pair(
                rounded!(self.hi.square_ref(), Round::Down),
                rounded!(self.lo.square_ref(), Round::Up),
            )
        } else {
            let m = if self.lo.clone().abs() > self.hi { &self.lo } else { &self.hi };
            Self::pair(Float::new(PREC), rounded!(m.square_ref(), Round::Up))
        }
    }
}

impl<const PREC: u32> Enclosure for BigInterval<PREC> {
    fn lower(&self) -> f64 {
        self.lo.to_f64_round(Round::Down)
    }

    fn upper(&self) -> f64 {
        self.hi.to_f64_round(Round::Up)
    }
}
