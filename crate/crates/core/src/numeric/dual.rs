use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Interval, Real};
use crate::error::Result;

/// Forward-mode dual number `v + d ε`, used to enclose first derivatives.
#[derive(Clone, Debug)]
pub struct Dual<T> {
    pub v: T,
    pub d: T,
}

impl<T: Real> Dual<T> {
    /// The independent variable at `x`.
    pub fn var(x: T) -> Self {
        Dual { v: x, d: T::int(1) }
    }

    pub fn constant(x: T) -> Self {
        Dual { v: x, d: T::int(0) }
    }
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual {
            v: self.v + rhs.v,
            d: self.d + rhs.d,
        }
    }
}

impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual {
            v: self.v - rhs.v,
            d: self.d - rhs.d,
        }
    }
}

impl<T: Real> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual {
            v: -self.v,
            d: -self.d,
        }
    }
}

impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Dual {
            d: self.d * rhs.v.clone() + self.v.clone() * rhs.d,
            v: self.v * rhs.v,
        }
    }
}

impl<T: Real> Div for Dual<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q = self.v / rhs.v.clone();
        Dual {
            d: (self.d - q.clone() * rhs.d) / rhs.v,
            v: q,
        }
    }
}

impl<T: Real> Real for Dual<T> {
    fn int(v: i64) -> Self {
        Dual::constant(T::int(v))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Dual::constant(T::ratio(num, den))
    }

    fn big_ratio(num: i128, den: i128) -> Self {
        Dual::constant(T::big_ratio(num, den))
    }

    fn from_u64(v: u64) -> Self {
        Dual::constant(T::from_u64(v))
    }

    fn from_interval(iv: Interval) -> Self {
        Dual::constant(T::from_interval(iv))
    }

    fn exp(&self) -> Self {
        let e = self.v.exp();
        Dual {
            d: e.clone() * self.d.clone(),
            v: e,
        }
    }

    fn ln(&self) -> Result<Self> {
        Ok(Dual {
            v: self.v.ln()?,
            d: self.d.clone() / self.v.clone(),
        })
    }

    fn sqr(&self) -> Self {
        Dual {
            v: self.v.sqr(),
            d: T::int(2) * self.v.clone() * self.d.clone(),
        }
    }
}
