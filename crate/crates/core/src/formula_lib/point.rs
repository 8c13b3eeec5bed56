//! Functions of a prime index, written in `w = log log n`, `y = log n`,
//! `z = log p_n`.

use serde::{Deserialize, Serialize};

use super::constants::{ProofConstants, B};
use super::functions::{g0, g1_univariate, u};
use super::polys::{eval_poly, PolyId};
use crate::error::{Error, Result};
use crate::numeric::rational::{lift, Q};
use crate::numeric::{horner, Interval, Real};
use crate::prime_engine::PrimePoint;

/// Enclosures of `n`, `p_n` and their logarithms in some arithmetic.
#[derive(Clone, Debug)]
pub struct Vars<T> {
    pub n: T,
    pub p: T,
    pub w: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Vars<T> {
    /// Computes every logarithm from scratch; `w` is the whole line for
    /// `n = 1`. `p` may be `0` when only index quantities are needed.
    pub fn compute(n: u64, p: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::arg("prime index starts at 1"));
        }
        let nn = T::from_u64(n);
        let y = nn.ln()?;
        let w = if n == 1 {
            T::from_interval(Interval::ENTIRE)
        } else {
            y.ln()?
        };
        let pp = T::from_u64(p);
        let z = if p >= 2 {
            pp.ln()?
        } else {
            T::from_interval(Interval::ENTIRE)
        };
        Ok(Vars { n: nn, p: pp, w, y, z })
    }
}

impl Vars<Interval> {
    #[inline]
    pub fn from_point(pt: &PrimePoint) -> Self {
        Vars {
            n: Interval::from_u64(pt.n),
            p: Interval::from_u64(pt.p),
            w: pt.w,
            y: pt.y,
            z: pt.z,
        }
    }
}

/// `a(n) = c_y·log n + c_2·w^2 + c_1·w + c_0`: the step-dependent
/// parameter of the two `b` functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepParam {
    pub y: Q,
    pub w2: Q,
    pub w1: Q,
    pub c: Q,
}

impl StepParam {
    pub fn constant(c: Q) -> Self {
        let z = Q::from_integer(0);
        StepParam { y: z, w2: z, w1: z, c }
    }

    /// `-w^2 + 6w`.
    pub fn upper_step1() -> Self {
        StepParam {
            y: Q::from_integer(0),
            w2: Q::from_integer(-1),
            w1: Q::from_integer(6),
            c: Q::from_integer(0),
        }
    }

    pub fn upper_step2() -> Self {
        Self::constant(Q::new(10641, 1000))
    }

    /// `0.2 y - w^2 + 6w`.
    pub fn lower_step1() -> Self {
        StepParam { y: Q::new(1, 5), ..Self::upper_step1() }
    }

    pub fn lower_step2() -> Self {
        Self::constant(Q::new(11589, 1000))
    }

    pub fn lower_step3() -> Self {
        Self::constant(Q::new(11512, 1000))
    }

    pub fn eval<T: Real>(&self, v: &Vars<T>) -> T {
        lift::<T>(&self.y) * v.y.clone()
            + (lift::<T>(&self.w2) * v.w.clone() + lift(&self.w1)) * v.w.clone()
            + lift(&self.c)
    }
}

#[inline]
fn c<T: Real>(num: i64, den: i64) -> T {
    T::ratio(num, den)
}

#[inline]
fn k<T: Real>(v: i64) -> T {
    T::int(v)
}

/// `y - 0.87 z`.
pub fn f0<T: Real>(v: &Vars<T>) -> T {
    v.y.clone() - c::<T>(87, 100) * v.z.clone()
}

pub fn f1<T: Real>(v: &Vars<T>) -> T {
    let (w, y, z) = (&v.w, &v.y, &v.z);
    let y2 = y.sqr();
    let y3 = y2.clone() * y.clone();
    let y4 = y2.sqr();
    let z2 = z.sqr();
    let p1 = eval_poly(PolyId::P1, w);
    let p2 = eval_poly(PolyId::P2, w);
    let q = horner(w, &[(1415, 100), (-385, 100), (1, 1)]);
    let y4z = y4.clone() * z.clone();
    c::<T>(15532, 100) / z.powi(5)
        + q * u(w) / y4z.clone()
        + c::<T>(285, 100) * p1.clone() / (k::<T>(2) * y3 * z2.clone())
        + c::<T>(285, 100) * p1 / (k::<T>(2) * y4z.clone())
        + (c::<T>(1315, 100) * u(w) - c::<T>(707, 10) * w.clone()) / (y2 * z2)
            * (y.recip() + z.recip())
        - p2 / (k::<T>(6) * y4z)
}

/// The ten auxiliary functions `H_1..H_10` (index 1-based).
pub fn h<T: Real>(i: u8, v: &Vars<T>) -> T {
    assert!((1..=10).contains(&i), "no function H{i}");
    let (w, y, z) = (&v.w, &v.y, &v.z);
    let (bn, bd) = B[i as usize - 1];
    let bw = T::ratio(bn, bd) * w.clone();
    let y2 = y.sqr();
    let y3 = y2.clone() * y.clone();
    let y4 = y2.sqr();
    let z2 = z.sqr();
    let z3 = z2.clone() * z.clone();
    let uw = u(w);
    let p8 = || eval_poly(PolyId::P8, w);
    let p9 = || eval_poly(PolyId::P9, w);
    let two = || k::<T>(2);
    match i {
        1 => {
            let y5 = y4.clone() * y.clone();
            bw / (y3 * z.clone()) - eval_poly(PolyId::Q7, w) / (two() * y5.clone() * z.clone())
                + eval_poly(PolyId::Q8, w) / (two() * y5.clone() * z2)
                + eval_poly(PolyId::Q9, w) / (k::<T>(4) * y5 * y.clone() * z.clone())
                + c::<T>(1285, 100) * p9() / (two() * y4 * z3)
        }
        2 => {
            bw / (y3 * z.clone()) + c::<T>(1285, 100) * w.clone() / (y2 * z2.clone())
                - c::<T>(713, 10) / z2.sqr()
        }
        3 => {
            bw / (y3.clone() * z.clone()) - c::<T>(315, 100) * p8() / (two() * y3.clone() * z2.clone())
                - c::<T>(1285, 100) * uw / (y3 * z2)
        }
        4 => {
            bw / (y3 * z.clone())
                + (c::<T>(315, 100) * p9() - c::<T>(1285, 100) * p8()) / (two() * y4 * z2)
        }
        5 => {
            let y4z = y4 * z.clone();
            bw / (y3 * z.clone()) + (p9() - c::<T>(315, 100) * p8()) / (two() * y4z.clone())
                - c::<T>(1285, 100) * uw.clone() / y4z.clone()
                - uw.sqr() / y4z
        }
        6 => {
            let s1: T = lift(&ProofConstants::new().s1);
            bw / (y2.clone() * z.clone()) + s1 * w.clone() / (y3 * z.clone())
                - c::<T>(315, 100) * uw / (y2 * z2)
        }
        7 => bw / (y2 * z.clone()) - c::<T>(1285, 100) * p8() / (two() * y3 * z3),
        8 => bw / (y2.clone() * z.clone()) - c::<T>(1285, 100) * uw / (y2 * z3),
        9 => bw / (y2 * z.clone()) - c::<T>(4_632_275, 10_000) / (z2.sqr() * z.clone()),
        _ => bw / (y2 * z.clone()) - k::<T>(4585) / z3.sqr(),
    }
}

/// The correction term in the upper-bound proof, for the given `a_0`.
pub fn b0<T: Real>(v: &Vars<T>, a0: &StepParam) -> T {
    let cst = ProofConstants::new();
    let a0c: T = lift(&cst.a0);
    let (w, y) = (&v.w, &v.y);
    let a = a0.eval(v);
    let y2 = y.sqr();
    let y3 = y2.clone() * y.clone();
    let y4 = y2.sqr();
    let paren = k::<T>(1) - (w.clone() - k(1)) / y.clone() - (w.clone() - k(2)) / y2.clone()
        + (horner(w, &[(0, 1), (-12, 1), (2, 1)]) + a.clone()) / (k::<T>(4) * y3.clone());
    let quad = (c::<T>(57, 10) * a0c.clone() + c(87, 10)) * w.sqr()
        - (k::<T>(32) * a0c.clone() + k(38)) * w.clone()
        + c::<T>(1471, 10) * a0c.clone()
        + c(107, 10);
    let a03 = a0c.powi(3);
    c::<T>(107, 10)
        + k::<T>(2) * lift::<T>(&cst.a2) / y3.clone()
        + k::<T>(2) * lift::<T>(&cst.a3) / y4.clone()
        + a / y.clone() * paren
        - k::<T>(2) * g0(w) * y2.clone()
        + a0c.clone() * quad / y2
        + c::<T>(1414, 10) * a03.clone() * (k::<T>(1) + a0c) * u(w) / y4
}

/// The correction term in the lower-bound proof, for the given `a_1`.
pub fn b1<T: Real>(v: &Vars<T>, a1: &StepParam) -> T {
    let cst = ProofConstants::new();
    let (w, y) = (&v.w, &v.y);
    c::<T>(113, 10) - k::<T>(2) * g1_univariate(w) * y.sqr() + a1.eval(v) / y.clone()
        - k::<T>(2) * lift::<T>(&cst.a0) * lift::<T>(&cst.s2) * w.clone() / y.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(n: u64, p: u64) -> Vars<Interval> {
        Vars::compute(n, p).unwrap()
    }

    #[test]
    fn h6_changes_sign_between_four_and_five() {
        assert!(h(6, &vars(4, 7)).hi < 0.0);
        assert!(h(6, &vars(5, 11)).lo >= 0.0);
    }

    #[test]
    fn step_parameters() {
        let v = vars(100, 541);
        let a = StepParam::lower_step1().eval(&v);
        let want = 0.2 * 100f64.ln() - 100f64.ln().ln().powi(2) + 6.0 * 100f64.ln().ln();
        assert!((a.mid() - want).abs() < 1e-12);
        assert!(StepParam::upper_step2().eval(&v).contains(10.641));
    }

    #[test]
    fn from_point_matches_compute() {
        let pt = PrimePoint::new(25, 97, Interval::from_u64(97).ln().unwrap(), Interval::ENTIRE);
        let a = Vars::from_point(&pt);
        let b = vars(25, 97);
        assert_eq!(a.y, b.y);
        assert_eq!(a.z, b.z);
        assert_eq!(a.w, b.w);
    }
}
