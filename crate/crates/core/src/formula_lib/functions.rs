//! Univariate and bivariate auxiliary functions, generic over [`Real`].

use super::polys::{eval_poly, PolyId};
use crate::error::Result;
use crate::numeric::{horner, Coef, Real};

#[inline]
fn c<T: Real>(num: i64, den: i64) -> T {
    T::ratio(num, den)
}

#[inline]
fn k<T: Real>(v: i64) -> T {
    T::int(v)
}

/// `e^{m x}`.
#[inline]
fn em<T: Real>(x: &T, m: i64) -> T {
    (x.clone() * k(m)).exp()
}

#[inline]
fn poly<T: Real>(x: &T, ascending: &[Coef]) -> T {
    horner(x, ascending)
}

/// `x^2 - x + 1`.
#[inline]
pub(crate) fn u<T: Real>(x: &T) -> T {
    poly(x, &[(1, 1), (-1, 1), (1, 1)])
}

/// `Φ(x) = e^x + x + log(1 + (x-1)/e^x + (x-2.1)/e^{2x})`.
pub fn phi<T: Real>(x: &T) -> Result<T> {
    let inner = k::<T>(1)
        + (x.clone() - k(1)) * em(x, -1)
        + (x.clone() - c(21, 10)) * em(x, -2);
    Ok(x.exp() + x.clone() + inner.ln()?)
}

pub fn g0<T: Real>(x: &T) -> T {
    let a = poly(x, &[(-989, 10), (822, 10), (-21, 1), (2, 1)]) * em(x, -3) / k(6);
    let b = poly(x, &[(17, 1), (-1006, 10), (534, 10), (-14, 1), (1, 1)]) * em(x, -4) / k(4);
    let d = poly(x, &[(-42, 1), (150, 1), (-110, 1), (35, 1), (-10, 1), (2, 1)]) * em(x, -5)
        / k(10);
    let e = poly(x, &[(64, 1), (-96, 1), (156, 1), (-44, 1), (3, 1)]) * em(x, -6) / k(24);
    a - b + d - e
}

pub fn g1_univariate<T: Real>(x: &T) -> T {
    let e1 = em(x, -1);
    let e2 = em(x, -2);
    let e3 = em(x, -3);
    let e4 = em(x, -4);
    let e5 = em(x, -5);
    let uu = u(x);
    let p12 = eval_poly(PolyId::P12, x);
    let s = (x.clone() - k(1)) * e1 + (x.clone() - k(2)) * e2.clone();
    let s2 = s.sqr();
    let series = s2.clone() / k(2) - s2.clone() * s / k(3) + s2.sqr() / k(4);
    poly(x, &[(-14, 1), (42, 1), (-15, 1), (2, 1)]) * e3.clone() / k(6)
        + c::<T>(315, 100) * x.clone() * e3.clone()
        - c::<T>(1285, 100) * e3.clone()
        - uu.clone() * e3.clone()
        + uu * x.clone() * e4.clone()
        - p12.clone() * e4.clone() / k(2)
        + c::<T>(1285, 100) * x.clone() * e4
        + p12 * x.clone() * e5 / k(2)
        + (x.clone() - k(1)).sqr() * e2 / k(2)
        - poly(x, &[(-7, 1), (12, 1), (-6, 1), (1, 1)]) * e3 / k(3)
        - series
        + (x.clone() - k(2)).powi(4) * em(x, -8) / k(4)
}

pub fn w1<T: Real>(x: &T) -> T {
    c::<T>(354, 100) * x.exp() - k::<T>(20) * poly(x, &[(-989, 10), (642, 10), (-18, 1), (2, 1)])
}

/// Left side minus right side of the polynomial inequality needed for the
/// reciprocal-log upper estimate, valid for `x >= 2.11`.
pub fn lemma21<T: Real>(x: &T) -> T {
    let q = poly(x, &[(1415, 100), (-385, 100), (1, 1)]);
    let p1 = eval_poly(PolyId::P1, x);
    let p2 = eval_poly(PolyId::P2, x);
    let p3 = eval_poly(PolyId::P3, x);
    let p4 = eval_poly(PolyId::P4, x);
    let e = em(x, -1);
    q.clone() * p1 / k(2) - c::<T>(285, 100) * p2.clone() / k(3) + p3 / k(12)
        - q * p2 * e.clone() / k(6)
        - p4 * e / k(20)
}

/// The helper functions `f_1..f_10` (index 1-based).
pub fn f<T: Real>(i: u8, x: &T) -> Result<T> {
    let xe = x.clone() * x.exp();
    Ok(match i {
        1 => {
            c::<T>(108, 100) * x.clone() * em(x, 3)
                - k::<T>(2) * eval_poly(PolyId::Q7, x) * x.exp()
                + c::<T>(174, 100) * eval_poly(PolyId::Q8, x)
                + eval_poly(PolyId::Q9, x)
                + c::<T>(1_945_233, 100_000) * eval_poly(PolyId::P9, x)
        }
        2 => {
            let ph = phi(x)?;
            let ph2 = ph.sqr();
            c::<T>(423, 100) * x.clone() * ph2.clone() * ph + c::<T>(1285, 100) * xe * ph2
                - c::<T>(713, 10) * em(x, 3)
        }
        3 => c::<T>(315, 100) * x.clone() * phi(x)? + poly(x, &[(-4208, 100), (446, 10), (-3515, 100)]),
        4 => {
            c::<T>(116, 1000) * xe * phi(x)?
                + poly(x, &[(-8005, 100), (11301, 100), (-5745, 100), (315, 100)])
        }
        5 => {
            c::<T>(448, 100) * xe
                + poly(x, &[(-319, 10), (411, 10), (-377, 10), (5, 1), (-2, 1)])
        }
        6 => r(x, x)?,
        7 => {
            c::<T>(52, 10_000) * xe * phi(x)?.sqr()
                + poly(x, &[(-6682, 100), (771, 10), (-3855, 100)])
        }
        8 => c::<T>(52, 1000) * x.clone() * phi(x)?.sqr() - c::<T>(1285, 100) * u(x),
        9 => c::<T>(1955, 10_000) * x.clone() * phi(x)?.powi(4) - c::<T>(4_632_275, 10_000) * em(x, 2),
        10 => c::<T>(8, 100) * x.clone() * phi(x)?.powi(5) - k::<T>(4585) * em(x, 2),
        _ => panic!("no helper function f{i}"),
    })
}

/// First grid function for the upper bound.
pub fn g1<T: Real>(x: &T, t: &T) -> T {
    c::<T>(354, 100) * em(x, 4)
        + k::<T>(20) * poly(x, &[(989, 10), (0, 1), (18, 1)]) * em(x, 3)
        - k::<T>(20) * poly(t, &[(0, 1), (642, 10), (0, 1), (2, 1)]) * em(t, 3)
        + k::<T>(30) * poly(x, &[(25829, 100), (0, 1), (6316, 100), (0, 1), (1, 1)]) * em(x, 2)
        - k::<T>(30) * poly(t, &[(0, 1), (20317, 100), (0, 1), (12, 1)]) * em(t, 2)
        + k::<T>(12) * poly(x, &[(155_424, 100), (0, 1), (70, 1), (0, 1), (10, 1)]) * x.exp()
        - k::<T>(12) * poly(t, &[(0, 1), (90, 1), (0, 1), (30, 1), (0, 1), (2, 1)]) * t.exp()
        + k::<T>(5) * poly(x, &[(3_783_625, 100), (0, 1), (213_744, 100)])
        - k::<T>(5) * poly(t, &[(0, 1), (218_545, 100), (0, 1), (8, 1)])
}

/// Second grid function for the upper bound.
pub fn h1<T: Real>(x: &T, t: &T) -> T {
    c::<T>(198, 100) * em(x, 4)
        + k::<T>(20) * poly(x, &[(130_823, 1000), (0, 1), (21, 1)]) * em(x, 3)
        - k::<T>(20) * poly(t, &[(0, 1), (822, 10), (0, 1), (2, 1)]) * em(t, 3)
        + k::<T>(30) * poly(x, &[(27957, 100), (0, 1), (7716, 100), (0, 1), (1, 1)]) * em(x, 2)
        - k::<T>(30) * poly(t, &[(0, 1), (23645, 100), (0, 1), (14, 1)]) * em(t, 2)
        + k::<T>(12) * poly(x, &[(166_065, 100), (0, 1), (110, 1), (0, 1), (10, 1)]) * x.exp()
        - k::<T>(12) * poly(t, &[(0, 1), (203_205, 1000), (0, 1), (35, 1), (0, 1), (2, 1)]) * t.exp()
        + k::<T>(5) * poly(x, &[(38_175_947, 1000), (0, 1), (230_928, 100), (0, 1), (3, 1)])
        - k::<T>(5) * poly(t, &[(0, 1), (256_852, 100), (0, 1), (44, 1)])
}

/// Shared shape of the three lower-bound grid functions: leading
/// coefficient `lead`, linear coefficient `lin` of the `e^{4x}` group and
/// the `t`-side `e^{4t}` polynomial.
fn lower_grid<T: Real>(x: &T, t: &T, lead: Coef, lin: Coef, e4t: &[Coef]) -> T {
    T::ratio(lead.0, lead.1) * em(x, 5)
        + k::<T>(2) * poly(x, &[(0, 1), lin, (0, 1), (2, 1)]) * em(x, 4)
        - k::<T>(2) * poly(t, e4t) * em(t, 4)
        + k::<T>(3) * poly(x, &[(0, 1), (112, 1), (0, 1), (12, 1)]) * em(x, 3)
        - k::<T>(3) * poly(t, &[(40, 1), (0, 1), (466, 10), (0, 1), (1, 1)]) * em(t, 3)
        + k::<T>(6) * poly(x, &[(0, 1), (415, 10), (0, 1), (213, 10)]) * em(x, 2)
        - k::<T>(6) * poly(t, &[(12, 1), (0, 1), (403, 10), (0, 1), (2, 1)]) * em(t, 2)
        + k::<T>(2) * poly(x, &[(0, 1), (132, 1), (0, 1), (56, 1)]) * x.exp()
        - k::<T>(2) * poly(t, &[(52, 1), (0, 1), (129, 1), (0, 1), (9, 1)]) * t.exp()
        + k::<T>(6) * poly(x, &[(0, 1), (40, 1), (0, 1), (14, 1)])
        - k::<T>(6) * poly(t, &[(16, 1), (0, 1), (36, 1), (0, 1), (2, 1)])
}

pub fn alpha<T: Real>(x: &T, t: &T) -> T {
    lower_grid(x, t, (534, 1000), (63_071_778, 1_000_000), &[(971, 10), (0, 1), (18, 1)])
}

pub fn beta<T: Real>(x: &T, t: &T) -> T {
    lower_grid(x, t, (1272, 1000), (81_071_778, 1_000_000), &[(131_867, 1000), (0, 1), (21, 1)])
}

pub fn gamma<T: Real>(x: &T, t: &T) -> T {
    lower_grid(x, t, (1248, 1000), (81_071_778, 1_000_000), &[(131_636, 1000), (0, 1), (21, 1)])
}

/// `(0.105 e^x + 4.477) x Φ(x) + 3.15 x e^x - 3.15 (t^2 + 1) e^t`.
pub fn r<T: Real>(x: &T, t: &T) -> Result<T> {
    Ok((c::<T>(105, 1000) * x.exp() + c(4477, 1000)) * x.clone() * phi(x)?
        + c::<T>(315, 100) * x.clone() * x.exp()
        - c::<T>(315, 100) * (t.sqr() + k(1)) * t.exp())
}
