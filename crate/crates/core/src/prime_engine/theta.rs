//! Running enclosure of θ(x) = Σ log p.
//!
//! Each term's enclosure `[lo_p, hi_p]` of `log p` has `f64` endpoints in
//! `[log 2, 44)`, so every endpoint is an integer multiple of `2^-53`. The
//! endpoints are summed exactly as `i128` integers at that scale. The sum
//! therefore does not depend on summation order, which is what makes results
//! identical across chunkings and worker counts; the only widening happens
//! once, when the exact sums are rounded outward to `f64`.

use serde::{Deserialize, Serialize};

use crate::numeric::Interval;

const SCALE_BITS: i32 = 53;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaAccumulator {
    #[serde(with = "i128_string")]
    lo: i128,
    #[serde(with = "i128_string")]
    hi: i128,
    count: u64,
}

/// `x * 2^53` as an exact integer; `x` must be a finite multiple of `2^-53`.
#[inline]
fn to_fixed(x: f64) -> i128 {
    let v = x * (1u64 << SCALE_BITS) as f64;
    debug_assert!(v.fract() == 0.0 && v.is_finite(), "{x} is not on the 2^-53 grid");
    v as i128
}

/// `v * 2^-53` rounded toward `-inf` (`up == false`) or `+inf`.
fn from_fixed(v: i128, up: bool) -> f64 {
    let mut f = v as f64;
    let back = f as i128;
    if up && back < v {
        f = f.next_up();
    } else if !up && back > v {
        f = f.next_down();
    }
    // scaling by a power of two is exact in the normal range
    f / (1u64 << SCALE_BITS) as f64
}

impl ThetaAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one term given as an enclosure of `log p` with `lo >= 0.5`.
    #[inline]
    pub fn add_log(&mut self, term: Interval) {
        self.lo += to_fixed(term.lo);
        self.hi += to_fixed(term.hi);
        self.count += 1;
    }

    /// Adds `log p` for the prime `p`, returning the term's enclosure.
    #[inline]
    pub fn add_prime(&mut self, p: u64) -> Interval {
        let term = log_enclosure(p);
        self.add_log(term);
        term
    }

    pub fn merge(&mut self, other: &ThetaAccumulator) {
        self.lo += other.lo;
        self.hi += other.hi;
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Midpoint of the enclosure.
    pub fn sum(&self) -> f64 {
        self.interval().mid()
    }

    /// Half-width of the enclosure: the accumulated worst-case error.
    pub fn err_budget(&self) -> f64 {
        let iv = self.interval();
        (0.5 * (iv.hi - iv.lo)).next_up()
    }

    pub fn interval(&self) -> Interval {
        Interval {
            lo: from_fixed(self.lo, false),
            hi: from_fixed(self.hi, true),
        }
    }
}

/// Enclosure of `log p` for `p >= 2`.
#[inline]
pub fn log_enclosure(p: u64) -> Interval {
    use crate::numeric::Real;
    debug_assert!(p >= 2);
    Interval::from_u64(p)
        .ln()
        .expect("logarithm of an integer >= 2")
}

mod i128_string {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &i128, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<i128, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}
