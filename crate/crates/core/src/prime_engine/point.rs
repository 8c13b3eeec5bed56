use serde::{Deserialize, Serialize};

use crate::numeric::{Interval, Real};

/// One sample of the prime sequence with the logarithms every bound uses.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimePoint {
    /// 1-based prime index.
    pub n: u64,
    /// The `n`-th prime.
    pub p: u64,
    /// `log log n`; the whole real line when `n = 1`.
    pub w: Interval,
    /// `log n`.
    pub y: Interval,
    /// `log p`.
    pub z: Interval,
    /// `θ(p) = Σ_{q <= p} log q`.
    pub theta: Interval,
}

impl PrimePoint {
    /// Builds a point from `log p` and `θ(p)` enclosures already at hand.
    #[inline]
    pub fn new(n: u64, p: u64, z: Interval, theta: Interval) -> Self {
        let (y, w) = index_logs(n);
        PrimePoint { n, p, w, y, z, theta }
    }
}

/// `(log n, log log n)` for `n >= 1`.
#[inline]
pub fn index_logs(n: u64) -> (Interval, Interval) {
    assert!(n >= 1, "prime index starts at 1");
    let y = Interval::from_u64(n).ln().expect("log of a positive integer");
    let w = if n == 1 { Interval::ENTIRE } else { y.ln().expect("log n > 0 for n >= 2") };
    (y, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_prime_has_negative_w() {
        let (y, w) = index_logs(2);
        assert!(y.contains(2f64.ln()));
        assert!(w.hi < 0.0 && w.contains(2f64.ln().ln()));
    }

    #[test]
    fn first_index_has_exact_zero_log() {
        let (y, w) = index_logs(1);
        assert_eq!(y, Interval::ZERO);
        assert_eq!(w, Interval::ENTIRE);
    }
}
