//! Reference implementations that share no code with the library: a plain
//! (unsegmented) sieve, trial division, and 256-bit floats from astro-float.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode};
use primebound::{Interval, Real};

pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Whole-range sieve over all integers below `limit`, one bit each.
pub struct PlainSieve {
    composite: Vec<u64>,
    limit: u64,
}

impl PlainSieve {
    pub fn new(limit: u64) -> Self {
        let words = (limit as usize).div_ceil(64).max(1);
        let mut composite = vec![0u64; words];
        let set = |v: &mut Vec<u64>, i: u64| v[(i / 64) as usize] |= 1 << (i % 64);
        set(&mut composite, 0);
        if limit > 1 {
            set(&mut composite, 1);
        }
        let mut i = 2u64;
        while i * i < limit {
            if composite[(i / 64) as usize] >> (i % 64) & 1 == 0 {
                let mut j = i * i;
                while j < limit {
                    set(&mut composite, j);
                    j += i;
                }
            }
            i += 1;
        }
        PlainSieve { composite, limit }
    }

    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n < self.limit);
        self.composite[(n / 64) as usize] >> (n % 64) & 1 == 0
    }

    pub fn count_upto(&self, x: u64) -> u64 {
        (0..=x.min(self.limit - 1)).filter(|&n| self.is_prime(n)).count() as u64
    }

    /// Number of primes below the limit.
    pub fn count_all(&self) -> u64 {
        let mut c: u64 = self.composite.iter().map(|w| w.count_zeros() as u64).sum();
        // bits at and past `limit` in the last word are unset
        c -= (self.composite.len() as u64 * 64) - self.limit.max(1);
        c
    }

    pub fn primes(&self) -> Vec<u64> {
        (0..self.limit).filter(|&n| self.is_prime(n)).collect()
    }

    pub fn nth(&self, n: usize) -> u64 {
        (0..self.limit).filter(|&k| self.is_prime(k)).nth(n - 1).expect("limit too small")
    }
}

pub const BITS: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// 256-bit (about 77 digit) reference value.
#[derive(Clone)]
pub struct Hp(pub BigFloat);

impl Hp {
    pub fn from_f64(x: f64) -> Self {
        Hp(BigFloat::from_f64(x, BITS))
    }

    pub fn sqrt(&self) -> Self {
        Hp(self.0.sqrt(BITS, RM))
    }

    pub fn is_nan(&self) -> bool {
        self.0.is_nan()
    }

    pub fn sign(&self) -> Option<Ordering> {
        self.0.partial_cmp(&BigFloat::from_i64(0, BITS))
    }

    pub fn to_f64_approx(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }
}

impl fmt::Debug for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Hp {
    type Output = Hp;
    fn add(self, r: Hp) -> Hp {
        Hp(self.0.add(&r.0, BITS, RM))
    }
}

impl Sub for Hp {
    type Output = Hp;
    fn sub(self, r: Hp) -> Hp {
        Hp(self.0.sub(&r.0, BITS, RM))
    }
}

impl Mul for Hp {
    type Output = Hp;
    fn mul(self, r: Hp) -> Hp {
        Hp(self.0.mul(&r.0, BITS, RM))
    }
}

impl Div for Hp {
    type Output = Hp;
    fn div(self, r: Hp) -> Hp {
        Hp(self.0.div(&r.0, BITS, RM))
    }
}

impl Neg for Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp(self.0.neg())
    }
}

impl Real for Hp {
    fn int(v: i64) -> Self {
        Hp(BigFloat::from_i64(v, BITS))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Hp::int(num) / Hp::int(den)
    }

    fn big_ratio(num: i128, den: i128) -> Self {
        Hp(BigFloat::from_i128(num, BITS)) / Hp(BigFloat::from_i128(den, BITS))
    }

    fn from_u64(v: u64) -> Self {
        Hp(BigFloat::from_u64(v, BITS))
    }

    fn from_interval(iv: Interval) -> Self {
        assert!(iv.is_point(), "oracle inputs must be exact");
        Hp::from_f64(iv.lo)
    }

    fn exp(&self) -> Self {
        CONSTS.with(|c| Hp(self.0.exp(BITS, RM, &mut c.borrow_mut())))
    }

    fn ln(&self) -> primebound::Result<Self> {
        if self.sign() != Some(Ordering::Greater) {
            return Err(primebound::Error::Domain(format!("oracle log of {self}")));
        }
        Ok(CONSTS.with(|c| Hp(self.0.ln(BITS, RM, &mut c.borrow_mut()))))
    }
}

/// Whether `iv` contains `v`, allowing for the oracle's own rounding
/// (relative `2^-200`, far below any `f64` ulp).
pub fn encloses(iv: Interval, v: &Hp) -> bool {
    if v.is_nan() {
        return false;
    }
    let slack = v.0.abs().mul(&BigFloat::from_f64(2f64.powi(-200), BITS), BITS, RM);
    let lo = BigFloat::from_f64(iv.lo, BITS);
    let hi = BigFloat::from_f64(iv.hi, BITS);
    let below = v.0.add(&slack, BITS, RM);
    let above = v.0.sub(&slack, BITS, RM);
    (iv.lo == f64::NEG_INFINITY || lo <= below) && (iv.hi == f64::INFINITY || above <= hi)
}

/// θ of the given primes.
pub fn theta_hp(primes: &[u64]) -> Hp {
    let mut s = Hp::int(0);
    for &p in primes {
        s = s + Hp::from_u64(p).ln().unwrap();
    }
    s
}
