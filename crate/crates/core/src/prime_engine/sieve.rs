//! Odd-only segmented sieve of Eratosthenes.

use std::sync::OnceLock;

/// Numbers covered by one bitmap word (64 odd numbers).
pub(crate) const WORD_SPAN: u64 = 128;

/// Odd primes whose multiples are struck by copying a precomputed pattern.
const PRESIEVED: [u64; 5] = [3, 5, 7, 11, 13];
/// Product of `PRESIEVED`; the pattern repeats after this many words.
const PATTERN_WORDS: usize = 15015;

fn presieve_pattern() -> &'static [u64] {
    static PATTERN: OnceLock<Vec<u64>> = OnceLock::new();
    PATTERN.get_or_init(|| {
        // bit g of the pattern stands for the odd number 2g + 1
        let mut words = vec![!0u64; PATTERN_WORDS];
        for q in PRESIEVED {
            let mut g = (q / 2) as usize;
            while g < PATTERN_WORDS * 64 {
                words[g / 64] &= !(1u64 << (g % 64));
                g += q as usize;
            }
        }
        words
    })
}

/// Primes up to and including `limit`, by a plain sieve.
pub fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// `floor(sqrt(x))` for any `u64`.
pub fn isqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|s| s > x) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= x) {
        r += 1;
    }
    r
}

/// Sieving primes sufficient for every number below `hi`.
pub fn base_primes(hi: u64) -> Vec<u64> {
    small_primes(isqrt(hi.saturating_sub(1)))
}

/// Sieved bitmap of the odd numbers in `[base, base + 16 * length)`.
///
/// Bit `k` is set iff `base + 2k + 1` is prime.
#[derive(Clone, Debug)]
pub struct SieveSegment {
    pub base: u64,
    pub length: usize,
    pub bits: Vec<u64>,
}

impl SieveSegment {
    /// Sieves the segment starting at `base` (a multiple of 128) with
    /// `length` bytes of bitmap; `primes` must contain every prime up to
    /// the square root of the segment end.
    pub fn sieve(base: u64, length: usize, primes: &[u64]) -> Self {
        debug_assert!(base % WORD_SPAN == 0 && length % 8 == 0 && length > 0);
        let words = length / 8;
        let pattern = presieve_pattern();
        let start = ((base / WORD_SPAN) % PATTERN_WORDS as u64) as usize;
        let mut bits = Vec::with_capacity(words);
        let mut at = start;
        while bits.len() < words {
            let take = (words - bits.len()).min(PATTERN_WORDS - at);
            bits.extend_from_slice(&pattern[at..at + take]);
            at = 0;
        }
        let end = base.saturating_add(16 * length as u64);
        if base == 0 {
            // 1 is not prime; the presieved primes struck themselves
            bits[0] &= !1;
            for q in PRESIEVED {
                bits[0] |= 1 << (q / 2);
            }
        }
        let nbits = (words * 64) as u64;
        for &q in primes {
            if q < 17 {
                continue;
            }
            let sq = q * q;
            if sq >= end {
                break;
            }
            let first = if sq >= base {
                sq
            } else {
                // smallest odd multiple of q that is > base
                let m = base.div_ceil(q) * q;
                if m % 2 == 0 { m + q } else { m }
            };
            let mut k = (first - base - 1) / 2;
            while k < nbits {
                bits[(k / 64) as usize] &= !(1u64 << (k % 64));
                k += q;
            }
        }
        SieveSegment { base, length, bits }
    }

    /// One past the largest number the segment covers.
    pub fn end(&self) -> u64 {
        self.base + 16 * self.length as u64
    }

    /// Number of odd primes in the segment that are below `limit`.
    pub fn count_below(&self, limit: u64) -> u64 {
        let nbits = odd_bits_below(self.base, limit).min(self.bits.len() as u64 * 64);
        let full = (nbits / 64) as usize;
        let mut c: u64 = self.bits[..full].iter().map(|w| w.count_ones() as u64).sum();
        let rest = nbits % 64;
        if rest > 0 {
            c += (self.bits[full] & ((1u64 << rest) - 1)).count_ones() as u64;
        }
        c
    }

    /// Odd primes of the segment in `[lo, hi)`, ascending.
    pub fn odd_primes(&self, lo: u64, hi: u64) -> impl Iterator<Item = u64> + '_ {
        let from = odd_bits_below(self.base, lo);
        let to = odd_bits_below(self.base, hi).min(self.bits.len() as u64 * 64);
        OddPrimes {
            bits: &self.bits,
            base: self.base,
            k: from,
            end: to,
        }
    }
}

/// Count of bits `k` with `base + 2k + 1 < limit`.
fn odd_bits_below(base: u64, limit: u64) -> u64 {
    if limit <= base {
        0
    } else {
        (limit - base) / 2
    }
}

struct OddPrimes<'a> {
    bits: &'a [u64],
    base: u64,
    k: u64,
    end: u64,
}

impl Iterator for OddPrimes<'_> {
    type Item = u64;

    #[inline]
    fn next(&mut self) -> Option<u64> {
        while self.k < self.end {
            let w = (self.k / 64) as usize;
            let word = self.bits[w] >> (self.k % 64);
            if word == 0 {
                self.k = (w as u64 + 1) * 64;
                continue;
            }
            let k = self.k + word.trailing_zeros() as u64;
            if k >= self.end {
                break;
            }
            self.k = k + 1;
            return Some(self.base + 2 * k + 1);
        }
        self.k = self.end;
        None
    }
}
