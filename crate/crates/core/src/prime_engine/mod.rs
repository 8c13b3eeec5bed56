//! Primes, prime counts and running θ values from a segmented sieve.
//!
//! Work is split in two passes. The first sieves every segment below the
//! value bound of a request and records how many primes (and, when asked,
//! how much θ) each segment holds. The second walks index ranges, each
//! starting from the prefix totals of its first segment, so chunks can run
//! on any number of workers and still produce identical values.

pub mod checkpoint;
mod point;
mod sieve;
mod theta;

use std::sync::Arc;

use rayon::prelude::*;

pub use checkpoint::CheckpointRecord;
pub use point::{index_logs, PrimePoint};
pub use sieve::{base_primes, isqrt, small_primes, SieveSegment};
pub use theta::{log_enclosure, ThetaAccumulator};

use crate::error::{Error, Result};
use sieve::WORD_SPAN;

pub const DEFAULT_CEILING: u64 = 1_000_000_000;
pub const HARD_CAP: u64 = 1 << 63;
pub const DEFAULT_SEGMENT_BYTES: usize = 256 * 1024;
pub const DEFAULT_CHECKPOINT_STRIDE: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct EngineConfig {
    /// Largest prime value the sieve may reach.
    pub ceiling: u64,
    /// Bitmap bytes per segment; a multiple of 8.
    pub segment_bytes: usize,
    pub workers: usize,
    /// Indices between consecutive checkpoint records.
    pub checkpoint_stride: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            ceiling: DEFAULT_CEILING,
            segment_bytes: DEFAULT_SEGMENT_BYTES,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            checkpoint_stride: DEFAULT_CHECKPOINT_STRIDE,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ceiling > HARD_CAP {
            return Err(Error::arg(format!("ceiling {} exceeds 2^63", self.ceiling)));
        }
        if self.segment_bytes == 0 || self.segment_bytes % 8 != 0 {
            return Err(Error::arg("segment size must be a positive multiple of 8 bytes"));
        }
        if self.workers == 0 {
            return Err(Error::arg("at least one worker is required"));
        }
        if self.checkpoint_stride == 0 {
            return Err(Error::arg("checkpoint stride must be positive"));
        }
        Ok(())
    }
}

pub struct PrimeEngine {
    config: EngineConfig,
    pool: rayon::ThreadPool,
}

/// Per-segment prefix totals for the values below `limit`.
#[derive(Debug)]
struct SegmentIndex {
    span: u64,
    segment_bytes: usize,
    limit: u64,
    primes: Vec<u64>,
    /// `counts[k]` = primes below the base of segment `k`, the prime 2
    /// included; one extra entry holds the total.
    counts: Vec<u64>,
    /// Same layout as `counts`; empty when θ was not requested.
    theta: Vec<ThetaAccumulator>,
}

impl SegmentIndex {
    fn total(&self) -> u64 {
        *self.counts.last().expect("at least one entry")
    }

    /// Segment holding the `n`-th prime.
    fn locate(&self, n: u64) -> usize {
        debug_assert!(n >= 1 && n <= self.total());
        self.counts.partition_point(|&c| c < n) - 1
    }

    fn sieve(&self, k: usize) -> SieveSegment {
        SieveSegment::sieve(k as u64 * self.span, self.segment_bytes, &self.primes)
    }
}

/// A planned scan over `[n_lo, n_hi]`, split into index chunks.
#[derive(Clone, Debug)]
pub struct ScanPlan {
    index: Arc<SegmentIndex>,
    pub n_lo: u64,
    pub n_hi: u64,
    pub chunks: Vec<(u64, u64)>,
}

impl ScanPlan {
    /// Points with indices in `[lo, hi]`, which must lie inside the plan.
    pub fn stream(&self, lo: u64, hi: u64) -> PointStream {
        assert!(self.n_lo <= lo && hi <= self.n_hi && lo <= hi);
        PointStream::start(self.index.clone(), lo, hi)
    }
}

impl PrimeEngine {
    pub fn new(config: EngineConfig) -> Result<Self> {
        config.validate()?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::arg(format!("worker pool: {e}")))?;
        Ok(PrimeEngine { config, pool })
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn ceiling(&self) -> u64 {
        self.config.ceiling
    }

    /// Runs `f` on the engine's worker pool.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }

    fn check_value(&self, v: u64, what: &str) -> Result<()> {
        if v > self.config.ceiling {
            return Err(Error::Capacity(format!(
                "{what} {v} is beyond the sieve ceiling {}",
                self.config.ceiling
            )));
        }
        Ok(())
    }

    fn build_index(&self, limit: u64, with_theta: bool) -> SegmentIndex {
        let span = 16 * self.config.segment_bytes as u64;
        let nseg = limit.div_ceil(span).max(1) as usize;
        let primes = base_primes(nseg as u64 * span);
        let tallies: Vec<(u64, ThetaAccumulator)> = self.pool.install(|| {
            (0..nseg)
                .into_par_iter()
                .map(|k| {
                    let seg = SieveSegment::sieve(k as u64 * span, self.config.segment_bytes, &primes);
                    let mut count = 0;
                    let mut acc = ThetaAccumulator::new();
                    if k == 0 && limit > 2 {
                        count = 1;
                        if with_theta {
                            acc.add_prime(2);
                        }
                    }
                    if with_theta {
                        for p in seg.odd_primes(seg.base, limit) {
                            acc.add_prime(p);
                        }
                        count = acc.count();
                    } else {
                        count += seg.count_below(limit);
                    }
                    (count, acc)
                })
                .collect()
        });
        let mut counts = Vec::with_capacity(nseg + 1);
        let mut theta = Vec::with_capacity(if with_theta { nseg + 1 } else { 0 });
        let mut c = 0;
        let mut t = ThetaAccumulator::new();
        counts.push(0);
        if with_theta {
            theta.push(t);
        }
        for (cnt, acc) in tallies {
            c += cnt;
            counts.push(c);
            if with_theta {
                t.merge(&acc);
                theta.push(t);
            }
        }
        SegmentIndex {
            span,
            segment_bytes: self.config.segment_bytes,
            limit,
            primes,
            counts,
            theta,
        }
    }

    /// Exclusive value bound that certainly covers `p_n`, capped at the ceiling.
    fn value_bound(&self, n: u64) -> u64 {
        let cap = self.config.ceiling.saturating_add(1);
        if n < 6 {
            return cap.min(14);
        }
        // p_n < n (log n + log log n) for n >= 6; pad against rounding
        let nf = n as f64;
        let b = nf * (nf.ln() + nf.ln().ln()) * (1.0 + 1e-9) + 16.0;
        if b >= cap as f64 {
            cap
        } else {
            (b as u64).min(cap)
        }
    }

    fn index_for(&self, n_hi: u64, with_theta: bool) -> Result<SegmentIndex> {
        let limit = self.value_bound(n_hi);
        let index = self.build_index(limit, with_theta);
        if index.total() < n_hi {
            return Err(Error::Capacity(format!(
                "prime index {n_hi} exceeds π({}) = {}",
                self.config.ceiling,
                index.total()
            )));
        }
        Ok(index)
    }

    /// Primes in `[lo, hi)`, ascending.
    pub fn sieve_range(&self, lo: u64, hi: u64) -> Result<Vec<u64>> {
        if lo > hi {
            return Err(Error::arg(format!("empty range [{lo}, {hi})")));
        }
        self.check_value(hi, "range end")?;
        if lo == hi {
            return Ok(Vec::new());
        }
        let span = 16 * self.config.segment_bytes as u64;
        let first = lo / WORD_SPAN * WORD_SPAN;
        let nseg = (hi - first).div_ceil(span) as usize;
        let primes = base_primes(hi);
        let parts: Vec<Vec<u64>> = self.pool.install(|| {
            (0..nseg)
                .into_par_iter()
                .map(|k| {
                    let seg = SieveSegment::sieve(first + k as u64 * span, self.config.segment_bytes, &primes);
                    seg.odd_primes(lo, hi).collect()
                })
                .collect()
        });
        let mut out = Vec::with_capacity(parts.iter().map(Vec::len).sum::<usize>() + 1);
        if lo <= 2 && 2 < hi {
            out.push(2);
        }
        for part in parts {
            out.extend(part);
        }
        Ok(out)
    }

    /// π(x).
    pub fn prime_count(&self, x: u64) -> Result<u64> {
        self.check_value(x, "argument")?;
        Ok(self.build_index(x + 1, false).total())
    }

    /// The `n`-th prime (`p_1 = 2`).
    pub fn nth_prime(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::arg("prime indices start at 1"));
        }
        let index = self.index_for(n, false)?;
        if n == 1 {
            return Ok(2);
        }
        let k = index.locate(n);
        let seg = index.sieve(k);
        // segment 0 starts with 2, which is not in the odd bitmap
        let first = if k == 0 { 2 } else { index.counts[k] + 1 };
        let p = seg.odd_primes(seg.base, index.limit).nth((n - first) as usize);
        p.ok_or_else(|| Error::Capacity(format!("prime index {n} not reached")))
    }

    /// Plans a scan of `[n_lo, n_hi]` in chunks of `chunk_size` indices.
    pub fn plan(&self, n_lo: u64, n_hi: u64, chunk_size: u64) -> Result<ScanPlan> {
        if n_lo == 0 || n_lo > n_hi {
            return Err(Error::arg(format!("index range [{n_lo}, {n_hi}] is empty or starts at 0")));
        }
        if chunk_size == 0 {
            return Err(Error::arg("chunk size must be positive"));
        }
        let index = Arc::new(self.index_for(n_hi, true)?);
        let mut chunks = Vec::new();
        let mut a = n_lo;
        while a <= n_hi {
            let b = a.saturating_add(chunk_size - 1).min(n_hi);
            chunks.push((a, b));
            a = b + 1;
        }
        Ok(ScanPlan { index, n_lo, n_hi, chunks })
    }

    /// Sequential stream of points for `[n_lo, n_hi]`.
    pub fn stream_points(&self, n_lo: u64, n_hi: u64) -> Result<PointStream> {
        let plan = self.plan(n_lo, n_hi, u64::MAX)?;
        Ok(plan.stream(n_lo, n_hi))
    }

    /// Applies `f` to every chunk of `chunks` in parallel, results in chunk order.
    pub fn map_chunks<R, F>(&self, plan: &ScanPlan, chunks: &[(u64, u64)], f: F) -> Vec<R>
    where
        R: Send,
        F: Fn((u64, u64), PointStream) -> R + Sync,
    {
        self.pool.install(|| {
            chunks
                .par_iter()
                .map(|&(a, b)| f((a, b), plan.stream(a, b)))
                .collect()
        })
    }

    /// Checkpoint records (indices divisible by the stride) in `[n_lo, n_hi]`.
    pub fn checkpoints(&self, n_lo: u64, n_hi: u64, chunk_size: u64) -> Result<Vec<CheckpointRecord>> {
        let plan = self.plan(n_lo, n_hi, chunk_size)?;
        let stride = self.config.checkpoint_stride;
        let parts = self.map_chunks(&plan, &plan.chunks, |_, s| {
            s.filter(|pt| pt.n % stride == 0)
                .map(|pt| CheckpointRecord { n: pt.n, p: pt.p, theta: pt.theta })
                .collect::<Vec<_>>()
        });
        Ok(parts.into_iter().flatten().collect())
    }
}

/// Iterator over consecutive [`PrimePoint`]s.
pub struct PointStream {
    index: Arc<SegmentIndex>,
    seg: SieveSegment,
    seg_no: usize,
    /// next bitmap position to inspect inside `seg`
    cursor: u64,
    two_pending: bool,
    /// index of the next prime to come out
    next_n: u64,
    end: u64,
    theta: ThetaAccumulator,
}

impl PointStream {
    fn start(index: Arc<SegmentIndex>, lo: u64, hi: u64) -> Self {
        let k = index.locate(lo);
        let seg = index.sieve(k);
        let mut s = PointStream {
            seg,
            seg_no: k,
            cursor: 0,
            two_pending: k == 0,
            next_n: index.counts[k] + 1,
            end: hi,
            theta: index.theta[k],
            index,
        };
        while s.next_n < lo {
            s.advance();
        }
        s
    }

    /// Moves past the next prime, returning `(n, p, log p)`.
    #[inline]
    fn advance(&mut self) -> (u64, u64, crate::Interval) {
        if self.two_pending {
            self.two_pending = false;
            let term = self.theta.add_prime(2);
            self.next_n = 2;
            return (1, 2, term);
        }
        loop {
            let nbits = self.seg.bits.len() as u64 * 64;
            while self.cursor < nbits {
                let w = (self.cursor / 64) as usize;
                let word = self.seg.bits[w] >> (self.cursor % 64);
                if word == 0 {
                    self.cursor = (w as u64 + 1) * 64;
                    continue;
                }
                let k = self.cursor + word.trailing_zeros() as u64;
                self.cursor = k + 1;
                let p = self.seg.base + 2 * k + 1;
                let n = self.next_n;
                self.next_n += 1;
                let term = self.theta.add_prime(p);
                return (n, p, term);
            }
            self.seg_no += 1;
            assert!(
                (self.seg_no as u64) * self.index.span < self.index.limit,
                "stream ran past its planned value bound"
            );
            self.seg = self.index.sieve(self.seg_no);
            self.cursor = 0;
        }
    }

    /// θ over all primes already passed.
    pub fn theta(&self) -> &ThetaAccumulator {
        &self.theta
    }
}

impl Iterator for PointStream {
    type Item = PrimePoint;

    #[inline]
    fn next(&mut self) -> Option<PrimePoint> {
        if self.next_n > self.end {
            return None;
        }
        let (n, p, z) = self.advance();
        Some(PrimePoint::new(n, p, z, self.theta.interval()))
    }
}
