//! Sieve and θ checks against independent oracles.

mod common;

use std::sync::OnceLock;

use common::oracle::{encloses, theta_hp, Hp, PlainSieve};
use primebound::Real;
use primebound::prime_engine::{EngineConfig, PrimeEngine};
use proptest::prelude::*;

fn engine(ceiling: u64, segment_bytes: usize, workers: usize) -> PrimeEngine {
    PrimeEngine::new(EngineConfig {
        ceiling,
        segment_bytes,
        workers,
        checkpoint_stride: 1000,
    })
    .unwrap()
}

#[test]
fn millionth_prime_matches_plain_sieve() {
    let oracle = PlainSieve::new(16_000_000);
    assert_eq!(oracle.nth(1_000_000), 15_485_863);
    let e = engine(1_000_000_000, 256 * 1024, 2);
    assert_eq!(e.nth_prime(1_000_000).unwrap(), 15_485_863);
}

#[test]
fn prime_count_agrees_with_range_length_up_to_a_million() {
    let e = engine(2_000_000, 4096, 2);
    let oracle = PlainSieve::new(1_000_001);
    assert_eq!(oracle.count_all(), 78_498);
    assert_eq!(PlainSieve::new(1).count_all(), 0);
    assert_eq!(PlainSieve::new(3).count_all(), 1);
    for x in [0u64, 1, 2, 3, 100, 127, 128, 129, 65_535, 65_536, 999_999, 1_000_000] {
        let want = oracle.count_upto(x);
        assert_eq!(e.prime_count(x).unwrap(), want, "pi({x})");
        assert_eq!(e.sieve_range(0, x + 1).unwrap().len() as u64, want, "range [0, {x}]");
    }
}

#[test]
fn tail_of_the_billion_range() {
    let e = engine(1_000_000_000, 256 * 1024, 1);
    let got = e.sieve_range(999_999_000, 1_000_000_000).unwrap();
    let want: Vec<u64> = (999_999_000..1_000_000_000)
        .filter(|&n| common::oracle::is_prime_trial(n))
        .collect();
    assert_eq!(got, want);
    assert_eq!(*got.last().unwrap(), 999_999_937);
}

#[test]
fn stream_points_theta_matches_exact_sum() {
    let e = engine(200_000, 1024, 2);
    let oracle = PlainSieve::new(200_000);
    let primes = oracle.primes();
    let mut exact = theta_hp(&primes[..1]);
    for pt in e.stream_points(2, 10_000).unwrap() {
        assert_eq!(pt.p, primes[pt.n as usize - 1]);
        exact = exact + Hp::from_u64(pt.p).ln().unwrap();
        assert!(encloses(pt.theta, &exact), "n = {}: {:?} vs {exact}", pt.n, pt.theta);
    }
}

#[test]
fn theta_at_97_encloses_high_precision_sum() {
    let e = engine(1000, 64, 1);
    let pt = e.stream_points(25, 25).unwrap().next().unwrap();
    assert_eq!(pt.p, 97);
    let primes = PlainSieve::new(100).primes();
    assert!(encloses(pt.theta, &theta_hp(&primes)));
    assert!(pt.theta.width() < 1e-12);
}

#[test]
fn theta_error_budget_grows_at_most_linearly() {
    let e = engine(2_000_000, 4096, 1);
    let mut s = e.stream_points(1, 100_000).unwrap();
    let mut last_ratio = 0.0f64;
    for pt in s.by_ref() {
        if pt.n % 10_000 == 0 {
            let budget = 0.5 * pt.theta.width();
            let ratio = budget / pt.n as f64;
            assert!(ratio < 1e-14, "budget {budget} at n = {}", pt.n);
            last_ratio = ratio;
        }
    }
    assert!(last_ratio > 0.0);
}

#[test]
fn rosser_schoenfeld_index_inequality_up_to_a_million() {
    // n > p_n / log p_n for n >= 7
    let e = engine(20_000_000, 256 * 1024, 2);
    for pt in e.stream_points(7, 1_000_000).unwrap() {
        let q = primebound::Interval::from(pt.p as f64) / pt.z;
        assert!(q.hi < pt.n as f64, "n = {}", pt.n);
    }
}

#[test]
fn checkpoints_identical_across_segments_workers_and_chunks() {
    let reference = engine(3_000_000, 256 * 1024, 1).checkpoints(1, 200_000, 1_000_000).unwrap();
    assert_eq!(reference.len(), 200);
    for (seg, workers, chunk) in [(8, 1, 1000), (1024, 3, 7777), (4096, 2, 50_000)] {
        let got = engine(3_000_000, seg, workers).checkpoints(1, 200_000, chunk).unwrap();
        assert_eq!(got, reference, "segment {seg}, workers {workers}, chunk {chunk}");
    }
}

#[test]
fn stream_and_checkpoint_agree_past_segment_boundaries() {
    let e = engine(1_000_000, 8, 1);
    let whole: Vec<_> = e.stream_points(1, 5000).unwrap().collect();
    for start in [1u64, 2, 3, 37, 64, 65, 1000, 4999] {
        let part: Vec<_> = e.stream_points(start, 5000).unwrap().collect();
        assert_eq!(part[..], whole[start as usize - 1..], "start {start}");
    }
}

fn million() -> &'static PlainSieve {
    static SIEVE: OnceLock<PlainSieve> = OnceLock::new();
    SIEVE.get_or_init(|| PlainSieve::new(1_000_000))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn segment_size_does_not_change_primes(lo in 0u64..1_000_000, len in 0u64..30_000, seg_words in 1usize..600) {
        let hi = (lo + len).min(1_000_000);
        let a = engine(1_000_000, 8 * seg_words, 1).sieve_range(lo, hi).unwrap();
        let b = engine(1_000_000, 256 * 1024, 1).sieve_range(lo, hi).unwrap();
        prop_assert_eq!(&a, &b);
        let oracle: Vec<u64> = (lo..hi).filter(|&n| million().is_prime(n)).collect();
        prop_assert_eq!(a, oracle);
    }
}
