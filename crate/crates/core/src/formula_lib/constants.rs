//! Numerical constants of the two main proofs, as exact rationals.

use serde::Serialize;

use crate::numeric::rational::Q;

/// Coefficients `c_1..c_6` of the log-p expansion used as an upper bound.
pub const UPPER_Z_COEFFS: [(i64, i64); 6] = [
    (1, 1),
    (285, 100),
    (1315, 100),
    (707, 10),
    (4_587_275, 10_000),
    (34_287_225, 10_000),
];

/// Coefficients `c_1..c_6` of the log-p expansion used as a lower bound.
pub const LOWER_Z_COEFFS: [(i64, i64); 6] = [
    (1, 1),
    (315, 100),
    (1285, 100),
    (713, 10),
    (4_632_275, 10_000),
    (4585, 1),
];

/// `B_1..B_10` for the lower-bound proof.
pub const B: [(i64, i64); 10] = [
    (27, 100),
    (423, 100),
    (1575, 1000),
    (58, 1000),
    (224, 100),
    (105, 1000),
    (26, 10_000),
    (52, 1000),
    (1955, 10_000),
    (8, 100),
];

/// Published `M_i(B_i)`: the least index from which `H_i >= 0`.
pub const M: [u64; 10] = [
    1_359_056_314,
    1_471_247_583,
    1_468_111_666,
    1_383_728_153,
    1_462_324_835,
    5,
    1_075_859_481,
    1_445_815_789,
    1_479_240_488,
    1_447_605_594,
];

fn q(c: (i64, i64)) -> Q {
    Q::new(c.0 as i128, c.1 as i128)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofConstants {
    pub a0: Q,
    pub a1: Q,
    pub a2: Q,
    pub a3: Q,
    pub b: [Q; 10],
    /// `12.85 - (B_1 + ... + B_5)`.
    pub s1: Q,
    /// `3.15 - (B_6 + ... + B_10)`.
    pub s2: Q,
    pub upper_z: [Q; 6],
    pub lower_z: [Q; 6],
}

impl ProofConstants {
    pub fn new() -> Self {
        let a0 = Q::new(87, 100);
        let a1 = Q::new(15532, 100);
        let a2 = (q(UPPER_Z_COEFFS[4]) - a1) * pow(a0, 5);
        let a3 = q(UPPER_Z_COEFFS[5]) * pow(a0, 6);
        let b = B.map(q);
        let s1 = q(LOWER_Z_COEFFS[2]) - b[..5].iter().sum::<Q>();
        let s2 = q(LOWER_Z_COEFFS[1]) - b[5..].iter().sum::<Q>();
        ProofConstants {
            a0,
            a1,
            a2,
            a3,
            b,
            s1,
            s2,
            upper_z: UPPER_Z_COEFFS.map(q),
            lower_z: LOWER_Z_COEFFS.map(q),
        }
    }
}

impl Default for ProofConstants {
    fn default() -> Self {
        Self::new()
    }
}

fn pow(x: Q, k: u32) -> Q {
    (0..k).fold(Q::from_integer(1), |acc, _| acc * x)
}
