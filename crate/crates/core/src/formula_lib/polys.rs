//! The fixed polynomials, stored as exact rational coefficient tables.

use serde::{Deserialize, Serialize};

use crate::numeric::rational::Q;
use crate::numeric::{horner, Coef, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolyId {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
    P9,
    P10,
    P11,
    P12,
    Q1,
    Q2,
    Q3,
    Q4,
    Q5,
    Q6,
    Q7,
    Q8,
    Q9,
    T1,
    T2,
}

use PolyId::*;

// ascending powers
const P1_C: &[Coef] = &[(5, 1), (-6, 1), (3, 1)];
const P2_C: &[Coef] = &[(-14, 1), (39, 1), (-24, 1), (5, 1)];
const P3_C: &[Coef] = &[(51, 1), (-124, 1), (120, 1), (-48, 1), (7, 1)];
const P4_C: &[Coef] = &[(-124, 1), (405, 1), (-480, 1), (280, 1), (-80, 1), (9, 1)];
const P5_C: &[Coef] = &[
    (325, 1),
    (-1146, 1),
    (1680, 1),
    (-1280, 1),
    (540, 1),
    (-120, 1),
    (11, 1),
];
const P6_C: &[Coef] = &[
    (-762, 1),
    (3143, 1),
    (-5376, 1),
    (5040, 1),
    (-2800, 1),
    (924, 1),
    (-168, 1),
    (13, 1),
];
const P7_C: &[Coef] = &[
    (896, 1),
    (-4064, 1),
    (7966, 1),
    (-8764, 1),
    (5915, 1),
    (-2492, 1),
    (630, 1),
    (-84, 1),
    (4, 1),
];
const P8_C: &[Coef] = &[(26, 5), (-6, 1), (3, 1)];
const P9_C: &[Coef] = &[(-21, 5), (57, 5), (-6, 1), (1, 1)];
const P10_C: &[Coef] = &[(-441, 100), (42, 5), (-36, 5), (2, 1)];
const P11_C: &[Coef] = &[(0, 1), (441, 100), (-21, 5), (1, 1)];
const P12_C: &[Coef] = &[(23, 2), (-123, 10), (93, 10)];
const Q1_C: &[Coef] = &[
    (-328, 1),
    (1468, 1),
    (-2782, 1),
    (2914, 1),
    (-1819, 1),
    (676, 1),
    (-138, 1),
    (12, 1),
];
const Q2_C: &[Coef] = &[
    (648, 1),
    (-2732, 1),
    (4801, 1),
    (-4506, 1),
    (2405, 1),
    (-700, 1),
    (90, 1),
];
const Q3_C: &[Coef] = &[(-140, 1), (538, 1), (-833, 1), (662, 1), (-275, 1), (50, 1)];
const Q4_C: &[Coef] = &[(40, 1), (-136, 1), (181, 1), (-114, 1), (30, 1)];
const Q5_C: &[Coef] = &[(-12, 1), (38, 1), (-43, 1), (18, 1)];
const Q6_C: &[Coef] = &[(2, 1), (-8, 1), (7, 1)];
// Q7..Q9 expanded from their defining combinations of P8..P12
const Q7_C: &[Coef] = &[(2529, 25), (-15641, 100), (2239, 20), (-143, 4), (123, 10)];
const Q8_C: &[Coef] = &[(-135723, 2000), (3459, 20), (-4989, 50), (383, 20)];
const Q9_C: &[Coef] = &[
    (-341, 5),
    (4104, 25),
    (-9993, 50),
    (259, 2),
    (-419, 10),
    (2, 1),
];
const T1_C: &[Coef] = &[(-2, 1), (1, 1)];
const T2_C: &[Coef] = &[(11, 1), (-6, 1), (1, 1)];

impl PolyId {
    pub const ALL: [PolyId; 23] = [
        P1, P2, P3, P4, P5, P6, P7, P8, P9, P10, P11, P12, Q1, Q2, Q3, Q4, Q5, Q6, Q7, Q8, Q9, T1,
        T2,
    ];

    /// Coefficients in ascending order of powers.
    pub fn table(self) -> &'static [Coef] {
        match self {
            P1 => P1_C,
            P2 => P2_C,
            P3 => P3_C,
            P4 => P4_C,
            P5 => P5_C,
            P6 => P6_C,
            P7 => P7_C,
            P8 => P8_C,
            P9 => P9_C,
            P10 => P10_C,
            P11 => P11_C,
            P12 => P12_C,
            Q1 => Q1_C,
            Q2 => Q2_C,
            Q3 => Q3_C,
            Q4 => Q4_C,
            Q5 => Q5_C,
            Q6 => Q6_C,
            Q7 => Q7_C,
            Q8 => Q8_C,
            Q9 => Q9_C,
            T1 => T1_C,
            T2 => T2_C,
        }
    }

    pub fn coefficients(self) -> Vec<Q> {
        self.table()
            .iter()
            .map(|&(n, d)| Q::new(n as i128, d as i128))
            .collect()
    }

    pub fn degree(self) -> usize {
        self.table().len() - 1
    }

    pub fn name(self) -> &'static str {
        match self {
            P1 => "P1",
            P2 => "P2",
            P3 => "P3",
            P4 => "P4",
            P5 => "P5",
            P6 => "P6",
            P7 => "P7",
            P8 => "P8",
            P9 => "P9",
            P10 => "P10",
            P11 => "P11",
            P12 => "P12",
            Q1 => "Q1",
            Q2 => "Q2",
            Q3 => "Q3",
            Q4 => "Q4",
            Q5 => "Q5",
            Q6 => "Q6",
            Q7 => "Q7",
            Q8 => "Q8",
            Q9 => "Q9",
            T1 => "T1",
            T2 => "T2",
        }
    }

    pub fn parse(s: &str) -> Option<PolyId> {
        PolyId::ALL.into_iter().find(|p| p.name() == s)
    }
}

/// Enclosure of the polynomial's value at `x`.
#[inline]
pub fn eval_poly<T: Real>(id: PolyId, x: &T) -> T {
    horner(x, id.table())
}
