//! Inequalities between `n`, `p_n` and their logarithms that are checked
//! pointwise, written as `margin >= 0` (or `> 0`).

use crate::formula_lib::point::{f0, f1, h};
use crate::formula_lib::{eval_poly, PolyId, Vars};
use crate::numeric::{Enclosure, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PredicateId {
    /// Lower estimate of `1/log p_n` with four correction terms.
    Prop24,
    Kor25,
    Kor26,
    /// Upper estimate of `1/log p_n` with three subtracted terms.
    Prop33,
    Kor34,
    Kor35,
    /// `P_1(w)/(2y) - P_2(w)/(6y^2) >= 0`.
    Eq26,
    /// `log n >= 0.87 log p_n`.
    Lemma22,
    /// `F_1(n) >= 0`.
    Lemma23,
    Lemma31,
    Lemma32,
    /// `Φ(log log n) <= log p_n`.
    Lemma54,
    H(u8),
    /// `n > p_n / log p_n`.
    RsIndex,
}

/// Outcome of evaluating a predicate's margin.
#[derive(Clone, Debug)]
pub enum Eval<T> {
    Margin(T),
    /// The inequality has no content here (its left side is undefined and
    /// the bound it feeds is trivially true).
    Vacuous,
    /// Could not tell whether the inequality is meaningful at this point.
    Straddle,
}

impl PredicateId {
    pub fn all() -> Vec<PredicateId> {
        use PredicateId::*;
        let mut v = vec![
            Prop24, Kor25, Kor26, Prop33, Kor34, Kor35, Eq26, Lemma22, Lemma23, Lemma31, Lemma32, Lemma54,
        ];
        v.extend((1..=10).map(H));
        v.push(RsIndex);
        v
    }

    pub fn name(self) -> String {
        use PredicateId::*;
        match self {
            Prop24 => "prop-2.4".into(),
            Kor25 => "kor-2.5".into(),
            Kor26 => "kor-2.6".into(),
            Prop33 => "prop-3.3".into(),
            Kor34 => "kor-3.4".into(),
            Kor35 => "kor-3.5".into(),
            Eq26 => "eq-2.6".into(),
            Lemma22 => "lemma-2.2".into(),
            Lemma23 => "lemma-2.3".into(),
            Lemma31 => "lemma-3.1".into(),
            Lemma32 => "lemma-3.2".into(),
            Lemma54 => "lemma-5.4".into(),
            H(i) => format!("H{i}"),
            RsIndex => "rs-index".into(),
        }
    }

    pub fn parse(s: &str) -> Option<PredicateId> {
        PredicateId::all().into_iter().find(|p| p.name() == s)
    }

    pub fn claimed_threshold(self) -> u64 {
        use PredicateId::*;
        match self {
            Prop24 => 688_383,
            Kor25 => 456_914,
            Kor26 => 71,
            Prop33 | Kor34 | Kor35 => 2,
            Eq26 => 3,
            Lemma22 => 1_338_564_587,
            Lemma23 => 100_720_878,
            Lemma31 => 6,
            Lemma32 => 17,
            Lemma54 => 3,
            H(i) => crate::formula_lib::constants::M[i as usize - 1],
            RsIndex => 7,
        }
    }

    pub fn strict(self) -> bool {
        matches!(self, PredicateId::RsIndex)
    }

    pub fn provenance(self) -> String {
        use PredicateId::*;
        match self {
            Prop24 => "Proposition 2.4".into(),
            Kor25 => "Corollary 2.5".into(),
            Kor26 => "Corollary 2.6".into(),
            Prop33 => "Proposition 3.3".into(),
            Kor34 => "Corollary 3.4".into(),
            Kor35 => "Corollary 3.5".into(),
            Eq26 => "(2.6)".into(),
            Lemma22 => "Lemma 2.2".into(),
            Lemma23 => "Lemma 2.3".into(),
            Lemma31 => "Lemma 3.1".into(),
            Lemma32 => "Lemma 3.2".into(),
            Lemma54 => "Lemma 5.4".into(),
            H(i) => format!("H_{i} >= 0, table of M_i"),
            RsIndex => "proof of Proposition 4.1, m > p_m / log p_m".into(),
        }
    }

    /// Margin that has to be nonnegative (positive when strict).
    pub fn margin<T: Enclosure>(self, v: &Vars<T>) -> Eval<T> {
        use PredicateId::*;
        let (w, y, z) = (&v.w, &v.y, &v.z);
        let two = || T::int(2);
        let p = |id: PolyId| eval_poly(id, w);
        let m = match self {
            Prop24 | Kor25 | Kor26 => {
                let mut rhs = recip_main(v);
                let y3 = y.powi(3);
                match self {
                    Prop24 => {
                        let s = p(PolyId::P1) / (two() * y3.clone())
                            - p(PolyId::P2) / (T::int(6) * y3.clone() * y.clone())
                            + p(PolyId::P3) / (T::int(12) * y3.clone() * y.sqr())
                            - p(PolyId::P4) / (T::int(20) * y3.sqr());
                        rhs = rhs + s / z.clone();
                    }
                    Kor25 => {
                        let y3z = y3 * z.clone();
                        rhs = rhs + p(PolyId::P1) / (two() * y3z.clone())
                            - p(PolyId::P2) / (T::int(6) * y3z * y.clone());
                    }
                    _ => {}
                }
                z.recip() - rhs
            }
            Prop33 | Kor34 | Kor35 => {
                let last = match self {
                    Prop33 => 6,
                    Kor34 => 5,
                    _ => 4,
                };
                let y3z = y.powi(3) * z.clone();
                let mut rhs = recip_main(v) + p(PolyId::P8) / (two() * y3z.clone());
                let ids = [PolyId::P9, PolyId::P10, PolyId::P11];
                let mut yk = y3z;
                for id in &ids[..last - 3] {
                    yk = yk * y.clone();
                    rhs = rhs - p(*id) / (two() * yk.clone());
                }
                rhs - z.recip()
            }
            Eq26 => p(PolyId::P1) / (two() * y.clone()) - p(PolyId::P2) / (T::int(6) * y.sqr()),
            Lemma22 => f0(v),
            Lemma23 => f1(v),
            Lemma31 => {
                (T::ratio(1285, 100) * p(PolyId::P9) + T::ratio(315, 100) * p(PolyId::P10) + p(PolyId::P11))
                    / (two() * y.powi(6) * z.clone())
            }
            Lemma32 => {
                let y6 = y.powi(6);
                let y7z = y6.clone() * y.clone() * z.clone();
                let p11 = p(PolyId::P11);
                p(PolyId::P9) * p(PolyId::P12) / (T::int(4) * y7z.clone())
                    + T::ratio(1285, 100) * p(PolyId::P10) / (two() * y7z.clone())
                    + T::ratio(315, 100) * p11.clone() / (two() * y7z)
                    + T::ratio(315, 100) * p11 / (two() * y6.clone() * z.sqr())
                    - (w.clone() - T::int(2)).powi(4) / (T::int(4) * y6 * y.sqr())
            }
            Lemma54 => {
                let inner = T::int(1)
                    + (w.clone() - T::int(1)) * (-w.clone()).exp()
                    + (w.clone() - T::ratio(21, 10)) * (-(w.clone() * T::int(2))).exp();
                if inner.upper() <= 0.0 {
                    return Eval::Vacuous;
                }
                if inner.lower() <= 0.0 {
                    return Eval::Straddle;
                }
                let phi = w.exp() + w.clone() + inner.ln().expect("positive log argument");
                z.clone() - phi
            }
            H(i) => h(i, v),
            RsIndex => v.n.clone() - v.p.clone() / z.clone(),
        };
        Eval::Margin(m)
    }
}

/// `1/y - w/y^2 + (w^2 - w + 1)/(y^2 z)`.
fn recip_main<T: Real>(v: &Vars<T>) -> T {
    let y2 = v.y.sqr();
    v.y.recip() - v.w.clone() / y2.clone()
        + crate::formula_lib::u(&v.w) / (y2 * v.z.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Interval;

    #[test]
    fn names_round_trip() {
        for p in PredicateId::all() {
            assert_eq!(PredicateId::parse(&p.name()), Some(p));
        }
    }

    #[test]
    fn lemma54_is_vacuous_for_tiny_indices() {
        let v = Vars::<Interval>::compute(3, 5).unwrap();
        assert!(matches!(PredicateId::Lemma54.margin(&v), Eval::Vacuous));
        let v = Vars::<Interval>::compute(1000, 7919).unwrap();
        match PredicateId::Lemma54.margin(&v) {
            Eval::Margin(m) => assert!(m.lo > 0.0),
            other => panic!("{other:?}"),
        }
    }
}
