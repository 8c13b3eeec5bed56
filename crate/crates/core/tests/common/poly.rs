//! Dense polynomials over Q, ascending coefficients.

use num_rational::Ratio;
use primebound::formula_lib::PolyId;

pub type Q = Ratio<i128>;

pub fn q(num: i128, den: i128) -> Q {
    Q::new(num, den)
}

pub fn padd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let z = q(0, 1);
    let mut out: Vec<Q> = (0..n)
        .map(|i| *a.get(i).unwrap_or(&z) + *b.get(i).unwrap_or(&z))
        .collect();
    while out.last() == Some(&z) {
        out.pop();
    }
    out
}

pub fn pscale(a: &[Q], s: Q) -> Vec<Q> {
    a.iter().map(|c| *c * s).collect()
}

pub fn psub(a: &[Q], b: &[Q]) -> Vec<Q> {
    padd(a, &pscale(b, q(-1, 1)))
}

pub fn pmul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![q(0, 1); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += *x * *y;
        }
    }
    out
}

pub fn coeffs(id: PolyId) -> Vec<Q> {
    id.coefficients()
}

pub fn u() -> Vec<Q> {
    vec![q(1, 1), q(-1, 1), q(1, 1)]
}

