//! Every polynomial, constant and auxiliary function the bounds are built
//! from, evaluable in any [`Real`] arithmetic.

pub mod constants;
mod functions;
pub mod point;
mod polys;
mod registry;

pub use constants::ProofConstants;
pub use functions::{alpha, beta, f, g0, g1, g1_univariate, gamma, h1, lemma21, phi, r, w1};
pub(crate) use functions::u;
pub use point::{StepParam, Vars};
pub use polys::{eval_poly, PolyId};
pub use registry::{
    eval_at_point, eval_bivariate, eval_univariate, registry, registry_json, Arity, FnId, FnInfo,
};

use crate::error::{Error, Result};
use crate::numeric::Real;

/// `n (log n + log log n - 1 + Σ_{k <= order} (-1)^{k+1} T_k(w) / (k y^k))`.
pub fn cipolla_estimate<T: Real>(n: u64, order: u8) -> Result<T> {
    if n < 3 {
        return Err(Error::arg(format!("expansion needs n >= 3, got {n}")));
    }
    if order > 2 {
        return Err(Error::arg(format!("order {order} > 2")));
    }
    let v = Vars::<T>::compute(n, 0)?;
    let mut s = v.y.clone() + v.w.clone() - T::int(1);
    if order >= 1 {
        s = s + eval_poly(PolyId::T1, &v.w) / v.y.clone();
    }
    if order >= 2 {
        s = s - eval_poly(PolyId::T2, &v.w) / (T::int(2) * v.y.sqr());
    }
    Ok(v.n * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Interval;

    #[test]
    fn cipolla_second_order_is_closer() {
        let p = 15_485_863.0;
        let e0: Interval = cipolla_estimate(1_000_000, 0).unwrap();
        let e2: Interval = cipolla_estimate(1_000_000, 2).unwrap();
        let n = 1e6f64;
        assert!((e0.mid() - n * (n.ln() + n.ln().ln() - 1.0)).abs() < 1e-6);
        assert!((e2.mid() - p).abs() < (e0.mid() - p).abs());
        assert!(cipolla_estimate::<Interval>(2, 0).is_err());
    }
}
