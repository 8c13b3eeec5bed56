//! Interval soundness sampling: every registered function, random inputs,
//! enclosure against the oracle.

use primebound::formula_lib::{eval_at_point, eval_bivariate, eval_univariate, Arity, FnId, StepParam, Vars};
use primebound::{Enclosure, Interval, Real};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::oracle::{encloses, Hp};

fn univariate_range(id: FnId) -> (f64, f64) {
    match id {
        FnId::Phi | FnId::Aux(_) => (1.0, 30.0),
        FnId::Lemma21 => (2.11, 30.0),
        _ => (-1.0, 30.0),
    }
}

fn bivariate_range(id: FnId) -> (f64, f64) {
    match id {
        FnId::GridG1 => (0.0, 7.0),
        FnId::GridH1 => (0.0, 8.0),
        FnId::R => (0.7, 3.5),
        _ => (3.05, 7.0),
    }
}

fn steps() -> [StepParam; 5] {
    [
        StepParam::upper_step1(),
        StepParam::upper_step2(),
        StepParam::lower_step1(),
        StepParam::lower_step2(),
        StepParam::lower_step3(),
    ]
}

/// One random input, evaluated in interval arithmetic and in the oracle.
fn sample<T: Real>(id: FnId, rng: &mut StdRng) -> (Result<T, String>, Result<Hp, String>) {
    match id.arity() {
        Arity::Univariate => {
            let (a, b) = univariate_range(id);
            let x = rng.gen_range(a..b);
            (
                eval_univariate(id, &T::from_interval(Interval::point(x))).map_err(|e| e.to_string()),
                eval_univariate(id, &Hp::from_f64(x)).map_err(|e| e.to_string()),
            )
        }
        Arity::Bivariate => {
            let (a, b) = bivariate_range(id);
            let (x, t) = (rng.gen_range(a..b), rng.gen_range(a..b));
            (
                eval_bivariate(id, &T::from_interval(Interval::point(x)), &T::from_interval(Interval::point(t)))
                    .map_err(|e| e.to_string()),
                eval_bivariate(id, &Hp::from_f64(x), &Hp::from_f64(t)).map_err(|e| e.to_string()),
            )
        }
        Arity::Point => {
            let n = if rng.gen_bool(0.5) { rng.gen_range(3..10_000u64) } else { rng.gen_range(3..1u64 << 50) };
            let p = rng.gen_range(n + 2..(n + 2) * 40);
            let st = steps()[rng.gen_range(0..5)];
            let step = matches!(id, FnId::B0 | FnId::B1).then_some(&st);
            let a = Vars::<T>::compute(n, p).and_then(|v| eval_at_point(id, &v, step));
            let b = Vars::<Hp>::compute(n, p).and_then(|v| eval_at_point(id, &v, step));
            (a.map_err(|e| e.to_string()), b.map_err(|e| e.to_string()))
        }
    }
}

/// Checks `samples` random inputs per registered function and returns
/// every miss.
pub fn soundness<T: Enclosure>(samples: usize, seed: u64) -> Vec<String> {
    let mut failures = Vec::new();
    for (k, id) in FnId::all().into_iter().enumerate() {
        let mut rng = StdRng::seed_from_u64(seed + k as u64);
        for _ in 0..samples {
            match sample::<T>(id, &mut rng) {
                (Ok(iv), Ok(v)) => {
                    if !encloses(iv.to_interval(), &v) {
                        failures.push(format!("{id}: {:?} misses {v}", iv.to_interval()));
                    }
                }
                // the oracle may reject a point the enclosure straddles
                (_, Err(_)) => {}
                (Err(e), Ok(v)) => failures.push(format!("{id}: error {e} where oracle gives {v}")),
            }
        }
    }
    failures
}

