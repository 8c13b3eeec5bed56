//! Registry of explicit inequalities for `p_n` and `θ(p_n)`.

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::formula_lib::Vars;
use crate::numeric::{Coef, Enclosure, Interval, Real};
use crate::prime_engine::PrimePoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    #[serde(rename = "p_n")]
    Prime,
    #[serde(rename = "theta_pn")]
    Theta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

/// Right-hand side of a bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Form {
    /// `n (y + a w + c + (b w + d)/y - (e w^2 + f w + g)/(2 y^2))`.
    Index {
        a: Coef,
        c: Coef,
        b: Coef,
        d: Coef,
        e: Coef,
        f: Coef,
        g: Coef,
    },
    /// `n (z - 1 - Σ_{k=1..6} c_k / z^k)`: needs `p_n` itself.
    LogP([Coef; 6]),
}

const ZERO: Coef = (0, 1);
const ONE: Coef = (1, 1);

const fn linear(a: i64, c: Coef) -> Form {
    Form::Index { a: (a, 1), c, b: ZERO, d: ZERO, e: ZERO, f: ZERO, g: ZERO }
}

const fn two_term(d: Coef) -> Form {
    Form::Index { a: ONE, c: (-1, 1), b: ONE, d: (-d.0, d.1), e: ZERO, f: ZERO, g: ZERO }
}

const fn three_term(e: i64, f: i64, g: Coef) -> Form {
    Form::Index { a: ONE, c: (-1, 1), b: ONE, d: (-2, 1), e: (e, 1), f: (f, 1), g }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundSpec {
    pub id: &'static str,
    pub target: Target,
    pub side: Side,
    /// `>`/`<` when true, `>=`/`<=` otherwise.
    pub strict: bool,
    /// `None` for conjectural or conditional entries.
    pub claimed_threshold: Option<u64>,
    /// Smallest index where the right-hand side is defined.
    pub domain_min: u64,
    pub form: Form,
    pub provenance: &'static str,
    pub conditional: bool,
    pub note: &'static str,
}

macro_rules! bound {
    ($id:expr, $target:ident, $side:ident, $strict:expr, $thr:expr, $dmin:expr, $form:expr, $prov:expr) => {
        bound!($id, $target, $side, $strict, $thr, $dmin, $form, $prov, false, "")
    };
    ($id:expr, $target:ident, $side:ident, $strict:expr, $thr:expr, $dmin:expr, $form:expr, $prov:expr, $cond:expr, $note:expr) => {
        BoundSpec {
            id: $id,
            target: Target::$target,
            side: Side::$side,
            strict: $strict,
            claimed_threshold: $thr,
            domain_min: $dmin,
            form: $form,
            provenance: $prov,
            conditional: $cond,
            note: $note,
        }
    };
}

static REGISTRY: [BoundSpec; 22] = [
    bound!("rosser-lower", Prime, Lower, true, Some(1), 1, linear(0, ZERO), "(1.3)"),
    bound!("eq-1.4-upper", Prime, Upper, true, Some(6), 2, linear(1, ZERO), "(1.4)"),
    bound!("eq-1.5-lower", Prime, Lower, true, Some(2), 2, linear(1, (-1, 1)), "(1.5)"),
    bound!("eq-1.6-upper", Prime, Upper, true, Some(4), 2, linear(2, ZERO), "(1.6)"),
    bound!("rs-lower-1.5", Prime, Lower, true, Some(2), 2, linear(1, (-3, 2)), "Section 1, Rosser-Schoenfeld lower bound"),
    bound!("eq-1.7-upper", Prime, Upper, true, Some(20), 2, linear(1, (-1, 2)), "(1.7)"),
    bound!("eq-1.8-lower", Prime, Lower, false, Some(2), 2, linear(1, (-10_072_629, 10_000_000)), "(1.8)"),
    bound!("massias-robin-lower", Prime, Lower, false, Some(2), 2, linear(1, (-1_002_872, 1_000_000)), "Section 1, Massias-Robin lower bound"),
    bound!("eq-1.9-upper", Prime, Upper, false, Some(27_076), 2, two_term((18, 10)), "(1.9)"),
    bound!("eq-1.10-upper", Prime, Upper, false, Some(688_383), 2, two_term((2, 1)), "(1.10)"),
    bound!("eq-1.11-lower", Prime, Lower, false, Some(3), 2, two_term((21, 10)), "(1.11)"),
    bound!("thm-1.1-upper", Prime, Upper, true, Some(46_254_381), 2, three_term(1, -6, (10_667, 1000)), "Theorem 1.1, (1.12)"),
    bound!("thm-1.2-lower", Prime, Lower, true, Some(2), 2, three_term(1, -6, (11_508, 1000)), "Theorem 1.2, (1.13)"),
    bound!(
        "corollary-unconditional-1.12", Prime, Upper, true, Some(3468), 2, three_term(1, -6, ZERO),
        "Corollary after Theorem 1.1, second display labelled (1.12)", false,
        "shares its equation label with Theorem 1.1"
    ),
    bound!("corollary-thm-1.2-lower", Prime, Lower, true, Some(2), 2, three_term(1, 0, ZERO), "Corollary after Theorem 1.2"),
    bound!(
        "remark-3.16-lower", Prime, Lower, true, None, 2, three_term(1, -6, (11, 1)), "Remark, (3.16)", true,
        "least valid index r3 satisfies 3.9e30 < r3 <= 3.958e30 under RH"
    ),
    bound!("theta-lower-11.808", Theta, Lower, true, Some(2), 2, three_term(1, -6, (11_808, 1000)), "Proposition 4.1, lower bound"),
    bound!("theta-upper-10.367", Theta, Upper, true, Some(2581), 2, three_term(1, -6, (10_367, 1000)), "Proposition 4.1, upper bound"),
    bound!(
        "dusart-theta-lower-2.04", Theta, Lower, false, Some(29_844_570_422_670), 2, two_term((204, 100)),
        "Section 4, Dusart lower bound for theta(p_n)"
    ),
    bound!(
        "dusart-theta-upper-0.782", Theta, Upper, false, Some(781), 2, three_term(0, 0, (1564, 1000)),
        "Section 4, Dusart upper bound for theta(p_n)"
    ),
    bound!(
        "zform-2.12-upper", Prime, Upper, true, Some(841_424_976), 1,
        Form::LogP(crate::formula_lib::constants::UPPER_Z_COEFFS), "(2.12)", false,
        "cited estimate in log p_n; threshold taken from the surrounding proof"
    ),
    bound!(
        "zform-3.7-lower", Prime, Lower, true, Some(3520), 1,
        Form::LogP(crate::formula_lib::constants::LOWER_Z_COEFFS), "(3.7)", false,
        "cited estimate in log p_n; threshold taken from the surrounding proof"
    ),
];

pub fn registry() -> &'static [BoundSpec] {
    &REGISTRY
}

pub fn lookup(id: &str) -> Result<&'static BoundSpec> {
    REGISTRY
        .iter()
        .find(|b| b.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

#[inline]
fn coef<T: Real>(c: Coef) -> Option<T> {
    (c.0 != 0).then(|| T::ratio(c.0, c.1))
}

impl BoundSpec {
    /// Whether the right-hand side needs `p_n` (and not just `n`).
    pub fn needs_prime(&self) -> bool {
        matches!(self.form, Form::LogP(_))
    }

    /// Enclosure of the right-hand side; `v.p`/`v.z` are only read for
    /// bounds written in `log p_n`.
    pub fn expr<T: Real>(&self, v: &Vars<T>) -> T {
        match self.form {
            Form::Index { a, c, b, d, e, f, g } => {
                let mut s = v.y.clone();
                if let Some(a) = coef::<T>(a) {
                    s = s + a * v.w.clone();
                }
                if let Some(c) = coef::<T>(c) {
                    s = s + c;
                }
                let mut num1: Option<T> = coef::<T>(b).map(|b| b * v.w.clone());
                if let Some(d) = coef::<T>(d) {
                    num1 = Some(match num1 {
                        Some(x) => x + d,
                        None => d,
                    });
                }
                if let Some(x) = num1 {
                    s = s + x / v.y.clone();
                }
                let mut num2: Option<T> = None;
                for (cf, pw) in [(e, 2u32), (f, 1), (g, 0)] {
                    if let Some(cf) = coef::<T>(cf) {
                        let t = if pw == 0 { cf } else { cf * v.w.powi(pw) };
                        num2 = Some(match num2 {
                            Some(x) => x + t,
                            None => t,
                        });
                    }
                }
                if let Some(x) = num2 {
                    s = s - x / (T::int(2) * v.y.sqr());
                }
                v.n.clone() * s
            }
            Form::LogP(cs) => {
                let zr = v.z.recip();
                let mut tail = T::int(0);
                for &(num, den) in cs.iter().rev() {
                    tail = (tail + T::ratio(num, den)) * zr.clone();
                }
                v.n.clone() * (v.z.clone() - T::int(1) - tail)
            }
        }
    }

    /// Signed slack: positive when the inequality holds.
    pub fn margin<T: Real>(&self, v: &Vars<T>, theta: &T) -> T {
        let lhs = match self.target {
            Target::Prime => v.p.clone(),
            Target::Theta => theta.clone(),
        };
        let rhs = self.expr(v);
        match self.side {
            Side::Lower => lhs - rhs,
            Side::Upper => rhs - lhs,
        }
    }

    fn check_domain(&self, n: u64) -> Result<()> {
        if n < self.domain_min {
            return Err(Error::arg(format!("{} is defined for n >= {}, got {n}", self.id, self.domain_min)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Indeterminate,
}

impl Verdict {
    /// Classifies a margin that must be `> 0` (strict) or `>= 0`.
    pub fn of<E: Enclosure>(margin: &E, strict: bool) -> Verdict {
        let (lo, hi) = (margin.lower(), margin.upper());
        if lo.is_nan() || hi.is_nan() {
            return Verdict::Indeterminate;
        }
        let (pass, fail) = if strict {
            (lo > 0.0, hi <= 0.0)
        } else {
            (lo >= 0.0, hi < 0.0)
        };
        match (pass, fail) {
            (true, _) => Verdict::Holds,
            (_, true) => Verdict::Fails,
            _ => Verdict::Indeterminate,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub verdict: Verdict,
    pub margin: Interval,
}

/// Enclosure of the right-hand side of an index-only bound at `n`.
pub fn eval_bound(id: &str, n: u64) -> Result<Interval> {
    let spec = lookup(id)?;
    spec.check_domain(n)?;
    if spec.needs_prime() {
        return Err(Error::arg(format!("{id} is written in log p_n; evaluate it at a prime point")));
    }
    Ok(spec.expr(&Vars::<Interval>::compute(n, 0)?))
}

/// Right-hand side in any arithmetic, for index `n` with `n`-th prime `p`.
pub fn eval_bound_at<T: Real>(spec: &BoundSpec, n: u64, p: u64) -> Result<T> {
    spec.check_domain(n)?;
    Ok(spec.expr(&Vars::<T>::compute(n, p)?))
}

/// Compares the bound with the point's `p_n` (or `θ(p_n)`) in `f64`
/// interval arithmetic.
pub fn check_bound(id: &str, pt: &PrimePoint) -> Result<CheckOutcome> {
    let spec = lookup(id)?;
    spec.check_domain(pt.n)?;
    Ok(check_spec(spec, pt))
}

#[inline]
pub fn check_spec(spec: &BoundSpec, pt: &PrimePoint) -> CheckOutcome {
    let margin = spec.margin(&Vars::from_point(pt), &pt.theta);
    CheckOutcome { verdict: Verdict::of(&margin, spec.strict), margin }
}

#[derive(Serialize)]
struct ExportRow<'a> {
    id: &'a str,
    target: Target,
    side: Side,
    relation: &'a str,
    #[serde(serialize_with = "threshold_json")]
    claimed_threshold: Option<u64>,
    domain_min: u64,
    provenance: &'a str,
    conditional: bool,
    #[serde(skip_serializing_if = "str::is_empty")]
    note: &'a str,
}

fn threshold_json<S: Serializer>(t: &Option<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match t {
        Some(n) => s.serialize_u64(*n),
        None => s.serialize_str("conjectural/none"),
    }
}

/// `bounds.json`: the registry without its evaluators.
pub fn export_json() -> String {
    let rows: Vec<_> = REGISTRY
        .iter()
        .map(|b| ExportRow {
            id: b.id,
            target: b.target,
            side: b.side,
            relation: match (b.side, b.strict) {
                (Side::Lower, true) => ">",
                (Side::Lower, false) => ">=",
                (Side::Upper, true) => "<",
                (Side::Upper, false) => "<=",
            },
            claimed_threshold: b.claimed_threshold,
            domain_min: b.domain_min,
            provenance: b.provenance,
            conditional: b.conditional,
            note: b.note,
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("registry serializes")
}
