//! Exact decimal and fraction literals.

use num_rational::Ratio;

use super::Real;
use crate::error::{Error, Result};

pub type Q = Ratio<i128>;

/// Parses `"3.05"`, `"-1e-5"`, `"7/20"` or `"12"` into an exact rational.
pub fn parse(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("rational `{s}`"));
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| bad())?;
        let d: i128 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: i128 = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let pow = |k: i32| 10i128.checked_pow(k.unsigned_abs()).ok_or_else(bad);
    let q = if scale >= 0 {
        Q::from_integer(digits.checked_mul(pow(scale)?).ok_or_else(bad)?)
    } else {
        Q::new(digits, pow(-scale)?)
    };
    Ok(if neg { -q } else { q })
}

/// Enclosure of an exact rational.
pub fn lift<T: Real>(q: &Q) -> T {
    T::big_ratio(*q.numer(), *q.denom())
}

/// `"3.05"` when the decimal expansion is exact and short, `"n/d"` otherwise.
pub fn format(q: &Q) -> String {
    let (n, d) = (*q.numer(), *q.denom());
    let (mut twos, mut fives, mut r) = (0u32, 0u32, d);
    while r % 2 == 0 {
        r /= 2;
        twos += 1;
    }
    while r % 5 == 0 {
        r /= 5;
        fives += 1;
    }
    let k = twos.max(fives);
    if r != 1 || k > 30 {
        return format!("{n}/{d}");
    }
    if k == 0 {
        return n.to_string();
    }
    let scaled = n * (10i128.pow(k) / d);
    let sign = if scaled < 0 { "-" } else { "" };
    let digits = format!("{:0>width$}", scaled.unsigned_abs(), width = k as usize + 1);
    let (int, frac) = digits.split_at(digits.len() - k as usize);
    format!("{sign}{int}.{}", frac.trim_end_matches('0'))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse("5.2").unwrap(), Q::new(26, 5));
        assert_eq!(parse("-0.105").unwrap(), Q::new(-21, 200));
        assert_eq!(parse("1e-5").unwrap(), Q::new(1, 100_000));
        assert_eq!(parse("3.05").unwrap(), Q::new(61, 20));
        assert_eq!(parse("2/4").unwrap(), Q::new(1, 2));
        assert_eq!(parse("12").unwrap(), Q::from_integer(12));
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", ".", "1.2.3", "abc", "1/0", "1e"] {
            assert!(parse(s).is_err(), "{s}");
        }
    }
}
