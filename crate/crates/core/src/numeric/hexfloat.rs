//! C99-style hexadecimal float text (`0x1.8p+1`), used where a value must
//! survive a round trip through a text file bit-for-bit.

use crate::error::{Error, Result};

const MANT_BITS: u32 = 52;
const MANT_MASK: u64 = (1 << MANT_BITS) - 1;

pub fn format(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    let sign = if x.is_sign_negative() { "-" } else { "" };
    if x.is_infinite() {
        return format!("{sign}inf");
    }
    let bits = x.to_bits();
    let biased = ((bits >> MANT_BITS) & 0x7ff) as i32;
    let mant = bits & MANT_MASK;
    if biased == 0 && mant == 0 {
        return format!("{sign}0x0p+0");
    }
    let (lead, exp) = if biased == 0 { (0, -1022) } else { (1, biased - 1023) };
    let mut digits = format!("{mant:013x}");
    while digits.ends_with('0') {
        digits.pop();
    }
    let frac = if digits.is_empty() { String::new() } else { format!(".{digits}") };
    format!("{sign}0x{lead}{frac}p{exp:+}")
}

pub fn parse(s: &str) -> Result<f64> {
    let bad = || Error::Parse(format!("hex float `{s}`"));
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let v = match body {
        "inf" => f64::INFINITY,
        "nan" => f64::NAN,
        _ => {
            let body = body.strip_prefix("0x").ok_or_else(bad)?;
            let (m, e) = body.split_once('p').ok_or_else(bad)?;
            let exp: i32 = e.parse().map_err(|_| bad())?;
            let (lead, frac) = m.split_once('.').unwrap_or((m, ""));
            if frac.len() > 13 || !(lead == "0" || lead == "1") {
                return Err(bad());
            }
            let frac_bits = if frac.is_empty() {
                0
            } else {
                u64::from_str_radix(frac, 16).map_err(|_| bad())? << (4 * (13 - frac.len()))
            };
            match (lead, exp) {
                ("0", _) if frac_bits == 0 => 0.0,
                ("0", -1022) => f64::from_bits(frac_bits),
                ("1", -1022..=1023) => f64::from_bits((((exp + 1023) as u64) << MANT_BITS) | frac_bits),
                _ => return Err(bad()),
            }
        }
    };
    Ok(if neg { -v } else { v })
}
