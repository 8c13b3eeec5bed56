use primebound::Interval;

/// Midpoint to 15 significant digits with the enclosure width, e.g.
/// `8.15820747283095 [width 1.8e-15]`.
pub fn real(iv: Interval) -> String {
    if !iv.is_finite() {
        return format!("[{}, {}]", iv.lo, iv.hi);
    }
    let m = iv.mid();
    let digits = if m == 0.0 || (1e-4..1e15).contains(&m.abs()) {
        let mag = if m == 0.0 { 0 } else { m.abs().log10().floor() as i32 };
        let decimals = (14 - mag).max(0) as usize;
        let s = format!("{m:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{m:.14e}")
    };
    format!("{digits} [width {:.1e}]", iv.hi - iv.lo)
}

pub fn json<T: serde::Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes")
}

/// Minimal CSV quoting for free-text fields.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
