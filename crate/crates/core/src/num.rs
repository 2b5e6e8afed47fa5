/// Shortest decimal that parses back to exactly `x`, always with a
/// fractional part (`30.0`, not `30`).
pub fn decimal(x: f64) -> String {
    let mut s = format!("{x}");
    if x.is_finite() && !s.contains('.') {
        s.push_str(".0");
    }
    s
}

/// Fixed 10-digit rounding with trailing zeros trimmed, for human-facing
/// derived quantities such as angles in degrees.
pub fn rounded(x: f64) -> String {
    let s = format!("{x:.10}");
    let s = s.trim_end_matches('0');
    let s = if s.ends_with('.') { format!("{s}0") } else { s.to_string() };
    if s == "-0.0" {
        "0.0".to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_forms() {
        assert_eq!(decimal(30.0), "30.0");
        assert_eq!(decimal(42.7), "42.7");
        assert_eq!(decimal(-0.5), "-0.5");
        assert_eq!(decimal(1e-7), "0.0000001");
        assert_eq!(decimal(1.0 / 3.0).parse::<f64>().unwrap(), 1.0 / 3.0);
    }

    #[test]
    fn rounded_forms() {
        assert_eq!(rounded(120.00000000000001), "120.0");
        assert_eq!(rounded(0.0), "0.0");
        assert_eq!(rounded(-1e-12), "0.0");
        assert_eq!(rounded(89.5), "89.5");
    }
}
