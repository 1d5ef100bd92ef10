//! Number formatting for CSV output.

/// Formats `x` with `digits` significant digits, trimming trailing zeros but
/// keeping one digit after the point (`1.0`, `0.5`, `0.123456789012`).
/// Magnitudes below `1e-5` use exponent notation.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0.0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    // the exponent of the rounded value, so 0.9999.. becomes 1.0 and not 0.99..
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 {
        return format!("{}e{}", trim(mantissa), exp);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim(&format!("{:.*}", decimals, x))
}

fn trim(s: &str) -> String {
    if !s.contains('.') {
        return format!("{s}.0");
    }
    let t = s.trim_end_matches('0');
    if t.ends_with('.') {
        format!("{t}0")
    } else {
        t.to_string()
    }
}
