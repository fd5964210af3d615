//! Number formatting shared by literals and reports.

/// Significant digits used for report fields.
pub const REPORT_DIGITS: usize = 6;

/// Significant digits used for amplitudes in state literals.
pub const AMPLITUDE_DIGITS: usize = 12;

/// `%g`-style rendering with `sig` significant digits and trailing zeros trimmed.
///
/// Negative zero and values that round to zero print as `0`.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= sig as i32 {
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    let fixed = format!("{:.*}", decimals, x);
    let fixed = trim_zeros(&fixed);
    if fixed == "-0" {
        "0".into()
    } else {
        fixed
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn fmt_report(x: f64) -> String {
    fmt_sig(x, REPORT_DIGITS)
}

pub fn fmt_amplitude(x: f64) -> String {
    // sub-tolerance noise would otherwise print as e.g. 1e-17
    if x.abs() < 1e-13 {
        return "0".into();
    }
    fmt_sig(x, AMPLITUDE_DIGITS)
}
