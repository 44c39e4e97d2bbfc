//! Canonical number formatting so serialized artifacts are byte-stable.

/// Rounds to 6 significant digits. All floats written into JSON artifacts go
/// through this, which keeps golden-file comparisons stable across platforms.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(5 - magnitude);
    (x * factor).round() / factor
}

/// Formats an interval endpoint the way instance names spell it: three
/// decimal places, with unbounded ends as `-inf` / `inf`.
pub fn format_bound(x: f64) -> String {
    if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else if x == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{x:.3}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_to_six_significant_digits() {
        assert_eq!(round_sig(0.123456789), 0.123457);
        assert_eq!(round_sig(123456789.0), 123457000.0);
        assert_eq!(round_sig(-0.000123456449), -0.000123456);
        assert_eq!(round_sig(0.0), 0.0);
    }

    #[test]
    fn bounds_format_like_instance_names() {
        assert_eq!(format_bound(f64::NEG_INFINITY), "-inf");
        assert_eq!(format_bound(6.5), "6.500");
        assert_eq!(format_bound(127.5), "127.500");
        assert_eq!(format_bound((7.125 + 7.1417) / 2.0), "7.133");
    }
}
