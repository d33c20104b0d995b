/// Formats `x` with 17 significant digits, in positional notation for
/// moderate magnitudes and scientific notation otherwise. Round-trips every
/// finite `f64` exactly.
pub fn format_sig17(x: f64) -> String {
    format_sig(x, 17)
}

/// Formats `x` with `digits` significant digits.
pub fn format_sig(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return "0.0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.*e}", digits - 1);
    let exp: i32 = sci.rsplit_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    if (-5..digits as i32 - 1).contains(&exp) {
        format!("{:.*}", (digits as i32 - 1 - exp) as usize, x)
    } else {
        sci
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_sig17(0.75), "0.75000000000000000");
        assert_eq!(format_sig17(2.0), "2.0000000000000000");
        assert_eq!(format_sig17(-(2f64.powi(-23))), "-1.1920928955078125e-7");
        assert_eq!(format_sig17(5308416.0), "5308416.0000000000");
        assert_eq!(format_sig17(0.0), "0.0");
    }

    #[test]
    fn six_digits() {
        assert_eq!(format_sig(1.0 / 3.0, 6), "0.333333");
        assert_eq!(format_sig(3145.7333509706855, 6), "3145.73");
        assert_eq!(format_sig(5308416.0, 6), "5.30842e6");
    }

    #[test]
    fn round_trips() {
        for x in [1.0 / 3.0, std::f64::consts::PI, 1e300, 2.5e-300, 123456.789, -9.87e-5] {
            assert_eq!(format_sig17(x).parse::<f64>().unwrap(), x);
        }
    }
}
