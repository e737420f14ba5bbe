//! Number formatting shared by the CSV writers.

/// Scientific notation with eight decimals and a signed two-digit exponent, e.g. `3.65375374E+00`.
pub fn sci(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    // print -0 as 0
    let v = if v == 0.0 { 0.0 } else { v };
    let s = format!("{v:.8E}");
    let (mantissa, exp) = s.split_once('E').expect("E format always has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}E{sign}{:02}", exp.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_table_style() {
        assert_eq!(sci(3.65375374), "3.65375374E+00");
        assert_eq!(sci(-1.66583390e-3), "-1.66583390E-03");
        assert_eq!(sci(14.9715463), "1.49715463E+01");
        assert_eq!(sci(0.0), "0.00000000E+00");
        assert_eq!(sci(-0.0), "0.00000000E+00");
        assert_eq!(sci(1.5e-120), "1.50000000E-120");
        assert_eq!(sci(f64::NAN), "NaN");
    }

    #[test]
    fn round_trips_to_nine_digits() {
        for v in [1.0 / 3.0, -2.0f64.ln(), 6.02214076e23, 1e-300] {
            let back: f64 = sci(v).parse().unwrap();
            assert!(((back - v) / v).abs() < 1e-8);
        }
    }
}
