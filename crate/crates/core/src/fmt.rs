/// Formats `x` with `digits` significant digits in the style of C's `%g`,
/// trailing zeros removed.
pub fn sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= digits as i32 {
        return format!("{}e{}", trim(mantissa), exp);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim(&format!("{:.*}", decimals, x)).to_string()
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::sig;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(0.0, 12), "0");
        assert_eq!(sig(0.5, 12), "0.5");
        assert_eq!(sig(0.00126, 12), "0.00126");
        assert_eq!(sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(sig(1e-7, 12), "1e-7");
        assert_eq!(sig(-2.5, 3), "-2.5");
        assert_eq!(sig(f64::NAN, 12), "nan");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [std::f64::consts::PI, 0.1, 1e-300, 2.0f64.sqrt(), 123456.789] {
            assert_eq!(sig(x, 17).parse::<f64>().unwrap(), x);
        }
    }
}
