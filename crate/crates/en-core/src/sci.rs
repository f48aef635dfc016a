use num_bigint::BigInt;
use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

/// Render `v` in decimal scientific notation with `sig_digits` significant
/// digits, rounding half-up. The exponent is `floor(log10 |v|)`; zero is
/// rendered as `0.0e0`.
pub fn sci_notation(v: &BigInt, sig_digits: usize) -> String {
    assert!(sig_digits >= 1, "at least one significant digit required");
    if v.is_zero() {
        return "0.0e0".to_string();
    }

    let digits = v.magnitude().to_string();
    let mut exponent = digits.len() as i64 - 1;

    let mantissa = if digits.len() <= sig_digits {
        let mut m = digits.clone();
        m.extend(std::iter::repeat_n('0', sig_digits - digits.len()));
        m
    } else {
        let prefix = &digits[..sig_digits];
        let next = digits.as_bytes()[sig_digits] - b'0';
        if next >= 5 {
            let bumped = prefix.parse::<BigUint>().expect("decimal digits") + BigUint::one();
            let mut m = bumped.to_string();
            if m.len() > sig_digits {
                // 99..9 rounded up to 10^sig: drop the trailing zero and
                // shift the exponent.
                m.truncate(sig_digits);
                exponent += 1;
            }
            m
        } else {
            prefix.to_string()
        }
    };

    let sign = if v.is_negative() { "-" } else { "" };
    if sig_digits == 1 {
        format!("{}{}e{}", sign, mantissa, exponent)
    } else {
        format!("{}{}.{}e{}", sign, &mantissa[..1], &mantissa[1..], exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_values_get_zero_padded() {
        assert_eq!(sci_notation(&BigInt::from(1000), 4), "1.000e3");
        assert_eq!(sci_notation(&BigInt::from(7), 3), "7.00e0");
    }

    #[test]
    fn rounding_is_half_up() {
        assert_eq!(sci_notation(&BigInt::from(-123456), 3), "-1.23e5");
        assert_eq!(sci_notation(&BigInt::from(123456), 4), "1.235e5");
        assert_eq!(sci_notation(&BigInt::from(12350), 3), "1.24e4");
        assert_eq!(sci_notation(&BigInt::from(12349), 3), "1.23e4");
    }

    #[test]
    fn carry_propagates_into_the_exponent() {
        assert_eq!(sci_notation(&BigInt::from(999), 2), "1.0e3");
        assert_eq!(sci_notation(&BigInt::from(-9996), 3), "-1.00e4");
    }

    #[test]
    fn single_digit_mantissa_has_no_point() {
        assert_eq!(sci_notation(&BigInt::from(15), 1), "2e1");
        assert_eq!(sci_notation(&BigInt::from(14), 1), "1e1");
    }

    #[test]
    fn zero_by_convention() {
        assert_eq!(sci_notation(&BigInt::from(0), 5), "0.0e0");
    }

    #[test]
    fn power_of_two_tower() {
        let v = BigInt::from(2).pow(2048);
        assert_eq!(sci_notation(&v, 10), "3.231700607e616");
    }
}
