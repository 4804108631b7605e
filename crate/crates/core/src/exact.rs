//! Arbitrary-precision helpers shared by the exact computations.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact rational number with arbitrary-precision numerator and denominator,
/// always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// The exact rational value of a finite double.
///
/// # Panics
/// If `x` is NaN or infinite.
pub fn rational_from_f64(x: f64) -> Rational {
    BigRational::from_float(x).expect("finite float")
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
pub(crate) fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

/// Parses `p/q` or a decimal literal such as `-0.125` or `2.5e-3` exactly,
/// so `0.1` becomes `1/10` rather than the nearest double.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::domain(format!("'{s}' is not a decimal number or fraction"));
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::domain(format!("'{s}' has a zero denominator")));
        }
        return Ok(Rational::new(num, den));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    let all_digits = |x: &str| x.bytes().all(|b| b.is_ascii_digit());
    if int_part.len() + frac_part.len() == 0 || !all_digits(int_part) || !all_digits(frac_part) {
        return Err(bad());
    }
    let mut value: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| bad())?;
    if negative {
        value = -value;
    }
    let scale = exp as i64 - frac_part.len() as i64;
    if scale.abs() > 10_000 {
        return Err(Error::domain(format!("'{s}' is out of range")));
    }
    let ten = BigInt::from(10);
    let factor = num_traits::pow(ten, scale.unsigned_abs() as usize);
    Ok(if scale >= 0 { Rational::from_integer(value * factor) } else { Rational::new(value, factor) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 0), BigInt::from(1));
        assert_eq!(binomial(5, 5), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::zero());
        // beyond u64
        assert_eq!(binomial(70, 35).to_string(), "112186277816662845432");
    }

    #[test]
    fn float_round_trip_is_exact() {
        for x in [0.1, 1.0 / 3.0, 2.5e-300, 123456.789] {
            assert_eq!(rational_to_f64(&rational_from_f64(x)), x);
        }
        assert_eq!(rational_to_f64(&ratio(11, 18)), 11.0 / 18.0);
    }

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_rational("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational("-2.5e-1").unwrap(), ratio(-1, 4));
        assert_eq!(parse_rational("3E2").unwrap(), ratio(300, 1));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("+7.").unwrap(), ratio(7, 1));
        assert_eq!(parse_rational(" 6/8 ").unwrap(), ratio(3, 4));
        for bad in ["", ".", "abc", "1/0", "1e", "0x10", "1.2.3", "--1", "nan", "1e99999"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }
}
