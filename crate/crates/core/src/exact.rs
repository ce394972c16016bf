//! Exact integer and rational primitives.

use alloc::string::String;
use core::fmt::Write;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("no roots; q undefined")]
    EmptyList,
    #[error("gcd_list expects positive entries, got {0}")]
    NonPositive(usize),
    #[error("malformed rational {0:?}")]
    BadRational(String),
}

/// Falling factorial `x (x-1) ... (x-j+1)`, equal to 1 for `j = 0`.
pub fn falling(x: i64, j: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..j as i64 {
        let factor = x - i;
        if factor == 0 {
            return BigInt::zero();
        }
        acc *= factor;
    }
    acc
}

/// Falling factorial in `i128`, or `None` on overflow.
pub fn falling_i128(x: i64, j: usize) -> Option<i128> {
    let mut acc: i128 = 1;
    for i in 0..j as i64 {
        let factor = (x - i) as i128;
        if factor == 0 {
            return Some(0);
        }
        acc = acc.checked_mul(factor)?;
    }
    Some(acc)
}

/// gcd of a nonempty list of positive integers.
pub fn gcd_list(values: &[usize]) -> Result<usize, ExactError> {
    let (first, rest) = values.split_first().ok_or(ExactError::EmptyList)?;
    let mut g = *first;
    for &v in values {
        if v == 0 {
            return Err(ExactError::NonPositive(v));
        }
    }
    for &v in rest {
        g = g.gcd(&v);
    }
    Ok(g)
}

/// `(-1)^e` as a small integer.
pub fn sign_pow(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Renders a rational as `"num/den"`; the denominator is always written.
pub fn format_rational(r: &Rational) -> String {
    let mut s = String::new();
    let _ = write!(s, "{}/{}", r.numer(), r.denom());
    s
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::BadRational(String::from(text));
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n = BigInt::from_str(text).map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Rounds a nonnegative-or-negative rational to `digits` decimal places
/// (half away from zero) and renders it.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r * Rational::from_integer(scale.clone());
    let twice = (scaled.numer() * 2i32).abs() + scaled.denom();
    let mut rounded = twice.div_floor(&(scaled.denom() * 2i32));
    let negative = scaled.is_negative();
    let mut out = String::new();
    if negative && !rounded.is_zero() {
        out.push('-');
    }
    let (int_part, frac_part) = rounded.div_rem(&scale);
    rounded = frac_part;
    let _ = write!(out, "{}", int_part);
    if digits > 0 {
        let frac = alloc::format!("{}", rounded);
        out.push('.');
        for _ in frac.len()..digits {
            out.push('0');
        }
        out.push_str(&frac);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn falling_examples() {
        assert_eq!(falling(5, 0), BigInt::from(1));
        assert_eq!(falling(-2, 2), BigInt::from(6));
        assert_eq!(falling(3, 5), BigInt::from(0));
        assert_eq!(falling(0, 0), BigInt::from(1));
        assert_eq!(falling(0, 1), BigInt::from(0));
    }

    #[test]
    fn falling_step_identity_exhaustive() {
        for x in -50i64..=50 {
            for j in 0..=20usize {
                assert_eq!(falling(x, j) * (x - j as i64), falling(x, j + 1), "x={x} j={j}");
            }
        }
    }

    #[test]
    fn falling_split_identity() {
        for k in 1..=30usize {
            for l in 0..k {
                for j in 0..=l {
                    for m in 1..=5usize {
                        let (k_, l_, m_) = (k as i64, l as i64, m as i64);
                        assert_eq!(
                            falling(k_ + m_ - 1, k - j),
                            falling(k_ + m_ - 1, k - l) * falling(l_ + m_ - 1, l - j),
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn falling_grows_beyond_u64() {
        let big = falling(24, 20);
        assert!(big > BigInt::from(u64::MAX));
        assert_eq!(falling_i128(24, 20).map(BigInt::from), Some(big));
        assert_eq!(falling_i128(200, 100), None);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_list(&[6]), Ok(6));
        assert_eq!(gcd_list(&[1, 6]), Ok(1));
        assert_eq!(gcd_list(&[4, 6, 10]), Ok(2));
        assert_eq!(gcd_list(&[]), Err(ExactError::EmptyList));
        assert_eq!(gcd_list(&[3, 0]), Err(ExactError::NonPositive(0)));
    }

    #[test]
    fn rational_text_round_trip() {
        let r = Rational::new(BigInt::from(-6), BigInt::from(4));
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), r);
        assert_eq!(parse_rational(" 7 ").unwrap(), Rational::from_integer(7.into()));
        assert_eq!(format_rational(&parse_rational("6").unwrap()), "6/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn decimal_rendering() {
        let six_fifths = Rational::new(6.into(), 5.into());
        assert_eq!(format_decimal(&six_fifths, 6), "1.200000");
        let third = Rational::new(1.into(), 3.into());
        assert_eq!(format_decimal(&third, 6), "0.333333");
        let two_thirds = Rational::new(2.into(), 3.into());
        assert_eq!(format_decimal(&two_thirds, 6), "0.666667");
        assert_eq!(format_decimal(&-two_thirds, 2), "-0.67");
        assert_eq!(format_decimal(&Rational::from_integer(3.into()), 0), "3");
    }

    #[test]
    fn rational_inverse_product_is_one() {
        for n in -7i64..=7 {
            for d in 1i64..=7 {
                if n == 0 {
                    continue;
                }
                let a = Rational::new(n.into(), d.into());
                let b = Rational::new(d.into(), n.into());
                assert!((a * b).is_one());
            }
        }
    }
}
