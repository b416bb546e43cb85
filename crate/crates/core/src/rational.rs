//! Exact rationals and the string form used in documents.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `"p"` or `"p/q"` with optional leading sign on `p`.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let malformed = || RationalParseError::Malformed(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num = parse_int(num).ok_or_else(malformed)?;
    let den = match den {
        Some(d) => {
            if d.starts_with(['-', '+']) {
                return Err(malformed());
            }
            parse_int(d).ok_or_else(malformed)?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(RationalParseError::ZeroDenominator(text.to_string()));
    }
    Ok(Rational::new(num, den))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Returns the value as `i64` when it is an integer that fits.
pub fn to_i64(value: &Rational) -> Option<i64> {
    if !value.is_integer() {
        return None;
    }
    i64::try_from(value.numer()).ok()
}

pub fn is_negative(value: &Rational) -> bool {
    value.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-1").unwrap(), int(-1));
        assert_eq!(
            parse_rational("6/4").unwrap(),
            Rational::new(BigInt::from(3), BigInt::from(2))
        );
        assert_eq!(
            parse_rational("-2/6").unwrap(),
            Rational::new(BigInt::from(-1), BigInt::from(3))
        );
    }

    #[test]
    fn rejects_bad_literals() {
        assert_eq!(
            parse_rational("1/0"),
            Err(RationalParseError::ZeroDenominator("1/0".into()))
        );
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/2/3").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert_eq!(format_rational(&parse_rational("-3/9").unwrap()), "-1/3");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn integer_conversion() {
        assert_eq!(to_i64(&int(-7)), Some(-7));
        assert_eq!(to_i64(&parse_rational("1/2").unwrap()), None);
    }
}
