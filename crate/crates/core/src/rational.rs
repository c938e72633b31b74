//! Exact rationals and their `"p/q"` text form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational {text:?}: {reason}")]
pub struct ParseRationalError {
    pub text: String,
    pub reason: &'static str,
}

/// Parses `"p/q"` or `"p"`, with an optional sign on `p` only.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let fail = |reason| ParseRationalError { text: text.to_string(), reason };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num.strip_prefix(['-', '+']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(fail("numerator is not an integer"));
    }
    let numer: BigInt = num.parse().map_err(|_| fail("numerator is not an integer"))?;
    let denom = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(fail("denominator is not a positive integer"));
            }
            let d: BigInt = d.parse().map_err(|_| fail("denominator is not a positive integer"))?;
            if d.is_zero() {
                return Err(fail("zero denominator"));
            }
            d
        }
    };
    Ok(Rational::new(numer, denom))
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales `values` by their common denominator, returning the integer
/// numerators and the scale.
pub fn to_scaled_integers(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let scale = common_denominator(values);
    let ints = values
        .iter()
        .map(|v| v.numer() * (&scale / v.denom()))
        .collect();
    (ints, scale)
}

pub fn max_abs(values: &[BigInt]) -> BigInt {
    values.iter().map(|v| v.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signed_fractions() {
        assert_eq!(parse_rational("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-5/10").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("+7").unwrap(), int(7));
        assert_eq!(parse_rational("0").unwrap(), int(0));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["1/0", "", "a", "1/-2", "1/", "/2", "1.5", "--1", "1/2/3", " 1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(4)), "4");
    }

    #[test]
    fn scales_to_integers() {
        let (ints, scale) = to_scaled_integers(&[ratio(1, 2), ratio(-1, 3), int(2)]);
        assert_eq!(scale, BigInt::from(6));
        assert_eq!(ints, vec![BigInt::from(3), BigInt::from(-2), BigInt::from(12)]);
    }
}
