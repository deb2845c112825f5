//! Exact rational scalars.
//!
//! Every weight and flow value in the crate is a [`Rational`]: an arbitrary
//! precision fraction kept in lowest terms with a positive denominator.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use num_rational::BigRational as Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}`")]
    InvalidInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("denominator must be positive in `{0}`")]
    NegativeDenominator(String),
}

/// Parses `<int>` or `<int>/<posint>`.
pub fn parse_rational(text: &str) -> Result<Rational, RationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(RationalError::Empty);
    }
    let int = |s: &str| -> Result<BigInt, RationalError> {
        // BigInt accepts a leading '+', the format does not.
        if s.is_empty() || s.starts_with('+') {
            return Err(RationalError::InvalidInteger(s.to_string()));
        }
        s.parse::<BigInt>()
            .map_err(|_| RationalError::InvalidInteger(s.to_string()))
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(int(text)?)),
        Some((num, den)) => {
            let num = int(num)?;
            let den = int(den)?;
            if den.is_zero() {
                return Err(RationalError::ZeroDenominator(text.to_string()));
            }
            if den.is_negative() {
                return Err(RationalError::NegativeDenominator(text.to_string()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Displays a rational as `p/q` in lowest terms, or `p` when `q = 1`.
pub struct Q<'a>(pub &'a Rational);

impl fmt::Display for Q<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

pub fn format_rational(q: &Rational) -> String {
    Q(q).to_string()
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Least common multiple of the denominators; used to clear fractions
/// before fraction-free elimination.
pub(crate) fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("-1").unwrap(), int(-1));
        assert_eq!(parse_rational("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("0/5").unwrap(), int(0));
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(
            parse_rational("3/0"),
            Err(RationalError::ZeroDenominator("3/0".into()))
        );
        assert!(matches!(
            parse_rational("1/-2"),
            Err(RationalError::NegativeDenominator(_))
        ));
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("+1").is_err());
        assert!(parse_rational("/2").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_without_unit_denominator() {
        assert_eq!(format_rational(&rat(2, 6)), "1/3");
        assert_eq!(format_rational(&rat(-4, 2)), "-2");
        assert_eq!(format_rational(&int(0)), "0");
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let q = rat(n, d);
            prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
    }
}
