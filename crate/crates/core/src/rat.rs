//! Exact rational scalars and fraction-string parsing.
//!
//! Every numeric quantity in this crate is a [`Rat`] (an arbitrary-precision
//! rational). The scenario file format and all emitted artifacts use fraction
//! strings like `"3"`, `"-5/7"`; floating-point literals are never accepted
//! or produced.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse an exact fraction string: an optional sign, an integer, and an
/// optional `/denominator` part. Whitespace around the parts is accepted;
/// decimal points are not.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let bad = || Error::BadFraction(text.to_string());
    let s = text.trim();
    let (num_text, den_text) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num_text.parse().map_err(|_| bad())?;
    let denom: BigInt = match den_text {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(numer, denom))
}

/// Canonical fraction string: `numer` or `numer/denom`, reduced, sign on the
/// numerator. Inverse of [`parse_rat`].
pub fn format_rat(x: &Rat) -> String {
    x.to_string()
}

/// Strictly positive, i.e. `x > 0`.
pub fn is_positive(x: &Rat) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for text in ["0", "5", "-7", "3/4", "-3/4", "22/7"] {
            let x = parse_rat(text).unwrap();
            assert_eq!(format_rat(&x), text);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_rat("6/8").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("3/-4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat(" 1 / 2 ").unwrap(), rat(1, 2));
    }

    #[test]
    fn parse_rejects_floats_and_garbage() {
        for text in ["1.5", "", "/", "1/0", "1e3", "0x10", "1/2/3"] {
            assert!(parse_rat(text).is_err(), "accepted {text:?}");
        }
    }
}
