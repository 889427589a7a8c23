//! Text encoding of exact rationals.
//!
//! Wire form is `num/den` in lowest terms with a positive denominator, the
//! sign carried on the numerator, and the bare string `0` for zero. Integers
//! keep their `/1` suffix so every nonzero value has the same shape.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::BigRational;
use crate::error::{Error, Result};

pub fn to_wire(value: &BigRational) -> String {
    if value.is_zero() {
        "0".to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `a/b`, a bare integer `a`, or `0`. Non-reduced input such as `2/4`
/// is accepted and reduced; whitespace, a zero denominator and a sign on the
/// denominator are rejected.
pub fn from_wire(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    if text.is_empty() || text.chars().any(char::is_whitespace) {
        return Err(bad());
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    if den.starts_with(['-', '+']) || num.starts_with('+') {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(num, den))
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(value: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(value.into())
}

/// Lossy conversion used only for reporting and entropy.
pub fn to_f64(value: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or_else(|| {
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn encodes() {
        assert_eq!(to_wire(&rational(0, 5)), "0");
        assert_eq!(to_wire(&rational(2, 4)), "1/2");
        assert_eq!(to_wire(&rational(3, -6)), "-1/2");
        assert_eq!(to_wire(&rational(7, 1)), "7/1");
    }

    #[test]
    fn decodes() {
        assert_eq!(from_wire("0").unwrap(), rational(0, 1));
        assert_eq!(from_wire("-5/1848").unwrap(), rational(-5, 1848));
        assert_eq!(from_wire("2/4").unwrap(), rational(1, 2));
        assert_eq!(from_wire("3").unwrap(), rational(3, 1));
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "1/ 2", " 1/2", "1/0", "1/-2", "a/b", "1//2", "+1/2", "1/2/3"] {
            assert!(from_wire(s).is_err(), "{s:?} should not parse");
        }
    }

    proptest! {
        #[test]
        fn wire_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let q = rational(n, d);
            let text = to_wire(&q);
            prop_assert!(!text.contains(' '));
            prop_assert_eq!(from_wire(&text).unwrap(), q);
        }
    }
}
