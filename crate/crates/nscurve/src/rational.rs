//! Exact rational scalars.
//!
//! `num::BigRational` already maintains the invariants we need (reduced
//! fraction, positive denominator), so the coefficient field is a thin layer
//! over it.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `p/q`, omitting the denominator when it is 1.
pub fn rat_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with an optional leading sign.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = |detail: &str| Error::Parse {
        what: format!("rational '{text}'"),
        detail: detail.to_string(),
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let numer: BigInt = num.parse().map_err(|_| bad("invalid integer"))?;
    let denom: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad("invalid denominator"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad("zero denominator"));
    }
    if denom.is_negative() {
        return Err(bad("denominator must be positive"));
    }
    Ok(Rational::new(numer, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_string_round_trip() {
        for (n, d) in [(1i64, 3i64), (-7, 2), (4, 1), (0, 5)] {
            let r = rat(n, d);
            assert_eq!(parse_rational(&rat_string(&r)).unwrap(), r);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1/-2").is_err());
    }
}
