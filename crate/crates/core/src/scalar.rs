//! Probability scalars.
//!
//! Everything that touches a probability is generic over [`Scalar`] so the
//! same dynamic programs run on `f64` (quick estimates) and on the exact
//! rational alias [`Rat`] (the type the solvers and parsers use).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

use crate::error::Error;

/// Numeric requirements for probability arithmetic.
pub trait Scalar: Num + PartialOrd + Clone + fmt::Debug {}

impl<T> Scalar for T where T: Num + PartialOrd + Clone + fmt::Debug {}

/// Exact rational probability; arbitrary precision.
pub type Rat = BigRational;

/// Parses a rational from either `"a/b"` (b > 0) or a finite decimal such as
/// `"0.6"` or `"1"`. Conversion is exact: `0.6` becomes `6/10`.
pub fn parse_rational(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim())
            .map_err(|e| Error::Parse(format!("bad numerator in {s:?}: {e}")))?;
        let den = BigInt::from_str(den.trim())
            .map_err(|e| Error::Parse(format!("bad denominator in {s:?}: {e}")))?;
        if den <= BigInt::zero() {
            return Err(Error::Parse(format!("denominator must be positive in {s:?}")));
        }
        return Ok(Rat::new(num, den));
    }
    // Finite decimal, optionally signed.
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Parse(format!("not a number: {s:?}")));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(Error::Parse(format!("not a finite decimal or fraction: {s:?}")));
    }
    let mut numer = if int_part.is_empty() {
        BigInt::zero()
    } else {
        BigInt::from_str(int_part).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?
    };
    let mut denom = BigInt::one();
    for c in frac_part.chars() {
        numer = numer * 10 + (c as u8 - b'0');
        denom *= 10;
    }
    Ok(Rat::new(numer * sign, denom))
}

/// Canonical text form `numer/denom` of a reduced rational.
pub fn format_rational(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Lossy conversion into any scalar, for running the probability DPs on
/// floating point.
pub fn to_f64(r: &Rat) -> f64 {
    let numer = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let denom = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    numer / denom
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("7/10").unwrap(), rat(7, 10));
        assert_eq!(parse_rational("0.6").unwrap(), rat(6, 10));
        assert_eq!(parse_rational("1").unwrap(), rat(1, 1));
        assert_eq!(parse_rational("0").unwrap(), rat(0, 1));
        assert_eq!(parse_rational(".25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("1.0").unwrap(), rat(1, 1));
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("a.b").is_err());
        assert!(parse_rational("1e-3").is_err());
    }

    #[test]
    fn round_trips_canonical_form() {
        for s in ["7/10", "0.5", "123/456"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
}
