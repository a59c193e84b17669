//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field is the rationals, with arbitrary precision.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `p`, `-p` or `p/q`. The result is always in lowest terms.
pub fn parse(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = || Error::MalformedRational(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(num, den))
}

/// `p/q` with `q > 0` and `gcd(p, q) = 1`; integers print without a denominator.
pub fn format(value: &Scalar) -> String {
    value.to_string()
}

pub fn factorial(n: usize) -> Scalar {
    (1..=n as i64).fold(one(), |acc, k| acc * int(k))
}

pub fn is_unit_sign(value: &Scalar) -> bool {
    value.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reduces_and_normalizes_sign() {
        assert_eq!(parse("4/-6").unwrap(), ratio(-2, 3));
        assert_eq!(format(&parse("4/-6").unwrap()), "-2/3");
        assert_eq!(format(&parse(" 12 ").unwrap()), "12");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1.5").is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), one());
        assert_eq!(factorial(5), int(120));
    }
}
