//! Helpers for the concrete scalar `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d`, reduced. Panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"`. The fraction must already be in lowest terms
/// with a positive denominator so that printing and parsing round-trip.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = |why: &str| Error::Parse(format!("{s:?}: {why}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad("numerator is not an integer"))?;
    let Some(den) = den else {
        return Ok(Rational::from_integer(num));
    };
    if den.starts_with('-') || den.starts_with('+') {
        return Err(bad("denominator must be an unsigned integer"));
    }
    let den: BigInt = den.parse().map_err(|_| bad("denominator is not an integer"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    if !num.gcd(&den).is_one() {
        return Err(bad("fraction is not reduced"));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Exact square root when `r` is the square of a rational.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient; zero unless `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn is_integer(r: &Rational) -> bool {
    r.is_integer()
}

/// `r` as an `i64` when it is an integer in range.
pub fn to_i64(r: &Rational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3/4", "12345678901234567890/7"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
    }

    #[test]
    fn parse_rejects_noncanonical() {
        assert!(parse_rational("2/4").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_exact(&frac(1, 16)), Some(frac(1, 4)));
        assert_eq!(sqrt_exact(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(sqrt_exact(&frac(1, 2)), None);
        assert_eq!(sqrt_exact(&frac(-1, 4)), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(4, -1), BigInt::zero());
    }
}
