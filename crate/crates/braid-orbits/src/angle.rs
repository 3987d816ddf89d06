//! Angles in units of π, defined modulo 2 and up to sign.
//!
//! A signature cell holds the value (1/π)·arccos(Tr/2) of some matrix
//! product. Such a value is only determined modulo 2 and up to a sign, so
//! the canonical representative is folded into [0, 1].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Reduce a rational into [0, 2).
pub fn reduce_mod2(q: &Rational) -> Rational {
    let two = Rational::from_integer(BigInt::from(2));
    let mut r = q - (q / &two).floor() * &two;
    if r.is_negative() {
        r += &two;
    }
    if r >= two {
        r = Rational::zero();
    }
    r
}

/// An angle in units of π: a rational defined modulo 2 and up to sign,
/// stored as its canonical representative in [0, 1].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle {
    value: Rational,
}

impl Angle {
    /// Canonical angle for an arbitrary rational (mod 2, sign folded).
    pub fn new(q: Rational) -> Self {
        let mut r = reduce_mod2(&q);
        if r > Rational::one() {
            r = Rational::from_integer(BigInt::from(2)) - r;
        }
        Angle { value: r }
    }

    pub fn zero() -> Self {
        Angle {
            value: Rational::zero(),
        }
    }

    pub fn from_i64(num: i64, den: i64) -> Self {
        Angle::new(rat(num, den))
    }

    /// The canonical representative in [0, 1].
    pub fn value(&self) -> &Rational {
        &self.value
    }

    /// Denominator of the canonical representative.
    pub fn denom(&self) -> BigInt {
        self.value.denom().clone()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// True when the angle is 0 or 1, i.e. the trace is ±2.
    pub fn is_integral(&self) -> bool {
        self.value.is_integer()
    }
}

/// Canonicalize a rational as an [`Angle`].
pub fn normalize_angle(q: Rational) -> Angle {
    Angle::new(q)
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Angle({})", self.value)
    }
}

/// Parse a rational from a "p/q" or integer string.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let n = BigInt::from_str(num.trim()).map_err(|e| format!("bad numerator: {e}"))?;
            let d = BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator: {e}"))?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n = BigInt::from_str(s).map_err(|e| format!("bad integer: {e}"))?;
            Ok(Rational::from_integer(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_representatives() {
        assert_eq!(Angle::from_i64(7, 3), Angle::from_i64(1, 3));
        assert_eq!(Angle::from_i64(-1, 2), Angle::from_i64(1, 2));
        assert_eq!(Angle::from_i64(5, 3), Angle::from_i64(1, 3));
        assert_eq!(Angle::from_i64(3, 2), Angle::from_i64(1, 2));
        assert_eq!(Angle::from_i64(2, 1), Angle::zero());
        assert_eq!(Angle::from_i64(-7, 4), Angle::from_i64(1, 4));
    }

    #[test]
    fn boundary_values() {
        assert!(Angle::from_i64(1, 1).is_integral());
        assert!(Angle::zero().is_integral());
        assert_eq!(Angle::from_i64(-1, 1), Angle::from_i64(1, 1));
        assert_eq!(Angle::from_i64(4, 2), Angle::zero());
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-5").unwrap(), rat(-5, 1));
        assert_eq!(parse_rational(" 7 / 2 ").unwrap(), rat(7, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn reduce_mod2_examples() {
        assert_eq!(reduce_mod2(&rat(5, 2)), rat(1, 2));
        assert_eq!(reduce_mod2(&rat(-1, 3)), rat(5, 3));
        assert_eq!(reduce_mod2(&rat(4, 1)), rat(0, 1));
    }
}
