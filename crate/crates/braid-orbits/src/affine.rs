//! Parametric angle expressions: integer-coefficient linear forms in named
//! parameters plus a rational free term modulo 2.
//!
//! Parametric signature cells keep the full mod-2 range of the free term and
//! do not fold signs: the sign choice is a branching decision made while
//! merging signatures, not a property of a single cell.

use crate::angle::{reduce_mod2, Angle, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Linear form `Σ cᵢ·pᵢ + free` with integer cᵢ and `free` taken modulo 2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AffineAngle {
    coeffs: BTreeMap<String, i64>,
    free: Rational,
}

impl AffineAngle {
    pub fn constant(free: Rational) -> Self {
        AffineAngle {
            coeffs: BTreeMap::new(),
            free: reduce_mod2(&free),
        }
    }

    pub fn parameter(name: &str) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(name.to_string(), 1);
        AffineAngle {
            coeffs,
            free: Rational::zero(),
        }
    }

    pub fn new(coeffs: BTreeMap<String, i64>, free: Rational) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| *c != 0).collect();
        AffineAngle {
            coeffs,
            free: reduce_mod2(&free),
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<String, i64> {
        &self.coeffs
    }

    pub fn free(&self) -> &Rational {
        &self.free
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Folds a constant form into a canonical [`Angle`].
    pub fn as_angle(&self) -> Option<Angle> {
        self.is_constant().then(|| Angle::new(self.free.clone()))
    }

    pub fn parameters(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(|s| s.as_str())
    }

    pub fn coeff(&self, name: &str) -> i64 {
        self.coeffs.get(name).copied().unwrap_or(0)
    }

    /// Largest absolute coefficient (0 for constants).
    pub fn max_coeff(&self) -> i64 {
        self.coeffs.values().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &AffineAngle) -> AffineAngle {
        let mut coeffs = self.coeffs.clone();
        for (name, c) in &other.coeffs {
            *coeffs.entry(name.clone()).or_insert(0) += c;
        }
        AffineAngle::new(coeffs, &self.free + &other.free)
    }

    pub fn neg(&self) -> AffineAngle {
        let coeffs = self.coeffs.iter().map(|(n, c)| (n.clone(), -c)).collect();
        AffineAngle::new(coeffs, -&self.free)
    }

    pub fn sub(&self, other: &AffineAngle) -> AffineAngle {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> AffineAngle {
        let coeffs = self.coeffs.iter().map(|(n, c)| (n.clone(), c * k)).collect();
        AffineAngle::new(coeffs, &self.free * Rational::from_integer(k.into()))
    }

    /// Substitute a parameter by an affine expression.
    pub fn substitute(&self, name: &str, value: &AffineAngle) -> AffineAngle {
        match self.coeffs.get(name) {
            None => self.clone(),
            Some(&c) => {
                let mut rest = self.clone();
                rest.coeffs.remove(name);
                rest.add(&value.scale(c))
            }
        }
    }

    /// Substitute every parameter by a rational value, yielding an angle.
    pub fn evaluate(&self, values: &BTreeMap<String, Rational>) -> Option<Angle> {
        let mut total = self.free.clone();
        for (name, c) in &self.coeffs {
            let v = values.get(name)?;
            total += v * Rational::from_integer((*c).into());
        }
        Some(Angle::new(total))
    }

    /// Rename parameters via the given map; unmapped names are kept.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> AffineAngle {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(n, c)| (map.get(n).cloned().unwrap_or_else(|| n.clone()), *c))
            .collect();
        AffineAngle::new(coeffs, self.free.clone())
    }
}

impl From<Angle> for AffineAngle {
    fn from(a: Angle) -> Self {
        AffineAngle::constant(a.value().clone())
    }
}

impl fmt::Display for AffineAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, c) in &self.coeffs {
            if *c < 0 {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{name}")?;
            first = false;
        }
        if self.coeffs.is_empty() {
            write!(f, "{}", self.free)?;
        } else if !self.free.is_zero() {
            write!(f, "+{}", self.free)?;
        }
        Ok(())
    }
}

impl fmt::Debug for AffineAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineAngle({self})")
    }
}

/// Parse an affine expression such as `x+y`, `2x-1/3`, `-w+5/3`, `1/2`.
pub fn parse_affine(s: &str) -> Result<AffineAngle, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty expression".into());
    }
    let mut coeffs: BTreeMap<String, i64> = BTreeMap::new();
    let mut free = Rational::zero();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let sign = if let Some(r) = rest.strip_prefix('-') {
            rest = r;
            -1i64
        } else {
            rest = rest.strip_prefix('+').unwrap_or(rest);
            1i64
        };
        let end = rest
            .char_indices()
            .skip(1)
            .find(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        let split = term
            .char_indices()
            .find(|(_, c)| c.is_ascii_alphabetic())
            .map(|(i, _)| i);
        match split {
            Some(i) => {
                let coeff = if i == 0 {
                    1
                } else {
                    term[..i]
                        .parse::<i64>()
                        .map_err(|e| format!("bad coefficient in '{term}': {e}"))?
                };
                let name = &term[i..];
                if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(format!("bad parameter name '{name}'"));
                }
                *coeffs.entry(name.to_string()).or_insert(0) += sign * coeff;
            }
            None => {
                let q = crate::angle::parse_rational(term)?;
                free += q * Rational::from_integer(sign.into());
            }
        }
    }
    Ok(AffineAngle::new(coeffs, free))
}
