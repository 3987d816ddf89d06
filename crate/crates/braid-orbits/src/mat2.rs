//! 2×2 matrices with determinant 1 over a cyclotomic field.

use crate::cyclo::{CycloField, CycloNumber};
use crate::Rational;
use std::fmt;
use std::sync::Arc;

/// A 2×2 matrix over Q(ζ_N) with determinant exactly 1.
///
/// Entries are stored row-major: `[a, b, c, d]` for `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix {
    entries: [CycloNumber; 4],
}

impl UnimodularMatrix {
    /// Construct from entries, verifying det = 1.
    pub fn new(entries: [CycloNumber; 4]) -> Result<Self, String> {
        let m = UnimodularMatrix { entries };
        if m.det() != CycloNumber::one(m.field()) {
            return Err("determinant is not 1".into());
        }
        Ok(m)
    }

    /// Construct without the determinant check (for internal compositions
    /// that preserve unimodularity by construction).
    pub fn new_unchecked(entries: [CycloNumber; 4]) -> Self {
        UnimodularMatrix { entries }
    }

    pub fn identity(field: &Arc<CycloField>) -> Self {
        UnimodularMatrix {
            entries: [
                CycloNumber::one(field),
                CycloNumber::zero(field),
                CycloNumber::zero(field),
                CycloNumber::one(field),
            ],
        }
    }

    pub fn diagonal(e: CycloNumber) -> Self {
        let inv = e.inverse();
        let f = e.field().clone();
        UnimodularMatrix {
            entries: [e, CycloNumber::zero(&f), CycloNumber::zero(&f), inv],
        }
    }

    /// Anti-diagonal matrix [[0, v], [−1/v, 0]].
    pub fn anti_diagonal(v: CycloNumber) -> Self {
        let ninv = v.inverse().neg();
        let f = v.field().clone();
        UnimodularMatrix {
            entries: [CycloNumber::zero(&f), v, ninv, CycloNumber::zero(&f)],
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> &CycloNumber {
        &self.entries[2 * row + col]
    }

    pub fn entries(&self) -> &[CycloNumber; 4] {
        &self.entries
    }

    pub fn field(&self) -> &Arc<CycloField> {
        self.entries[0].field()
    }

    pub fn det(&self) -> CycloNumber {
        self.entries[0]
            .mul(&self.entries[3])
            .sub(&self.entries[1].mul(&self.entries[2]))
    }

    pub fn trace(&self) -> CycloNumber {
        self.entries[0].add(&self.entries[3])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &other.entries;
        UnimodularMatrix {
            entries: [
                a.mul(e).add(&b.mul(g)),
                a.mul(f).add(&b.mul(h)),
                c.mul(e).add(&d.mul(g)),
                c.mul(f).add(&d.mul(h)),
            ],
        }
    }

    /// Inverse via the adjugate (valid because det = 1).
    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = &self.entries;
        UnimodularMatrix {
            entries: [d.clone(), b.neg(), c.neg(), a.clone()],
        }
    }

    pub fn neg(&self) -> Self {
        UnimodularMatrix {
            entries: [
                self.entries[0].neg(),
                self.entries[1].neg(),
                self.entries[2].neg(),
                self.entries[3].neg(),
            ],
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == UnimodularMatrix::identity(self.field())
    }

    pub fn is_scalar(&self) -> bool {
        self.entries[1].is_zero()
            && self.entries[2].is_zero()
            && self.entries[0] == self.entries[3]
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries[1].is_zero() && self.entries[2].is_zero()
    }

    pub fn is_anti_diagonal(&self) -> bool {
        self.entries[0].is_zero() && self.entries[3].is_zero()
    }

    /// Conjugation g·M·g⁻¹.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.mul(self).mul(&g.inverse())
    }

    /// Embed all entries into a larger field.
    pub fn embed(&self, field: &Arc<CycloField>) -> Self {
        UnimodularMatrix {
            entries: [
                self.entries[0].embed(field),
                self.entries[1].embed(field),
                self.entries[2].embed(field),
                self.entries[3].embed(field),
            ],
        }
    }

    /// Largest representation size among entries, a growth heuristic.
    pub fn bit_size(&self) -> u64 {
        self.entries.iter().map(|e| e.bit_size()).max().unwrap_or(0)
    }

    /// Quadratic form whose roots are the eigenvector directions:
    /// Q(v₁, v₂) = c·v₁² + (d−a)·v₁v₂ − b·v₂², as coefficients (of v₁²,
    /// v₁v₂, v₂²). Identically zero exactly for scalar matrices.
    pub fn eigenvector_form(&self) -> [CycloNumber; 3] {
        let [a, b, c, d] = &self.entries;
        [c.clone(), d.sub(a), b.neg()]
    }

    /// Apply the matrix to a column vector.
    pub fn apply(&self, v: &[CycloNumber; 2]) -> [CycloNumber; 2] {
        let [a, b, c, d] = &self.entries;
        [
            a.mul(&v[0]).add(&b.mul(&v[1])),
            c.mul(&v[0]).add(&d.mul(&v[1])),
        ]
    }

    /// True when `v` is a (nonzero) eigenvector of the matrix.
    pub fn has_eigenvector(&self, v: &[CycloNumber; 2]) -> bool {
        let w = self.apply(v);
        v[0].mul(&w[1]).sub(&v[1].mul(&w[0])).is_zero()
    }
}

/// Build a matrix from rational entries.
pub fn mat_from_rationals(
    field: &Arc<CycloField>,
    entries: [Rational; 4],
) -> UnimodularMatrix {
    let [a, b, c, d] = entries;
    UnimodularMatrix::new_unchecked([
        CycloNumber::from_rational(field, a),
        CycloNumber::from_rational(field, b),
        CycloNumber::from_rational(field, c),
        CycloNumber::from_rational(field, d),
    ])
}

impl fmt::Debug for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{:?}, {:?}], [{:?}, {:?}]]",
            self.entries[0], self.entries[1], self.entries[2], self.entries[3]
        )
    }
}
