//! Iterative solver for integer linear systems over angles defined modulo 2.
//!
//! Equations have integer coefficients and rational free terms; both the
//! variables and the equations are understood modulo 2. Elimination proceeds
//! by a Euclidean-style reduction on the smallest nonzero coefficient; when
//! an equation degenerates to k·V ≡ f with |k| ≥ 2 the solution branches
//! over the k residues, which is why the result is a *list* of solution
//! families, each possibly retaining free parameters.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::affine::AffineAngle;
use crate::angle::{rat, reduce_mod2, Rational};

/// One equation: Σ coeffs[v]·v ≡ free (mod 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub coeffs: BTreeMap<String, i64>,
    pub free: Rational,
}

impl Equation {
    pub fn new(coeffs: BTreeMap<String, i64>, free: Rational) -> Self {
        let mut e = Equation { coeffs, free };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        self.coeffs.retain(|_, c| *c != 0);
        self.free = reduce_mod2(&self.free);
    }

    /// Add `factor` times `other` to this equation.
    fn add_multiple(&mut self, other: &Equation, factor: i64) {
        for (v, c) in &other.coeffs {
            *self.coeffs.entry(v.clone()).or_insert(0) += factor * c;
        }
        self.free += Rational::from_integer(factor.into()) * &other.free;
        self.normalize();
    }

    /// Replace variable `v` by the affine expression `x`.
    fn substitute(&mut self, v: &str, x: &AffineAngle) {
        let Some(c) = self.coeffs.remove(v) else {
            return;
        };
        for (w, cw) in x.coeffs() {
            *self.coeffs.entry(w.clone()).or_insert(0) += c * cw;
        }
        self.free -= Rational::from_integer(c.into()) * x.free();
        self.normalize();
    }
}

/// A system of equations modulo 2.
#[derive(Clone, Debug, Default)]
pub struct ModularLinearSystem {
    pub equations: Vec<Equation>,
}

impl ModularLinearSystem {
    pub fn new(equations: Vec<Equation>) -> Self {
        ModularLinearSystem { equations }
    }

    fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> = self
            .equations
            .iter()
            .flat_map(|e| e.coeffs.keys().cloned())
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }
}

/// One solution branch: every original variable expressed as an affine
/// function of the remaining free parameters (a free parameter maps to
/// itself).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SolutionFamily {
    pub assignments: BTreeMap<String, AffineAngle>,
}

impl SolutionFamily {
    pub fn free_parameters(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .assignments
            .values()
            .flat_map(|x| x.parameters().map(str::to_string))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverError {
    /// The input violates the contract (free term not a multiple of 1/2520).
    InvalidSystem(String),
    /// The division step met a modulus outside the guaranteed range; the
    /// reduction's correctness assumptions are broken.
    InternalInconsistency(String),
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::InvalidSystem(m) => write!(f, "invalid system: {m}"),
            SolverError::InternalInconsistency(m) => {
                write!(f, "internal consistency failure: {m}")
            }
        }
    }
}

impl std::error::Error for SolverError {}

/// Multiplier f minimizing |c + f·k| (|k| ≥ 1).
fn reducing_factor(c: i64, k: i64) -> i64 {
    let q = c / k;
    let mut best = -q;
    for cand in [-q - 1, -q + 1] {
        if (c + cand * k).abs() < (c + best * k).abs() {
            best = cand;
        }
    }
    best
}

struct State {
    eqs: Vec<Equation>,
    exprs: BTreeMap<String, AffineAngle>,
}

impl State {
    fn substitute(&mut self, v: &str, x: &AffineAngle) {
        for eq in &mut self.eqs {
            eq.substitute(v, x);
        }
        for e in self.exprs.values_mut() {
            *e = e.substitute(v, x);
        }
    }
}

/// Solve a modulo-2 linear system, returning every solution family.
///
/// An empty list means the system has no solutions. Errors distinguish
/// invalid input from a breakdown of the division step's divisibility
/// guarantees (modulus must divide 5040, free term a multiple of |k|/2520).
pub fn solve_modular_system(
    sys: &ModularLinearSystem,
) -> Result<Vec<SolutionFamily>, SolverError> {
    for eq in &sys.equations {
        let scaled = eq.free.clone() * Rational::from_integer(2520.into());
        if !scaled.is_integer() {
            return Err(SolverError::InvalidSystem(format!(
                "free term {} is not a multiple of 1/2520",
                eq.free
            )));
        }
    }
    let exprs: BTreeMap<String, AffineAngle> = sys
        .variables()
        .into_iter()
        .map(|v| (v.clone(), AffineAngle::parameter(&v)))
        .collect();
    let mut pending = vec![State {
        eqs: sys.equations.clone(),
        exprs,
    }];
    let mut families = Vec::new();
    let mut steps = 0usize;
    while let Some(mut st) = pending.pop() {
        loop {
            steps += 1;
            if steps > 100_000 {
                return Err(SolverError::InternalInconsistency(
                    "elimination did not terminate".into(),
                ));
            }
            // smallest nonzero coefficient in the system
            let pivot = st
                .eqs
                .iter()
                .enumerate()
                .flat_map(|(i, eq)| eq.coeffs.iter().map(move |(v, c)| (i, v.clone(), *c)))
                .min_by_key(|(_, _, c)| c.abs());
            let Some((ei, var, k)) = pivot else {
                // all coefficients gone: solvable iff every free term vanishes
                if st.eqs.iter().all(|eq| eq.free.is_zero()) {
                    families.push(SolutionFamily {
                        assignments: st.exprs,
                    });
                }
                break;
            };
            if k.abs() == 1 {
                // express the pivot variable through the rest and eliminate
                let eq = st.eqs.remove(ei);
                let coeffs: BTreeMap<String, i64> = eq
                    .coeffs
                    .iter()
                    .filter(|(v, _)| **v != var)
                    .map(|(v, c)| (v.clone(), -k * c))
                    .collect();
                let x = AffineAngle::new(coeffs, reduce_mod2(&(eq.free * rat(k, 1))));
                st.substitute(&var, &x);
                continue;
            }
            // cross-row reduction against the pivot
            let pivot_eq = st.eqs[ei].clone();
            let mut acted = false;
            for (j, eq) in st.eqs.iter_mut().enumerate() {
                if j == ei {
                    continue;
                }
                if let Some(&c) = eq.coeffs.get(&var) {
                    if c.abs() >= k.abs() {
                        eq.add_multiple(&pivot_eq, reducing_factor(c, k));
                        acted = true;
                    }
                }
            }
            if acted {
                continue;
            }
            // in-row variable redefinition: fold large coefficients of other
            // variables into the pivot variable
            let big: Vec<(String, i64)> = st.eqs[ei]
                .coeffs
                .iter()
                .filter(|(v, c)| **v != var && c.abs() >= k.abs())
                .map(|(v, c)| (v.clone(), *c))
                .collect();
            if !big.is_empty() {
                for (w, cw) in big {
                    let q = -reducing_factor(cw, k);
                    // replace V by V − q·w; the pivot row's w-coefficient
                    // drops below |k|, other rows hold no V at this point
                    let mut coeffs = BTreeMap::new();
                    coeffs.insert(var.clone(), 1);
                    coeffs.insert(w.clone(), -q);
                    let x = AffineAngle::new(coeffs, Rational::zero());
                    st.substitute(&var, &x);
                }
                continue;
            }
            // lone equation k·V ≡ f: branch over the k residue classes
            let eq = st.eqs.remove(ei);
            let (k, f) = if k < 0 {
                (-k, reduce_mod2(&-eq.free))
            } else {
                (k, eq.free)
            };
            if 5040 % k != 0 {
                return Err(SolverError::InternalInconsistency(format!(
                    "modulus {k} does not divide 5040"
                )));
            }
            if !(f.clone() * rat(2520, k)).is_integer() {
                return Err(SolverError::InternalInconsistency(format!(
                    "free term {f} is not a multiple of {k}/2520"
                )));
            }
            for m in 0..k {
                let value = reduce_mod2(&((f.clone() + rat(2 * m, 1)) / rat(k, 1)));
                let mut branch = State {
                    eqs: st.eqs.clone(),
                    exprs: st.exprs.clone(),
                };
                branch.substitute(&var, &AffineAngle::constant(value));
                pending.push(branch);
            }
            break;
        }
    }
    families.sort();
    families.dedup();
    Ok(families)
}
