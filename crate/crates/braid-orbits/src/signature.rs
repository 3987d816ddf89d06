//! Signatures: assignments of trace angles to cells.
//!
//! The signature of an n-tuple assigns to each cell the angle θ with
//! Tr = 2cos(πθ) of the corresponding product of matrices. A *particular*
//! signature leaves some cells undefined; an *incomplete* signature is the
//! special case produced by braiding, where the undefined cells are exactly
//! those that mention one fixed index without its neighbor in every
//! equivalent notation. Parametric signatures carry affine expressions in
//! named parameters instead of concrete angles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::affine::AffineAngle;
use crate::angle::{Angle, Rational};
use crate::cells::{canonical_cell, cell_count, cell_representations, enumerate_cells, CellId};
use crate::cyclo::trace_to_angle;
use crate::tuple::{BraidDir, MonodromyTuple};

/// A (partial) assignment of values to the cells of an n-signature.
#[derive(Clone, PartialEq, Eq)]
pub struct SignatureMap<V> {
    n: usize,
    cells: BTreeMap<CellId, V>,
}

/// Signature with concrete angles; partial maps double as particular and
/// incomplete signatures.
pub type Signature = SignatureMap<Angle>;

/// Signature whose cells are affine expressions in named parameters.
pub type ParamSignature = SignatureMap<AffineAngle>;

impl<V: Clone> SignatureMap<V> {
    pub fn new(n: usize) -> Self {
        SignatureMap {
            n,
            cells: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, cell: CellId, value: V) {
        self.cells.insert(cell, value);
    }

    pub fn get(&self, cell: &CellId) -> Option<&V> {
        self.cells.get(cell)
    }

    pub fn cells(&self) -> impl Iterator<Item = (&CellId, &V)> {
        self.cells.iter()
    }

    pub fn defined_count(&self) -> usize {
        self.cells.len()
    }

    /// True when every cell of the n-signature is defined.
    pub fn is_complete(&self) -> bool {
        self.cells.len() == cell_count(self.n)
    }

    pub fn undefined_cells(&self) -> Vec<CellId> {
        enumerate_cells(self.n)
            .into_iter()
            .filter(|c| !self.cells.contains_key(c))
            .collect()
    }

    pub fn map_values<W: Clone>(&self, f: impl Fn(&V) -> W) -> SignatureMap<W> {
        SignatureMap {
            n: self.n,
            cells: self.cells.iter().map(|(c, v)| (c.clone(), f(v))).collect(),
        }
    }
}

impl<V: Clone + fmt::Debug> fmt::Debug for SignatureMap<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_map();
        for (c, v) in &self.cells {
            d.entry(&format_args!("{c}"), v);
        }
        d.finish()
    }
}

impl SignatureMap<AffineAngle> {
    /// Wrap a concrete signature as a constant parametric one.
    pub fn from_particular(s: &Signature) -> ParamSignature {
        s.map_values(|a| AffineAngle::constant(a.value().clone()))
    }

    pub fn parameters(&self) -> BTreeSet<String> {
        self.cells
            .values()
            .flat_map(|v| v.parameters().map(str::to_string))
            .collect()
    }

    /// Substitute one parameter by an affine expression in every cell.
    pub fn substitute(&self, name: &str, value: &AffineAngle) -> ParamSignature {
        self.map_values(|v| v.substitute(name, value))
    }

    /// Evaluate all parameters; fails if any cell mentions an unbound one.
    pub fn evaluate(&self, values: &BTreeMap<String, Rational>) -> Result<Signature, String> {
        let mut out = Signature::new(self.n);
        for (c, v) in &self.cells {
            let a = v
                .evaluate(values)
                .ok_or_else(|| format!("cell {c} mentions an unbound parameter"))?;
            out.insert(c.clone(), a);
        }
        Ok(out)
    }

    /// Downgrade to a concrete signature when no parameters remain.
    pub fn to_particular(&self) -> Option<Signature> {
        let mut out = Signature::new(self.n);
        for (c, v) in &self.cells {
            out.insert(c.clone(), v.as_angle()?);
        }
        Some(out)
    }
}

/// Compute the complete signature of a tuple.
///
/// Fails when some cell's trace is not of the form 2cos(πq) for rational q,
/// naming the offending cell.
pub fn signature_of_tuple(t: &MonodromyTuple) -> Result<Signature, String> {
    let n = t.len();
    let mut out = Signature::new(n);
    for cell in enumerate_cells(n) {
        let tr = t.product_over(cell.indices()).trace();
        let angle = trace_to_angle(&tr).ok_or_else(|| {
            format!("trace of cell {cell} is not 2cos of a rational multiple of pi")
        })?;
        out.insert(cell, angle);
    }
    Ok(out)
}

/// Apply a braid move to a signature, producing the incomplete signature of
/// the braided tuple.
///
/// A cell of the result is defined whenever some equivalent notation of it
/// can be rewritten, by the index relabeling the braid induces, into a cell
/// of the input; cells whose every notation involves the conjugated matrix
/// without its partner stay undefined.
pub fn braid_signature<V: Clone>(s: &SignatureMap<V>, k: i64, dir: BraidDir) -> SignatureMap<V> {
    let n = s.n;
    let k = (k.rem_euclid(n as i64)) as u8;
    let k = if k == 0 { n as u8 } else { k };
    let k1 = (k as usize % n + 1) as u8;
    let mut out = SignatureMap::new(n);
    for cell in enumerate_cells(n) {
        for rep in cell_representations(cell.indices(), n) {
            let has_k = rep.contains(&k);
            let has_k1 = rep.contains(&k1);
            // with both indices present the conjugations cancel and the
            // notation refers to the same cell of the input
            let old_indices: Vec<u8> = match dir {
                BraidDir::Forward => {
                    if has_k && !has_k1 {
                        continue;
                    }
                    if has_k {
                        rep
                    } else {
                        rep.iter().map(|&i| if i == k1 { k } else { i }).collect()
                    }
                }
                BraidDir::Backward => {
                    if has_k1 && !has_k {
                        continue;
                    }
                    if has_k1 {
                        rep
                    } else {
                        rep.iter().map(|&i| if i == k { k1 } else { i }).collect()
                    }
                }
            };
            let Ok(old) = canonical_cell(&old_indices, n) else {
                continue;
            };
            if let Some(v) = s.get(&old) {
                out.insert(cell.clone(), v.clone());
                break;
            }
        }
    }
    out
}

/// Lift a complete 4-signature to the particular 5-signature obtained by
/// splitting the matrix at `position` (1..=5) into a product of two.
///
/// Position p ≤ 4 splits the p-th matrix in place; position 5 splits the
/// last matrix across the wrap, so that the 4-tuple sits at indices 2..=5
/// with its last matrix spanning (5, 1). Exactly eight cells of the result
/// are defined.
pub fn induct_signature<V: Clone>(
    s4: &SignatureMap<V>,
    position: usize,
) -> Result<SignatureMap<V>, String> {
    if s4.n != 4 {
        return Err(format!("induction expects a 4-signature, got n={}", s4.n));
    }
    if !(1..=5).contains(&position) {
        return Err(format!("split position {position} out of range 1..=5"));
    }
    let p = position as u8;
    let lift = |j: u8| -> Vec<u8> {
        if p <= 4 {
            match j.cmp(&p) {
                std::cmp::Ordering::Less => vec![j],
                std::cmp::Ordering::Equal => vec![p, p + 1],
                std::cmp::Ordering::Greater => vec![j + 1],
            }
        } else if j < 4 {
            vec![j + 1]
        } else {
            vec![5, 1]
        }
    };
    let mut out = SignatureMap::new(5);
    for (cell, v) in &s4.cells {
        let indices: Vec<u8> = cell.indices().iter().flat_map(|&j| lift(j)).collect();
        let c5 = canonical_cell(&indices, 5)?;
        out.insert(c5, v.clone());
    }
    Ok(out)
}

/// Recognize the incomplete-signature pattern: a pair (a, b) of cyclically
/// adjacent indices such that the undefined cells are exactly those whose
/// every equivalent notation mentions a without b. Returns None for complete
/// signatures or partial signatures that fit no such pattern.
pub fn incomplete_pattern<V: Clone>(s: &SignatureMap<V>) -> Option<(u8, u8)> {
    let n = s.n;
    let undefined: BTreeSet<CellId> = s.undefined_cells().into_iter().collect();
    if undefined.is_empty() {
        return None;
    }
    let all = enumerate_cells(n);
    for a in 1..=n as u8 {
        for b in [(a as usize % n + 1) as u8, ((a as usize + n - 2) % n + 1) as u8] {
            let predicted: BTreeSet<CellId> = all
                .iter()
                .filter(|c| {
                    cell_representations(c.indices(), n)
                        .iter()
                        .all(|rep| rep.contains(&a) && !rep.contains(&b))
                })
                .cloned()
                .collect();
            if predicted == undefined {
                return Some((a, b));
            }
        }
    }
    None
}
