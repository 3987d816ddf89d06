//! Monodromy tuples in long form and the operations on them: braid moves,
//! symmetries, reduction/induction and triangularity testing.
//!
//! A tuple holds n matrices in SL(2,C) with product equal to the identity,
//! together with a label permutation. Braid moves act on positions; labels
//! ride along so that orbit length accounting (length × n!) is possible.

use crate::cyclo::{CycloField, CycloNumber};
use crate::mat2::UnimodularMatrix;
use std::fmt;
use std::sync::Arc;

/// Direction of a braid move at position k: `Forward` is B_{k,k+1},
/// `Backward` is its inverse B_{k+1,k}.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum BraidDir {
    Forward,
    Backward,
}

/// Symmetries of the set of tuples which are not orbit equivalences
/// (except the cyclic shift, which is a braid composition).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SymmetryOp {
    /// (M₁,…,Mₙ) → (M₂,…,Mₙ,M₁), labels rotated the same way.
    CyclicShift,
    /// Multiply M_p and M_q by −1 (p ≠ q); the product stays the identity.
    NegatePair(usize, usize),
    /// (M₁,…,Mₙ) → (Mₙ⁻¹,…,M₁⁻¹), labels reversed.
    InvertReverse,
}

/// n unimodular matrices with product = identity, plus a label permutation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonodromyTuple {
    matrices: Vec<UnimodularMatrix>,
    labels: Vec<u8>,
}

impl MonodromyTuple {
    /// Construct with identity labels; matrices are promoted into a common
    /// field. Fails if the product is not the identity or a determinant is
    /// not 1.
    pub fn new(matrices: Vec<UnimodularMatrix>) -> Result<Self, String> {
        let n = matrices.len();
        let labels = (1..=n as u8).collect();
        MonodromyTuple::with_labels(matrices, labels)
    }

    pub fn with_labels(matrices: Vec<UnimodularMatrix>, labels: Vec<u8>) -> Result<Self, String> {
        if matrices.len() < 2 {
            return Err("tuple needs at least two matrices".into());
        }
        if labels.len() != matrices.len() {
            return Err("label count differs from matrix count".into());
        }
        let mut seen: Vec<bool> = vec![false; matrices.len()];
        for &l in &labels {
            let i = l as usize;
            if i == 0 || i > matrices.len() || seen[i - 1] {
                return Err("labels are not a permutation".into());
            }
            seen[i - 1] = true;
        }
        let matrices = unify_fields(matrices);
        let t = MonodromyTuple { matrices, labels };
        t.verify()?;
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[UnimodularMatrix] {
        &self.matrices
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn field(&self) -> &Arc<CycloField> {
        self.matrices[0].field()
    }

    /// Matrix at 1-based position k, interpreted modulo n.
    pub fn matrix(&self, k: i64) -> &UnimodularMatrix {
        &self.matrices[self.idx(k)]
    }

    fn idx(&self, k: i64) -> usize {
        (k - 1).rem_euclid(self.matrices.len() as i64) as usize
    }

    /// Check det = 1 for each matrix and total product = identity; reports
    /// the first violated constraint.
    pub fn verify(&self) -> Result<(), String> {
        let field = self.field();
        let one = CycloNumber::one(field);
        for (i, m) in self.matrices.iter().enumerate() {
            if m.det() != one {
                return Err(format!("matrix {} has determinant != 1", i + 1));
            }
        }
        let mut p = UnimodularMatrix::identity(field);
        for m in &self.matrices {
            p = p.mul(m);
        }
        if !p.is_identity() {
            return Err("product of matrices is not the identity".into());
        }
        Ok(())
    }

    /// Product M_x · M_{x+1} · … · M_y of a cyclic run (1-based, inclusive;
    /// y may wrap past n).
    pub fn run_product(&self, x: i64, y: i64) -> UnimodularMatrix {
        let n = self.matrices.len() as i64;
        let len = (y - x).rem_euclid(n) + 1;
        let mut p = self.matrices[self.idx(x)].clone();
        for off in 1..len {
            p = p.mul(&self.matrices[self.idx(x + off)]);
        }
        p
    }

    /// Product over an explicit (1-based) index sequence.
    pub fn product_over(&self, indices: &[u8]) -> UnimodularMatrix {
        let mut p = UnimodularMatrix::identity(self.field());
        for &i in indices {
            p = p.mul(&self.matrices[self.idx(i as i64)]);
        }
        p
    }

    /// Conjugate the whole tuple by an invertible matrix (labels unchanged).
    pub fn conjugate_by(&self, g: &UnimodularMatrix) -> Self {
        let gi = g.inverse();
        let matrices = unify_fields(
            self.matrices
                .iter()
                .map(|m| g.mul(m).mul(&gi))
                .collect(),
        );
        MonodromyTuple {
            matrices,
            labels: self.labels.clone(),
        }
    }

    /// Positions k, k+1 replaced by their product; labels reset to the
    /// identity renumbering of the shorter tuple.
    pub fn reduce(&self, k: i64) -> MonodromyTuple {
        let n = self.matrices.len();
        let i = self.idx(k);
        let j = self.idx(k + 1);
        let joined = self.matrices[i].mul(&self.matrices[j]);
        let mut matrices = Vec::with_capacity(n - 1);
        if j == 0 {
            // Wrap-around join Mₙ·M₁: keep cyclic order starting at M₂.
            for m in &self.matrices[1..i] {
                matrices.push(m.clone());
            }
            matrices.push(joined);
        } else {
            matrices.extend_from_slice(&self.matrices[..i]);
            matrices.push(joined);
            matrices.extend_from_slice(&self.matrices[j + 1..]);
        }
        let labels = (1..=(n - 1) as u8).collect();
        MonodromyTuple { matrices, labels }
    }

    /// Position k replaced by the pair (C, C⁻¹·M_k); product invariant.
    pub fn induct(&self, k: i64, c: &UnimodularMatrix) -> MonodromyTuple {
        let n = self.matrices.len();
        let i = self.idx(k);
        let mut matrices = Vec::with_capacity(n + 1);
        matrices.extend_from_slice(&self.matrices[..i]);
        matrices.push(c.clone());
        matrices.push(c.inverse().mul(&self.matrices[i]));
        matrices.extend_from_slice(&self.matrices[i + 1..]);
        let labels = (1..=(n + 1) as u8).collect();
        MonodromyTuple {
            matrices: unify_fields(matrices),
            labels,
        }
    }

    pub fn apply_symmetry(&self, s: &SymmetryOp) -> MonodromyTuple {
        match s {
            SymmetryOp::CyclicShift => {
                let mut matrices = self.matrices.clone();
                matrices.rotate_left(1);
                let mut labels = self.labels.clone();
                labels.rotate_left(1);
                MonodromyTuple { matrices, labels }
            }
            SymmetryOp::NegatePair(p, q) => {
                assert_ne!(p, q, "negate-pair needs two distinct positions");
                let mut matrices = self.matrices.clone();
                let (i, j) = (self.idx(*p as i64), self.idx(*q as i64));
                matrices[i] = matrices[i].neg();
                matrices[j] = matrices[j].neg();
                MonodromyTuple {
                    matrices,
                    labels: self.labels.clone(),
                }
            }
            SymmetryOp::InvertReverse => {
                let matrices = self.matrices.iter().rev().map(|m| m.inverse()).collect();
                let labels = self.labels.iter().rev().cloned().collect();
                MonodromyTuple { matrices, labels }
            }
        }
    }

    /// Largest entry representation among all matrices.
    pub fn bit_size(&self) -> u64 {
        self.matrices.iter().map(|m| m.bit_size()).max().unwrap_or(0)
    }

    /// Embed all matrices into a larger field.
    pub fn embed(&self, field: &Arc<CycloField>) -> Self {
        MonodromyTuple {
            matrices: self.matrices.iter().map(|m| m.embed(field)).collect(),
            labels: self.labels.clone(),
        }
    }
}

impl fmt::Debug for MonodromyTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MonodromyTuple(n={}, labels={:?})", self.len(), self.labels)?;
        for m in &self.matrices {
            writeln!(f, "  {m:?}")?;
        }
        Ok(())
    }
}

/// Promote all matrices into the lcm of their fields.
fn unify_fields(matrices: Vec<UnimodularMatrix>) -> Vec<UnimodularMatrix> {
    let mut order = 1u64;
    for m in &matrices {
        order = num_integer::lcm(order, m.field().order() as u64);
    }
    let order = u32::try_from(order).expect("common field order overflow");
    if matrices.iter().all(|m| m.field().order() == order) {
        return matrices;
    }
    let field = CycloField::new(order);
    matrices.into_iter().map(|m| m.embed(&field)).collect()
}

/// One braid move: `Forward` is B_{k,k+1}: (M_k, M_{k+1}) →
/// (M_k·M_{k+1}·M_k⁻¹, M_k); `Backward` is B_{k+1,k}: (M_k, M_{k+1}) →
/// (M_{k+1}, M_{k+1}⁻¹·M_k·M_{k+1}). Labels N_k, N_{k+1} swap. The position
/// k is 1-based and interpreted modulo n.
pub fn braid_tuple(t: &MonodromyTuple, k: i64, dir: BraidDir) -> MonodromyTuple {
    let i = t.idx(k);
    let j = t.idx(k + 1);
    let mut matrices = t.matrices.clone();
    let (a, b) = (t.matrices[i].clone(), t.matrices[j].clone());
    match dir {
        BraidDir::Forward => {
            matrices[i] = a.mul(&b).mul(&a.inverse());
            matrices[j] = a;
        }
        BraidDir::Backward => {
            matrices[j] = b.inverse().mul(&a).mul(&b);
            matrices[i] = b;
        }
    }
    let mut labels = t.labels.clone();
    labels.swap(i, j);
    MonodromyTuple { matrices, labels }
}

/// The pairwise trace identity: two matrices have **no** common eigenvector
/// iff Tr(A)² + Tr(B)² + Tr(AB)² ≠ Tr(A)·Tr(B)·Tr(AB) + 4.
pub fn no_common_eigenvector_traces(
    tr_a: &CycloNumber,
    tr_b: &CycloNumber,
    tr_ab: &CycloNumber,
) -> bool {
    let four = CycloNumber::from_i64(tr_a.field(), 4);
    let lhs = tr_a.mul(tr_a).add(&tr_b.mul(tr_b)).add(&tr_ab.mul(tr_ab));
    let rhs = tr_a.mul(tr_b).mul(tr_ab).add(&four);
    lhs != rhs
}

/// Exact triangularity test: true iff a single nonzero vector is an
/// eigenvector of every matrix.
///
/// Eigenvector directions of a non-scalar matrix are the projective roots of
/// its quadratic [`UnimodularMatrix::eigenvector_form`]. A common direction
/// exists iff either every matrix is upper triangular (direction (1,0)), or
/// the polynomial gcd of all the forms, as polynomials in t for v = (t,1),
/// has a root — i.e. positive degree (any nonconstant polynomial has a root
/// over the algebraic closure). Scalar matrices are compatible with every
/// vector and are skipped.
pub fn is_triangular(t: &MonodromyTuple) -> bool {
    let field = t.field();
    let forms: Vec<[CycloNumber; 3]> = t
        .matrices
        .iter()
        .filter(|m| !m.is_scalar())
        .map(|m| m.eigenvector_form())
        .collect();
    if forms.is_empty() {
        return true;
    }
    if forms.iter().all(|f| f[0].is_zero()) {
        return true; // all upper triangular: common eigenvector (1,0)
    }
    // gcd over Q(ζ) of p(t) = q0·t² + q1·t + q2 for each form (q0,q1,q2).
    let mut g: Option<Vec<CycloNumber>> = None;
    for f in &forms {
        let p = poly_from_form(f, field);
        g = Some(match g {
            None => p,
            Some(g) => poly_gcd_cyclo(&g, &p),
        });
        if g.as_ref().unwrap().len() <= 1 {
            return false; // gcd is a nonzero constant: no common root
        }
    }
    true
}

fn poly_from_form(f: &[CycloNumber; 3], field: &Arc<CycloField>) -> Vec<CycloNumber> {
    // v = (t, 1): value q0·t² + q1·t + q2, stored lowest degree first.
    let mut p = vec![f[2].clone(), f[1].clone(), f[0].clone()];
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    let _ = field;
    p
}

fn poly_gcd_cyclo(a: &[CycloNumber], b: &[CycloNumber]) -> Vec<CycloNumber> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let trim = |p: &mut Vec<CycloNumber>| {
        while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
            p.pop();
        }
    };
    trim(&mut r0);
    trim(&mut r1);
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !(r1.len() == 1 && r1[0].is_zero()) {
        // remainder of r0 by r1
        let lead_inv = r1.last().unwrap().inverse();
        let db = r1.len() - 1;
        let mut rem = r0.clone();
        for i in (db..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].mul(&lead_inv);
            for (j, c) in r1.iter().enumerate() {
                let t = q.mul(c);
                rem[i - db + j] = rem[i - db + j].sub(&t);
            }
        }
        rem.truncate(db.max(1));
        trim(&mut rem);
        r0 = r1;
        r1 = rem;
    }
    r0
}
