//! Reconstruction of a matrix tuple from its (possibly partial) signature.
//!
//! A signature determines its tuple up to simultaneous conjugation unless
//! every pair of disjoint sub-products shares an eigenvector, in which case
//! the tuple is triangular (all matrices share an eigenvector) and the
//! signature has many realizations — or none at all, if no sign assignment
//! of the angles is compatible; such signatures are inconsistent.
//!
//! The construction fixes a frame from one pivot pair without a common
//! eigenvector (diagonalizing one matrix when its trace allows, a unipotent
//! normal form otherwise), then recovers every remaining matrix from linear
//! equations supplied by the cells, with the product-identity condition
//! recovering a final matrix when its own cells are missing. When no two
//! *adjacent* matrices form a pivot, the pivot is a pair of disjoint run
//! products and the matrices inside and around the runs are recovered as
//! staged sub-products.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::angle::{reduce_mod2, Angle, Rational};
use crate::cells::{canonical_cell, cell_representations, enumerate_cells, CellId};
use crate::cyclo::{trace_to_angle, CycloField, CycloNumber};
use crate::mat2::UnimodularMatrix;
use crate::signature::Signature;
use crate::tuple::{no_common_eigenvector_traces, MonodromyTuple};

/// Outcome of reconstructing a signature.
#[derive(Clone, Debug)]
pub enum Reconstruction {
    /// The unique tuple (up to simultaneous conjugation) with this signature.
    Unique(MonodromyTuple),
    /// Every realization is triangular; the signature does not pin one down.
    Triangular,
    /// No tuple has this signature.
    Inconsistent(String),
}

const DEFAULT_MAX_FIELD_ORDER: u64 = 40_320;

/// Reconstruct a tuple from a signature with the default field-order bound.
pub fn reconstruct_tuple(s: &Signature) -> Result<Reconstruction, String> {
    reconstruct_tuple_bounded(s, DEFAULT_MAX_FIELD_ORDER)
}

/// Reconstruct a tuple, erroring out if the cyclotomic field required to
/// express the angles exactly would exceed `max_field_order`.
pub fn reconstruct_tuple_bounded(
    s: &Signature,
    max_field_order: u64,
) -> Result<Reconstruction, String> {
    let n = s.n();
    if n < 4 {
        return Err(format!("signatures need n >= 4, got {n}"));
    }
    if s.defined_count() == 0 {
        return Err("empty signature".into());
    }
    let mut lcm = BigInt::one();
    for (_, v) in s.cells() {
        lcm = lcm.lcm(&v.denom());
    }
    let order = BigInt::from(2) * &lcm;
    let order = order
        .to_u64()
        .filter(|&o| o <= max_field_order)
        .ok_or_else(|| format!("field order 2*{lcm} exceeds the bound {max_field_order}"))?;
    let field = CycloField::new(order as u32);
    let ctx = Ctx {
        sig: s,
        field: field.clone(),
        n,
    };

    // pivot among pairs of individual matrices: the generic case. A partial
    // signature can leave one pivot's fill underdetermined while another
    // succeeds, so every qualifying pair is tried before giving up.
    let mut pivot_seen = false;
    for i in 1..=n as u8 {
        for j in i + 1..=n as u8 {
            let (Some(ti), Some(tj), Some(tij)) =
                (ctx.trace(&[i]), ctx.trace(&[j]), ctx.trace(&[i, j]))
            else {
                continue;
            };
            if !no_common_eigenvector_traces(&ti, &tj, &tij) {
                continue;
            }
            pivot_seen = true;
            let (a, b, ta, tb) = if is_pm2(&ti) && !is_pm2(&tj) {
                (j, i, tj, ti)
            } else {
                (i, j, ti, tj)
            };
            let (ma, mb) = match pivot_frame(&field, &ta, &tb, &tij)? {
                Ok(pair) => pair,
                Err(msg) => return Ok(Reconstruction::Inconsistent(msg)),
            };
            let mut knowns = BTreeMap::new();
            knowns.insert(a, ma);
            knowns.insert(b, mb);
            if let Some(verdict) = ctx.complete(knowns, false)? {
                return Ok(verdict);
            }
        }
    }

    // pivot among disjoint run products
    for (cell, _) in s.cells() {
        let Some((r1, r2)) = split_runs(cell.indices(), n) else {
            continue;
        };
        let (Some(t1), Some(t2), Some(t12)) = (
            ctx.trace(&r1),
            ctx.trace(&r2),
            ctx.trace(cell.indices()),
        ) else {
            continue;
        };
        if !no_common_eigenvector_traces(&t1, &t2, &t12) {
            continue;
        }
        pivot_seen = true;
        let (r1, r2, t1, t2) = if is_pm2(&t1) && !is_pm2(&t2) {
            // trace of the pair cell is rotation-invariant, so the runs swap
            (r2, r1, t2, t1)
        } else {
            (r1, r2, t1, t2)
        };
        let (p, q) = match pivot_frame(&field, &t1, &t2, &t12)? {
            Ok(pair) => pair,
            Err(msg) => return Ok(Reconstruction::Inconsistent(msg)),
        };
        if let Some(verdict) = ctx.reconstruct_from_run_pivot(&r1, &r2, p, q, &t1, &t2, &t12)? {
            return Ok(verdict);
        }
    }

    if pivot_seen {
        return Err("signature does not define enough cells to reconstruct".into());
    }
    triangular_verdict(s)
}

fn is_pm2(t: &CycloNumber) -> bool {
    let two = CycloNumber::from_i64(t.field(), 2);
    *t == two || *t == two.neg()
}

struct Ctx<'a> {
    sig: &'a Signature,
    field: Arc<CycloField>,
    n: usize,
}

enum Gauss {
    Solved(UnimodularMatrix),
    Underdetermined,
    Conflict,
}

impl<'a> Ctx<'a> {
    /// Exact trace of the product over the given indices, when the
    /// corresponding cell is defined.
    fn trace(&self, indices: &[u8]) -> Option<CycloNumber> {
        let cell = canonical_cell(indices, self.n).ok()?;
        let v = self.sig.get(&cell)?;
        CycloNumber::two_cos(&self.field, v)
    }

    /// Product of the known matrices K with Tr(M_r·K) = cell value, one per
    /// defined cell whose representations contain `r` exactly once with every
    /// other index known.
    fn equations_for(
        &self,
        r: u8,
        knowns: &BTreeMap<u8, UnimodularMatrix>,
    ) -> Result<Vec<[CycloNumber; 5]>, String> {
        let mut rows: Vec<[CycloNumber; 5]> = Vec::new();
        for (cell, v) in self.sig.cells() {
            if let Some(k) = self.companion(cell.indices(), r, knowns) {
                let Some(rhs) = CycloNumber::two_cos(&self.field, v) else {
                    return Err(format!("cell {cell} not representable in the field"));
                };
                rows.push(trace_equation(&k, rhs));
            }
        }
        Ok(rows)
    }

    /// For a cell with a representation M_r·K, K a product of known matrices,
    /// return that K.
    fn companion(
        &self,
        indices: &[u8],
        r: u8,
        knowns: &BTreeMap<u8, UnimodularMatrix>,
    ) -> Option<UnimodularMatrix> {
        for rep in cell_representations(indices, self.n) {
            if rep.iter().filter(|&&i| i == r).count() != 1
                || rep.iter().any(|i| *i != r && !knowns.contains_key(i))
            {
                continue;
            }
            let at = rep.iter().position(|&i| i == r).unwrap();
            let mut k = UnimodularMatrix::identity(&self.field);
            for idx in rep[at + 1..].iter().chain(rep[..at].iter()) {
                k = k.mul(&knowns[idx]);
            }
            return Some(k);
        }
        None
    }

    /// Recover as many matrices as possible from cells that involve exactly
    /// one unknown index; a lone missing matrix falls out of the product
    /// identity. Returns a conflict description when the cells contradict
    /// each other.
    fn fill(&self, knowns: &mut BTreeMap<u8, UnimodularMatrix>) -> Result<Option<String>, String> {
        let n = self.n;
        loop {
            let mut progressed = false;
            for r in 1..=n as u8 {
                if knowns.contains_key(&r) {
                    continue;
                }
                let rows = self.equations_for(r, knowns)?;
                match gauss4(rows) {
                    Gauss::Solved(m) => {
                        knowns.insert(r, m);
                        progressed = true;
                    }
                    Gauss::Underdetermined => {}
                    Gauss::Conflict => {
                        return Ok(Some(format!("cells for matrix {r} are contradictory")))
                    }
                }
            }
            if knowns.len() == n - 1 {
                // the last matrix is fixed by the product identity
                let r = (1..=n as u8).find(|i| !knowns.contains_key(i)).unwrap();
                let mut rest = UnimodularMatrix::identity(&self.field);
                for o in 1..n {
                    rest = rest.mul(&knowns[&(((r as usize - 1 + o) % n) as u8 + 1)]);
                }
                knowns.insert(r, rest.inverse());
                progressed = true;
            }
            if knowns.len() == n {
                return Ok(None);
            }
            if !progressed {
                return Ok(None);
            }
        }
    }

    /// Drive a seeded reconstruction to a verdict: propagate with [`fill`],
    /// and when that stalls with a matrix pinned to a line of solutions, cut
    /// the line by branching over the rational trace lattice. Returns
    /// `Ok(None)` when the cells genuinely underdetermine the tuple.
    ///
    /// `branched` marks recursive calls below a guess: their conflicts refute
    /// the guess, not the signature.
    fn complete(
        &self,
        mut knowns: BTreeMap<u8, UnimodularMatrix>,
        branched: bool,
    ) -> Result<Option<Reconstruction>, String> {
        if let Some(conflict) = self.fill(&mut knowns)? {
            return Ok(if branched {
                None
            } else {
                Some(Reconstruction::Inconsistent(conflict))
            });
        }
        if knowns.len() == self.n {
            return Ok(match self.finalize(knowns) {
                Reconstruction::Inconsistent(_) if branched => None,
                verdict => Some(verdict),
            });
        }
        self.branch(knowns)
    }

    /// When commuting sub-products make the cell equations for some matrix
    /// rank 3, the matrix lies on a line. Any product over an *undefined*
    /// cell still has a trace of the form 2cos(πq) with q on the rational
    /// lattice of the working field, so guessing q adds a fourth independent
    /// equation; unimodularity and the final cell check weed out bad guesses.
    fn branch(
        &self,
        knowns: BTreeMap<u8, UnimodularMatrix>,
    ) -> Result<Option<Reconstruction>, String> {
        let one = CycloNumber::one(&self.field);
        let half = (self.field.order() / 2).max(1) as i64;
        for r in 1..=self.n as u8 {
            if knowns.contains_key(&r) {
                continue;
            }
            let rows = self.equations_for(r, &knowns)?;
            if rank(rows.clone()) != 3 {
                continue;
            }
            for cell in enumerate_cells(self.n) {
                if self.sig.get(&cell).is_some() {
                    continue;
                }
                let Some(k) = self.companion(cell.indices(), r, &knowns) else {
                    continue;
                };
                let mut probe = rows.clone();
                probe.push(trace_equation(&k, CycloNumber::zero(&self.field)));
                if rank(probe) < 4 {
                    continue;
                }
                for num in 0..=half {
                    let v = Angle::from_i64(num, half);
                    let Some(rhs) = CycloNumber::two_cos(&self.field, &v) else {
                        continue;
                    };
                    let mut sys = rows.clone();
                    sys.push(trace_equation(&k, rhs));
                    let Gauss::Solved(m) = gauss4(sys) else {
                        continue;
                    };
                    if m.det() != one {
                        continue;
                    }
                    let mut next = knowns.clone();
                    next.insert(r, m);
                    if let Some(verdict) = self.complete(next, true)? {
                        return Ok(Some(verdict));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Validate a full set of matrices against the signature.
    fn finalize(&self, knowns: BTreeMap<u8, UnimodularMatrix>) -> Reconstruction {
        let matrices: Vec<UnimodularMatrix> =
            (1..=self.n as u8).map(|i| knowns[&i].clone()).collect();
        let tuple = match MonodromyTuple::new(matrices) {
            Ok(t) => t,
            Err(e) => return Reconstruction::Inconsistent(e),
        };
        for (cell, v) in self.sig.cells() {
            let got = tuple.product_over(cell.indices()).trace();
            let want = CycloNumber::two_cos(&self.field, v);
            if want.as_ref() != Some(&got) {
                return Reconstruction::Inconsistent(format!(
                    "reconstructed tuple violates cell {cell}"
                ));
            }
        }
        Reconstruction::Unique(tuple)
    }

    /// Reconstruction when the pivot is a pair of disjoint run products
    /// P = M over r1 and Q = M over r2: matrices around the runs come from
    /// cells directly, matrices inside a run from staged prefix products
    /// whose missing traces follow from Tr(XY) = Tr(X)Tr(Y) − Tr(X⁻¹Y).
    /// Each sweep stops at the first cell the signature does not define;
    /// whatever it recovered seeds the generic completion, which reports
    /// `Ok(None)` if the cells do not pin the tuple down from this pivot.
    #[allow(clippy::too_many_arguments)]
    fn reconstruct_from_run_pivot(
        &self,
        r1: &[u8],
        r2: &[u8],
        p: UnimodularMatrix,
        q: UnimodularMatrix,
        t1: &CycloNumber,
        t2: &CycloNumber,
        t12: &CycloNumber,
    ) -> Result<Option<Reconstruction>, String> {
        let n = self.n;
        let pq = p.mul(&q);
        let qp = q.mul(&p);
        let identity = UnimodularMatrix::identity(&self.field);
        let next = |i: u8| (i as usize % n + 1) as u8;
        // cyclic segments: r1, gap1, r2, gap2
        let mut gap1 = Vec::new();
        let mut i = next(*r1.last().unwrap());
        while i != r2[0] {
            gap1.push(i);
            i = next(i);
        }
        let mut gap2 = Vec::new();
        let mut i = next(*r2.last().unwrap());
        while i != r1[0] {
            gap2.push(i);
            i = next(i);
        }
        let mut knowns: BTreeMap<u8, UnimodularMatrix> = BTreeMap::new();

        let cat = |a: &[u8], b: &[u8]| -> Vec<u8> { a.iter().chain(b).copied().collect() };
        let solve = |rows: Vec<[CycloNumber; 5]>| -> Option<UnimodularMatrix> {
            match gauss4(rows) {
                Gauss::Solved(m) => Some(m),
                _ => None,
            }
        };

        // inside the first run: prefix products against P
        'run1: {
            let mut prev: Option<UnimodularMatrix> = None;
            for at in 0..r1.len() - 1 {
                let run = &r1[..=at];
                let tail = &r1[at + 1..];
                let (Some(xt), Some(xq), Some(tail_t), Some(tail_q)) = (
                    self.trace(run),
                    self.trace(&cat(run, r2)),
                    self.trace(tail),
                    self.trace(&cat(tail, r2)),
                ) else {
                    break 'run1;
                };
                // Tr(X·P) and Tr(X·P·Q) via the trace product identity
                let xp = xt.mul(t1).sub(&tail_t);
                let xpq = xt.mul(t12).sub(&tail_q);
                let Some(x) = solve(vec![
                    trace_equation(&identity, xt),
                    trace_equation(&q, xq),
                    trace_equation(&p, xp),
                    trace_equation(&pq, xpq),
                ]) else {
                    break 'run1;
                };
                let m = match &prev {
                    None => x.clone(),
                    Some(rest) => rest.inverse().mul(&x),
                };
                knowns.insert(r1[at], m);
                prev = Some(x);
            }
            let last1 = match &prev {
                None => p.clone(),
                Some(rest) => rest.inverse().mul(&p),
            };
            knowns.insert(*r1.last().unwrap(), last1);
        }
        // inside the second run, symmetrically against Q
        'run2: {
            let mut prev: Option<UnimodularMatrix> = None;
            for at in 0..r2.len() - 1 {
                let run = &r2[..=at];
                let tail = &r2[at + 1..];
                let (Some(xt), Some(xp), Some(tail_t), Some(tail_p)) = (
                    self.trace(run),
                    self.trace(&cat(r1, run)),
                    self.trace(tail),
                    self.trace(&cat(r1, tail)),
                ) else {
                    break 'run2;
                };
                let xq = xt.mul(t2).sub(&tail_t);
                let xqp = xt.mul(t12).sub(&tail_p);
                let Some(x) = solve(vec![
                    trace_equation(&identity, xt),
                    trace_equation(&p, xp),
                    trace_equation(&q, xq),
                    trace_equation(&qp, xqp),
                ]) else {
                    break 'run2;
                };
                let m = match &prev {
                    None => x.clone(),
                    Some(rest) => rest.inverse().mul(&x),
                };
                knowns.insert(r2[at], m);
                prev = Some(x);
            }
            let last2 = match &prev {
                None => q.clone(),
                Some(rest) => rest.inverse().mul(&q),
            };
            knowns.insert(*r2.last().unwrap(), last2);
        }
        // suffix products over gap1: X = M_r … M_(last of gap1)
        'gap1: {
            let mut suffix: Option<UnimodularMatrix> = None;
            for at in (0..gap1.len()).rev() {
                let run = &gap1[at..];
                let (Some(xt), Some(xp), Some(xq), Some(xqp)) = (
                    self.trace(run),
                    self.trace(&cat(r1, run)),
                    self.trace(&cat(run, r2)),
                    self.trace(&cat(r1, &cat(run, r2))),
                ) else {
                    break 'gap1;
                };
                let Some(x) = solve(vec![
                    trace_equation(&identity, xt),
                    trace_equation(&p, xp),
                    trace_equation(&q, xq),
                    trace_equation(&qp, xqp),
                ]) else {
                    break 'gap1;
                };
                let m = match &suffix {
                    None => x.clone(),
                    Some(rest) => x.mul(&rest.inverse()),
                };
                knowns.insert(gap1[at], m);
                suffix = Some(x);
            }
        }
        // prefix products over gap2: X = M_(first of gap2) … M_r
        'gap2: {
            let mut prefix: Option<UnimodularMatrix> = None;
            for at in 0..gap2.len() {
                let run = &gap2[..=at];
                let (Some(xt), Some(xp), Some(xq), Some(xpq)) = (
                    self.trace(run),
                    self.trace(&cat(r1, run)),
                    self.trace(&cat(r2, run)),
                    self.trace(&cat(r1, &cat(r2, run))),
                ) else {
                    break 'gap2;
                };
                let Some(x) = solve(vec![
                    trace_equation(&identity, xt),
                    trace_equation(&p, xp),
                    trace_equation(&q, xq),
                    trace_equation(&pq, xpq),
                ]) else {
                    break 'gap2;
                };
                let m = match &prefix {
                    None => x.clone(),
                    Some(rest) => rest.inverse().mul(&x),
                };
                knowns.insert(gap2[at], m);
                prefix = Some(x);
            }
        }
        self.complete(knowns, false)
    }
}

/// Equation row for Tr(M·K) = rhs, linear in the entries of M.
fn trace_equation(k: &UnimodularMatrix, rhs: CycloNumber) -> [CycloNumber; 5] {
    [
        k.entry(0, 0).clone(),
        k.entry(1, 0).clone(),
        k.entry(0, 1).clone(),
        k.entry(1, 1).clone(),
        rhs,
    ]
}

/// Reduce the coefficient columns in place; returns the coefficient rank.
fn eliminate(rows: &mut [[CycloNumber; 5]]) -> usize {
    let mut rank = 0;
    for col in 0..4 {
        let Some(pi) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pi);
        let inv = rows[rank][col].inverse();
        for c in col..5 {
            rows[rank][c] = rows[rank][c].mul(&inv);
        }
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in col..5 {
                    rows[i][c] = rows[i][c].sub(&f.mul(&rows[rank][c]));
                }
            }
        }
        rank += 1;
        if rank == 4 {
            break;
        }
    }
    rank
}

/// Coefficient rank of a trace-equation system.
fn rank(mut rows: Vec<[CycloNumber; 5]>) -> usize {
    eliminate(&mut rows)
}

/// Solve for a 2×2 matrix from trace equations by Gaussian elimination.
fn gauss4(mut rows: Vec<[CycloNumber; 5]>) -> Gauss {
    let rank = eliminate(&mut rows);
    for row in rows.iter().skip(rank) {
        if !row[4].is_zero() {
            return Gauss::Conflict;
        }
    }
    if rank < 4 {
        return Gauss::Underdetermined;
    }
    // rows 0..4 are the reduced identity; read off the solution
    let sol = [
        rows[0][4].clone(),
        rows[1][4].clone(),
        rows[2][4].clone(),
        rows[3][4].clone(),
    ];
    Gauss::Solved(UnimodularMatrix::new_unchecked(sol))
}

/// Normal-form pair (A, B) with Tr A = ta, Tr B = tb, Tr AB = tab and no
/// common eigenvector. Outer error: arithmetic impossibility (bad field);
/// inner error: the traces admit no such pair, i.e. the signature is
/// inconsistent at the pivot.
#[allow(clippy::type_complexity)]
fn pivot_frame(
    field: &Arc<CycloField>,
    ta: &CycloNumber,
    tb: &CycloNumber,
    tab: &CycloNumber,
) -> Result<Result<(UnimodularMatrix, UnimodularMatrix), String>, String> {
    let one = CycloNumber::one(field);
    if !is_pm2(ta) {
        // diagonalize A; B is normalized to have lower-left entry 1
        let angle = trace_to_angle(ta).ok_or("pivot trace is not a known cosine value")?;
        let order = BigInt::from(field.order());
        let exp = angle.value() * &order / BigInt::from(2);
        let exp = exp
            .to_integer()
            .to_i64()
            .ok_or("pivot eigenvalue exponent out of range")?;
        let e = CycloNumber::root_of_unity(field, exp);
        let e_inv = e.inverse();
        debug_assert_eq!(e.add(&e_inv), *ta);
        let a = UnimodularMatrix::new_unchecked([
            e.clone(),
            CycloNumber::zero(field),
            CycloNumber::zero(field),
            e_inv.clone(),
        ]);
        let alpha = tab.sub(&e_inv.mul(tb)).mul(&e.sub(&e_inv).inverse());
        let delta = tb.sub(&alpha);
        let beta = alpha.mul(&delta).sub(&one);
        let b = UnimodularMatrix::new_unchecked([alpha, beta, one, delta]);
        return Ok(Ok((a, b)));
    }
    // both traces are ±2: unipotent normal form
    let two = CycloNumber::from_i64(field, 2);
    let sign = if *ta == two { 1 } else { -1 };
    let s = CycloNumber::from_i64(field, sign);
    let a = UnimodularMatrix::new_unchecked([s.clone(), CycloNumber::zero(field), s.clone(), s]);
    let bval = tab.mul_rational(&Rational::from_integer(sign.into())).sub(tb);
    if bval.is_zero() {
        return Ok(Err(
            "pivot traces force a common eigenvector despite the trace test".into(),
        ));
    }
    let b = UnimodularMatrix::new_unchecked([
        CycloNumber::zero(field),
        bval.clone(),
        bval.inverse().neg(),
        tb.clone(),
    ]);
    Ok(Ok((a, b)))
}

/// Split a canonical cell tuple into its two runs, if it has two.
fn split_runs(indices: &[u8], n: usize) -> Option<(Vec<u8>, Vec<u8>)> {
    let m = indices.len();
    if m < 2 {
        return None;
    }
    let breaks: Vec<usize> = (0..m)
        .filter(|&i| indices[(i + 1) % m] as usize != indices[i] as usize % n + 1)
        .collect();
    if breaks.len() != 2 {
        return None;
    }
    // rotate so the tuple starts right after the second break
    let start = (breaks[1] + 1) % m;
    let rotated: Vec<u8> = (0..m).map(|o| indices[(start + o) % m]).collect();
    let cut = (breaks[0] + m - start) % m + 1;
    Some((rotated[..cut].to_vec(), rotated[cut..].to_vec()))
}

/// Decide between a triangular realization and inconsistency once no pivot
/// exists: a triangular tuple realizes the signature exactly when some sign
/// assignment of the θ's sums to zero modulo 2 and matches every cell.
fn triangular_verdict(s: &Signature) -> Result<Reconstruction, String> {
    let n = s.n();
    let mut thetas = Vec::with_capacity(n);
    for i in 1..=n as u8 {
        let v = s
            .get(&CellId::theta(i, n))
            .ok_or("cannot classify: some matrix angle is undefined")?;
        thetas.push(v.value().clone());
    }
    'signs: for mask in 0u64..(1 << (n - 1)) {
        let sign = |i: usize| -> Rational {
            // the global sign flip is a symmetry, so the first sign is fixed
            if i > 0 && mask >> (i - 1) & 1 == 1 {
                -Rational::one()
            } else {
                Rational::one()
            }
        };
        let total: Rational = (0..n).map(|i| sign(i) * &thetas[i]).sum();
        if !reduce_mod2(&total).is_zero() {
            continue;
        }
        for (cell, v) in s.cells() {
            let sum: Rational = cell
                .indices()
                .iter()
                .map(|&i| sign(i as usize - 1) * &thetas[i as usize - 1])
                .sum();
            if crate::angle::Angle::new(sum).value() != v.value() {
                continue 'signs;
            }
        }
        return Ok(Reconstruction::Triangular);
    }
    Ok(Reconstruction::Inconsistent(
        "no diagonal realization matches the cells".into(),
    ))
}
