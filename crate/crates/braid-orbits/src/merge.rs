//! Merging of particular signatures.
//!
//! Two partial signatures of the same tuple merge into one defined on the
//! union of their cells. Concrete cells must agree as angles (an angle is
//! determined by its trace only up to sign modulo 2, which angle
//! normalization already identifies). Parametric cells agree either exactly
//! or with a sign change, so merging branches over both signs per shared
//! parametric cell, turning each branch into a linear system modulo 2; every
//! solvable branch yields a merged signature whose parameters are then
//! renormalized to a canonical form.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::affine::AffineAngle;
use crate::angle::{Angle, Rational};
use crate::signature::{ParamSignature, Signature};
use crate::solver::{solve_modular_system, Equation, ModularLinearSystem, SolverError};

/// Apply a solver substitution to an affine expression. Parameters without
/// an assignment stand for themselves.
pub fn apply_assignments(
    x: &AffineAngle,
    assignments: &BTreeMap<String, AffineAngle>,
) -> AffineAngle {
    let mut out = AffineAngle::constant(x.free().clone());
    for (v, c) in x.coeffs() {
        let sub = assignments
            .get(v)
            .cloned()
            .unwrap_or_else(|| AffineAngle::parameter(v));
        out = out.add(&sub.scale(*c));
    }
    out
}

/// Apply a solver substitution to every cell of a signature.
pub fn substitute_signature(
    s: &ParamSignature,
    assignments: &BTreeMap<String, AffineAngle>,
) -> ParamSignature {
    s.map_values(|v| apply_assignments(v, assignments))
}

/// Merge two partial signatures over the same n.
///
/// Returns every mergeable branch as (merged signature, substitution applied
/// to the inputs' parameters). An empty list means the signatures conflict.
/// The merged signature's parameters are renormalized by
/// [`canonicalize_parameters`], so its names are fresh (`t1`, `t2`, …) and
/// unrelated to the substitution's.
pub fn merge_signatures(
    p: &ParamSignature,
    q: &ParamSignature,
) -> Result<Vec<(ParamSignature, BTreeMap<String, AffineAngle>)>, SolverError> {
    if p.n() != q.n() {
        return Err(SolverError::InvalidSystem(format!(
            "cannot merge signatures of different sizes {} and {}",
            p.n(),
            q.n()
        )));
    }
    let mut branch_cells: Vec<(AffineAngle, AffineAngle)> = Vec::new();
    for (cell, pv) in p.cells() {
        let Some(qv) = q.get(cell) else { continue };
        if pv.is_constant() && qv.is_constant() {
            if Angle::new(pv.free().clone()) != Angle::new(qv.free().clone()) {
                return Ok(Vec::new());
            }
        } else {
            branch_cells.push((pv.clone(), qv.clone()));
        }
    }
    if branch_cells.len() > 24 {
        return Err(SolverError::InternalInconsistency(format!(
            "{} shared parametric cells: sign branching out of range",
            branch_cells.len()
        )));
    }
    let mut results: Vec<(ParamSignature, BTreeMap<String, AffineAngle>)> = Vec::new();
    for mask in 0u64..(1 << branch_cells.len()) {
        let mut equations = Vec::new();
        for (i, (pv, qv)) in branch_cells.iter().enumerate() {
            let sign: i64 = if mask >> i & 1 == 0 { 1 } else { -1 };
            let mut coeffs: BTreeMap<String, i64> = pv.coeffs().clone();
            for (v, c) in qv.coeffs() {
                *coeffs.entry(v.clone()).or_insert(0) -= sign * c;
            }
            let free = Rational::from_integer(sign.into()) * qv.free() - pv.free();
            equations.push(Equation::new(coeffs, free));
        }
        for family in solve_modular_system(&ModularLinearSystem::new(equations))? {
            let mut merged = substitute_signature(p, &family.assignments);
            for (cell, qv) in q.cells() {
                if merged.get(cell).is_none() {
                    merged.insert(cell.clone(), apply_assignments(qv, &family.assignments));
                }
            }
            let merged = canonicalize_parameters(&merged);
            if !results.iter().any(|(m, _)| *m == merged) {
                results.push((merged, family.assignments));
            }
        }
    }
    Ok(results)
}

/// Merge two concrete (parameter-free) partial signatures.
pub fn merge_particular(p: &Signature, q: &Signature) -> Option<Signature> {
    let pp = ParamSignature::from_particular(p);
    let qq = ParamSignature::from_particular(q);
    let merged = merge_signatures(&pp, &qq).ok()?;
    merged.into_iter().next().and_then(|(m, _)| m.to_particular())
}

/// Largest absolute parameter coefficient over all cells.
pub fn max_abs_coeff(s: &ParamSignature) -> i64 {
    s.cells()
        .flat_map(|(_, v)| v.coeffs().values().copied())
        .map(i64::abs)
        .max()
        .unwrap_or(0)
}

/// Renormalize a signature's parameters to a canonical form.
///
/// The family of signatures a parametric signature denotes depends only on
/// the span of its coefficient columns (parameters range over all angles
/// modulo 2) and on the free terms modulo that span. The canonical choice
/// is the Hermite basis of the saturation of the column lattice, with free
/// terms shifted to vanish on the pivot rows and parameters renamed to
/// `t1`, `t2`, …; two parametrizations of the same family agree after this.
pub fn canonicalize_parameters(s: &ParamSignature) -> ParamSignature {
    let params: Vec<String> = s.parameters().into_iter().collect();
    if params.is_empty() {
        return s.clone();
    }
    let cells: Vec<_> = s.cells().map(|(c, v)| (c.clone(), v.clone())).collect();
    let m = cells.len();
    // columns of the coefficient matrix, one row vector per parameter
    let columns: Vec<Vec<i128>> = params
        .iter()
        .map(|p| {
            cells
                .iter()
                .map(|(_, v)| v.coeffs().get(p).copied().unwrap_or(0) as i128)
                .collect()
        })
        .collect();
    let sat = saturate_row_lattice(columns, m);
    let basis = row_hermite(sat);
    let r = basis.len();
    // shift free terms so they vanish on the pivot rows
    let mut free: Vec<Rational> = cells.iter().map(|(_, v)| v.free().clone()).collect();
    for row in &basis {
        let pivot_col = row.iter().position(|&x| x != 0).unwrap();
        let pivot = row[pivot_col];
        let delta = free[pivot_col].clone() / Rational::from_integer(BigInt::from(pivot));
        for (i, &b) in row.iter().enumerate() {
            if b != 0 {
                free[i] -= delta.clone() * Rational::from_integer(BigInt::from(b));
            }
        }
    }
    let mut out = ParamSignature::new(s.n());
    for (i, (cell, _)) in cells.iter().enumerate() {
        let mut coeffs = BTreeMap::new();
        for j in 0..r {
            if basis[j][i] != 0 {
                coeffs.insert(format!("t{}", j + 1), basis[j][i] as i64);
            }
        }
        out.insert(cell.clone(), AffineAngle::new(coeffs, free[i].clone()));
    }
    out
}

/// Basis of the saturation of the lattice spanned by the given row vectors:
/// every integer vector in their rational span. Computed from a Smith-style
/// diagonalization, tracking the inverse of the column transform; the rows
/// of that inverse matching nonzero diagonal entries span the saturation.
fn saturate_row_lattice(rows: Vec<Vec<i128>>, width: usize) -> Vec<Vec<i128>> {
    let mut w = rows;
    let height = w.len();
    let mut qinv: Vec<Vec<i128>> = (0..width)
        .map(|i| (0..width).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut rank = 0;
    while rank < height.min(width) {
        // smallest nonzero entry of the remaining block
        let Some((mut pi, mut pj)) = ({
            let mut best: Option<(usize, usize)> = None;
            for i in rank..height {
                for j in rank..width {
                    if w[i][j] != 0
                        && best.map_or(true, |(bi, bj)| w[i][j].abs() < w[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            best
        }) else {
            break;
        };
        loop {
            // clear the pivot's row and column by Euclidean steps
            let mut dirty = false;
            for i in rank..height {
                if i != pi && w[i][pj] != 0 {
                    let f = w[i][pj] / w[pi][pj];
                    for j in 0..width {
                        w[i][j] -= f * w[pi][j];
                    }
                    if w[i][pj] != 0 {
                        (pi, dirty) = (i, true);
                    }
                }
            }
            if dirty {
                continue;
            }
            for j in rank..width {
                if j != pj && w[pi][j] != 0 {
                    let f = w[pi][j] / w[pi][pj];
                    // column op: col j -= f * col pj ⇒ qinv row pj += f * row j
                    for i in 0..height {
                        w[i][j] -= f * w[i][pj];
                    }
                    for t in 0..width {
                        let v = qinv[j][t];
                        qinv[pj][t] += f * v;
                    }
                    if w[pi][j] != 0 {
                        (pj, dirty) = (j, true);
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        // move the pivot to position (rank, rank)
        w.swap(pi, rank);
        if pj != rank {
            for row in w.iter_mut() {
                row.swap(pj, rank);
            }
            qinv.swap(pj, rank);
        }
        rank += 1;
    }
    qinv.truncate(rank);
    qinv
}

/// Row-style Hermite normal form of a full-rank set of rows: echelon order,
/// positive pivots, entries above each pivot reduced into [0, pivot).
fn row_hermite(mut rows: Vec<Vec<i128>>) -> Vec<Vec<i128>> {
    let height = rows.len();
    if height == 0 {
        return rows;
    }
    let width = rows[0].len();
    let mut rank = 0;
    for col in 0..width {
        if rank == height {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for (i, row) in rows.iter().enumerate().take(height).skip(rank) {
                if row[col] != 0 && best.map_or(true, |b| row[col].abs() < rows[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(rank, b);
            let mut done = true;
            for i in rank + 1..height {
                if rows[i][col] != 0 {
                    let f = rows[i][col] / rows[rank][col];
                    for j in 0..width {
                        rows[i][j] -= f * rows[rank][j];
                    }
                    if rows[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[rank][col] == 0 {
            continue;
        }
        if rows[rank][col] < 0 {
            for j in 0..width {
                rows[rank][j] = -rows[rank][j];
            }
        }
        let pivot = rows[rank][col];
        for i in 0..rank {
            let f = rows[i][col].div_euclid(pivot);
            if f != 0 {
                for j in 0..width {
                    rows[i][j] -= f * rows[rank][j];
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::parse_affine;
    use crate::angle::rat;
    use crate::cells::{enumerate_cells, CellId};
    use crate::sample::{random_subgroup_tuple, SplitMix};
    use crate::signature::signature_of_tuple;

    fn psig(n: usize, entries: &[(&[u8], &str)]) -> ParamSignature {
        let mut s = ParamSignature::new(n);
        for (idx, expr) in entries {
            s.insert(CellId::sigma(idx, n), parse_affine(expr).unwrap());
        }
        s
    }

    #[test]
    fn conflicting_constants_do_not_merge() {
        let p = psig(4, &[(&[1], "1/3")]);
        let q = psig(4, &[(&[1], "1/2")]);
        assert!(merge_signatures(&p, &q).unwrap().is_empty());
    }

    #[test]
    fn constants_agree_up_to_sign() {
        // 5/3 ≡ -1/3 (mod 2) names the same angle as 1/3
        let p = psig(4, &[(&[1], "1/3"), (&[2], "0")]);
        let q = psig(4, &[(&[1], "5/3"), (&[3], "1/2")]);
        let merged = merge_signatures(&p, &q).unwrap();
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].0.defined_count(), 3);
    }

    #[test]
    fn splitting_a_real_signature_merges_back() {
        let mut rng = SplitMix::new(9);
        for _ in 0..6 {
            let t = random_subgroup_tuple(4, &mut rng);
            let s = signature_of_tuple(&t).unwrap();
            let cells = enumerate_cells(4);
            let mut p = Signature::new(4);
            let mut q = Signature::new(4);
            for (i, c) in cells.iter().enumerate() {
                let v = s.get(c).unwrap().clone();
                if i % 2 == 0 || i % 3 == 0 {
                    p.insert(c.clone(), v.clone());
                }
                if i % 2 == 1 || i % 3 == 0 {
                    q.insert(c.clone(), v);
                }
            }
            let merged = merge_particular(&p, &q).unwrap();
            assert_eq!(merged, s);
        }
    }

    #[test]
    fn parametric_merge_branches_over_signs() {
        let p = psig(4, &[(&[1], "x"), (&[2], "x+1/3")]);
        let q = psig(4, &[(&[1], "1/4")]);
        let merged = merge_signatures(&p, &q).unwrap();
        // x = 1/4 or x = -1/4 ≡ 7/4
        let mut values: Vec<_> = merged
            .iter()
            .map(|(m, _)| m.get(&CellId::theta(2, 4)).unwrap().free().clone())
            .collect();
        values.sort();
        assert_eq!(values, vec![rat(1, 12), rat(7, 12)]);
        assert!(merged.iter().all(|(m, _)| m.parameters().is_empty()));
    }

    #[test]
    fn merge_keeps_free_parameters() {
        let p = psig(5, &[(&[1], "x"), (&[2], "y")]);
        let q = psig(5, &[(&[3], "1/2")]);
        let merged = merge_signatures(&p, &q).unwrap();
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].0.parameters().len(), 2);
        assert_eq!(merged[0].0.defined_count(), 3);
    }

    #[test]
    fn canonical_form_divides_out_content() {
        // θ₁ = 2x denotes the same family as θ₁ = x
        let a = canonicalize_parameters(&psig(4, &[(&[1], "2x")]));
        let b = canonicalize_parameters(&psig(4, &[(&[1], "x")]));
        assert_eq!(a, b);
        assert_eq!(
            a.get(&CellId::theta(1, 4)).unwrap(),
            &parse_affine("t1").unwrap()
        );
    }

    #[test]
    fn canonical_form_is_reparametrization_invariant() {
        // (x+y, x−y, y+1/3) vs the substitution x→u+2v, y→u−v
        let a = psig(4, &[(&[1], "x+y"), (&[2], "x-y"), (&[3], "y+1/3")]);
        let b = a
            .substitute("x", &parse_affine("u+2v").unwrap())
            .substitute("y", &parse_affine("u-v").unwrap());
        // u, v span the same two-parameter family as x, y
        assert_eq!(canonicalize_parameters(&a), canonicalize_parameters(&b));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let s = psig(5, &[(&[1], "2x+4y"), (&[2], "6y+1/3"), (&[1, 2], "2x")]);
        let once = canonicalize_parameters(&s);
        assert_eq!(canonicalize_parameters(&once), once);
    }

    #[test]
    fn free_term_shift_is_canonical() {
        // shifting the parameter start point does not change the family
        let a = psig(4, &[(&[1], "x"), (&[2], "x+1/3")]);
        let b = psig(4, &[(&[1], "x+1/5"), (&[2], "x+1/3+1/5")]);
        assert_eq!(canonicalize_parameters(&a), canonicalize_parameters(&b));
    }

    #[test]
    fn coefficient_bound_helper() {
        let s = psig(4, &[(&[1], "3x-4y")]);
        assert_eq!(max_abs_coeff(&s), 4);
        assert_eq!(max_abs_coeff(&psig(4, &[(&[1], "1/3")])), 0);
    }
}
