//! Canonical identifiers for signature cells.
//!
//! A cell names the trace of a product of matrices over an index tuple that
//! is, up to cyclic rotation, a concatenation of one contiguous cyclic run
//! (θ cells and σ runs) or two disjoint contiguous runs. Equivalent
//! notations — cyclic rotations of the tuple, and the complement of a single
//! run (because the full cyclic product is the identity) — map to the same
//! canonical identifier. Order is otherwise significant: σ_{a,c,b} and
//! σ_{a,b,c} are different cells.

use std::collections::BTreeSet;
use std::fmt;

/// Canonical cell identifier: the lexicographically smallest equivalent
/// index tuple (1-based), shortest first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId {
    indices: Vec<u8>,
}

impl CellId {
    /// The canonical index tuple (product order).
    pub fn indices(&self) -> &[u8] {
        &self.indices
    }

    /// θ cell for a single matrix.
    pub fn theta(x: u8, n: usize) -> CellId {
        canonical_cell(&[x], n).expect("theta cell")
    }

    /// σ cell for an index tuple.
    pub fn sigma(indices: &[u8], n: usize) -> CellId {
        canonical_cell(indices, n).expect("sigma cell")
    }

    /// True when the canonical tuple has length 1 (a θ cell).
    pub fn is_theta(&self) -> bool {
        self.indices.len() == 1
    }

    pub fn contains(&self, x: u8) -> bool {
        self.indices.contains(&x)
    }

    /// Substitute index `from` by `to` (product order preserved) and
    /// re-canonicalize; fails if the result is not a valid cell.
    pub fn substitute(&self, from: u8, to: u8, n: usize) -> Result<CellId, String> {
        let indices: Vec<u8> = self
            .indices
            .iter()
            .map(|&i| if i == from { to } else { i })
            .collect();
        canonical_cell(&indices, n)
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.is_theta() { "theta" } else { "sigma" };
        write!(f, "{name}")?;
        for (i, x) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            } else {
                write!(f, "_")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Number of cyclic runs the tuple decomposes into: positions where the
/// cyclic successor is not index+1 mod n.
fn run_breaks(indices: &[u8], n: usize) -> usize {
    let m = indices.len();
    (0..m)
        .filter(|&i| {
            let cur = indices[i] as usize;
            let next = indices[(i + 1) % m] as usize;
            next != cur % n + 1
        })
        .count()
}

/// Canonicalize an index tuple into a [`CellId`].
///
/// Valid tuples consist of distinct indices in 1..=n forming, cyclically,
/// one run of length ≤ n−1 or two disjoint runs (each followed by a gap).
pub fn canonical_cell(indices: &[u8], n: usize) -> Result<CellId, String> {
    let m = indices.len();
    if m == 0 || m >= n {
        return Err(format!("cell needs 1..{} indices, got {m}", n - 1));
    }
    let mut seen = vec![false; n + 1];
    for &i in indices {
        if i == 0 || i as usize > n {
            return Err(format!("index {i} out of range 1..={n}"));
        }
        if seen[i as usize] {
            return Err(format!("repeated index {i}"));
        }
        seen[i as usize] = true;
    }
    let breaks = run_breaks(indices, n);
    if m < n && breaks > 2 {
        return Err(format!("indices {indices:?} form more than two runs"));
    }
    let canonical = cell_representations(indices, n)
        .into_iter()
        .min_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())))
        .unwrap();
    Ok(CellId { indices: canonical })
}

/// All index tuples denoting the same cell as `indices` (assumed valid):
/// every cyclic rotation, plus — for a single contiguous run — every
/// rotation of the complement run (the full cyclic product is the identity,
/// so a run's trace equals its complement's).
pub fn cell_representations(indices: &[u8], n: usize) -> Vec<Vec<u8>> {
    let m = indices.len();
    let mut out: Vec<Vec<u8>> = Vec::new();
    let push_rotations = |tuple: &[u8], out: &mut Vec<Vec<u8>>| {
        for r in 0..tuple.len() {
            let mut v = tuple.to_vec();
            v.rotate_left(r);
            out.push(v);
        }
    };
    push_rotations(indices, &mut out);
    if run_breaks(indices, n) <= 1 {
        let mut seen = vec![false; n + 1];
        for &i in indices {
            seen[i as usize] = true;
        }
        // find where the run ends, then collect the complement ascending
        let start = (1..=n)
            .find(|&i| seen[i] && !seen[(i + n - 2) % n + 1])
            .expect("non-full run has a start");
        let mut cur = start;
        while seen[cur] {
            cur = cur % n + 1;
        }
        let complement: Vec<u8> = (0..n - m)
            .map(|o| ((cur - 1 + o) % n + 1) as u8)
            .collect();
        debug_assert!(complement.iter().all(|&i| !seen[i as usize]));
        push_rotations(&complement, &mut out);
    }
    out
}

/// Total number of signature cells for an n-tuple: n(n−1)(n²−5n+12)/12.
pub fn cell_count(n: usize) -> usize {
    n * (n - 1) * (n * n + 12 - 5 * n) / 12
}

/// Number of θ cells (one per matrix).
pub fn theta_count(n: usize) -> usize {
    n
}

/// Number of σ cells: n(n−3)(n²−3n+8)/12.
pub fn sigma_count(n: usize) -> usize {
    n * (n - 3) * (n * n + 8 - 3 * n) / 12
}

/// All canonical cells for an n-tuple, sorted.
pub fn enumerate_cells(n: usize) -> Vec<CellId> {
    let mut out = BTreeSet::new();
    // θ and single runs (lengths 1..=n−2; n−1 duplicates θ)
    for x in 1..=n as u8 {
        for len in 1..n - 1 {
            let tuple: Vec<u8> = (0..len)
                .map(|o| (((x as usize - 1) + o) % n + 1) as u8)
                .collect();
            out.insert(canonical_cell(&tuple, n).unwrap());
        }
    }
    // pairs of disjoint runs: (x..y) then (p..q), both followed by gaps
    for x in 1..=n {
        for len1 in 1..=n - 3 {
            for gap1 in 1..=n - len1 - 2 {
                let rem = n - len1 - gap1 - 1;
                for len2 in 1..=rem {
                    let mut tuple = Vec::new();
                    for o in 0..len1 {
                        tuple.push((((x - 1) + o) % n + 1) as u8);
                    }
                    let p = x + len1 + gap1;
                    for o in 0..len2 {
                        tuple.push((((p - 1) + o) % n + 1) as u8);
                    }
                    out.insert(canonical_cell(&tuple, n).unwrap());
                }
            }
        }
    }
    out.into_iter().collect()
}
