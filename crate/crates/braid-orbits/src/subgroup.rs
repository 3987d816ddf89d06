//! Recognition of the subgroup of SL(2,C) generated by a tuple.
//!
//! The classes mirror the finite subgroups of SU(2) up to center: commuting
//! generators are cyclic, a preserved pair of eigendirections is dihedral,
//! and the three exceptional groups are told apart by the exact order of the
//! generated group modulo ±1. Everything else — in particular any infinite
//! group — reports as [`SubgroupClass::Other`].

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::angle::Rational;
use crate::cyclo::{trace_to_angle, CycloField, CycloNumber};
use crate::mat2::UnimodularMatrix;
use crate::tuple::MonodromyTuple;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum SubgroupClass {
    Cyclic,
    Dihedral,
    Tetrahedral,
    Octahedral,
    Icosahedral,
    /// Infinite, or at least not among the recognized finite classes.
    Other,
}

impl fmt::Display for SubgroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SubgroupClass::Cyclic => "cyclic",
            SubgroupClass::Dihedral => "dihedral",
            SubgroupClass::Tetrahedral => "tetrahedral",
            SubgroupClass::Octahedral => "octahedral",
            SubgroupClass::Icosahedral => "icosahedral",
            SubgroupClass::Other => "infinite/other",
        };
        f.write_str(s)
    }
}

/// Cap on the projective closure: the largest recognized group (icosahedral)
/// has 60 elements modulo center, so anything past 120 with center is Other.
const CLOSURE_CAP: usize = 120;

/// Classify the subgroup generated by the matrices of a tuple.
pub fn classify_subgroup(t: &MonodromyTuple) -> SubgroupClass {
    let mats = t.matrices();
    if mats
        .iter()
        .enumerate()
        .all(|(i, a)| mats[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    {
        return SubgroupClass::Cyclic;
    }
    if is_dihedral(mats) {
        return SubgroupClass::Dihedral;
    }
    match projective_order(mats) {
        Some(12) => SubgroupClass::Tetrahedral,
        Some(24) => SubgroupClass::Octahedral,
        Some(60) => SubgroupClass::Icosahedral,
        _ => SubgroupClass::Other,
    }
}

/// The two eigendirections of a non-scalar matrix with distinct eigenvalues,
/// in a field large enough to hold them.
fn eigen_directions(m: &UnimodularMatrix) -> Option<[[CycloNumber; 2]; 2]> {
    let angle = trace_to_angle(&m.trace())?;
    if angle.is_integral() {
        // eigenvalues coincide: non-scalar means a single eigendirection
        return None;
    }
    let b = angle.denom();
    let order = BigInt::from(m.field().order()).lcm(&(BigInt::from(2) * &b));
    let field = CycloField::new(order.to_u32()?);
    let m = m.embed(&field);
    let exp = (angle.value() * &order / BigInt::from(2)).to_integer();
    let lambda = CycloNumber::root_of_unity(&field, exp.to_i64()?);
    let dir = |lambda: &CycloNumber| -> [CycloNumber; 2] {
        let v = [m.entry(0, 1).clone(), lambda.sub(m.entry(0, 0))];
        if v[0].is_zero() && v[1].is_zero() {
            [lambda.sub(m.entry(1, 1)), m.entry(1, 0).clone()]
        } else {
            v
        }
    };
    Some([dir(&lambda), dir(&lambda.inverse())])
}

fn parallel(u: &[CycloNumber; 2], v: &[CycloNumber; 2]) -> bool {
    u[0].mul(&v[1]).sub(&u[1].mul(&v[0])).is_zero()
}

/// True when some unordered pair of directions is preserved by every matrix:
/// each matrix either fixes both directions (diagonal in that basis) or
/// swaps them (anti-diagonal).
fn is_dihedral(mats: &[UnimodularMatrix]) -> bool {
    // candidate direction pairs come from the eigendirections of the
    // matrices and their pairwise products: in a dihedral group some
    // diagonal-type element always appears among these
    let mut candidates: Vec<UnimodularMatrix> = mats.to_vec();
    for (i, a) in mats.iter().enumerate() {
        for b in &mats[i + 1..] {
            candidates.push(a.mul(b));
        }
    }
    'cand: for c in &candidates {
        if c.is_scalar() {
            continue;
        }
        let Some([u, w]) = eigen_directions(c) else {
            continue;
        };
        let field = u[0].field().clone();
        for m in mats {
            let m = m.embed(&field);
            let mu = m.apply(&u);
            let mw = m.apply(&w);
            let fixes = parallel(&mu, &u) && parallel(&mw, &w);
            let swaps = parallel(&mu, &w) && parallel(&mw, &u);
            if !fixes && !swaps {
                continue 'cand;
            }
        }
        return true;
    }
    false
}

/// Order of the generated group modulo ±1, or None past the cap.
fn projective_order(mats: &[UnimodularMatrix]) -> Option<usize> {
    // close the set G·{±1}; its size is always twice the projective order
    let mut seen: HashSet<UnimodularMatrix> = HashSet::new();
    let mut frontier: Vec<UnimodularMatrix> = vec![UnimodularMatrix::identity(mats[0].field())];
    seen.insert(frontier[0].clone());
    seen.insert(frontier[0].neg());
    while let Some(g) = frontier.pop() {
        for m in mats {
            let h = g.mul(m);
            if seen.insert(h.clone()) {
                seen.insert(h.neg());
                frontier.push(h);
                if seen.len() > 2 * CLOSURE_CAP {
                    return None;
                }
            }
        }
    }
    Some(seen.len() / 2)
}

/// Closed-form orbit length of the dihedral parametric family.
///
/// With u the denominator of x and v the least common denominator of u·y and
/// u·z, the length is u²v²·∏_{odd prime p | v}(1 − p⁻²), halved when u = 1
/// and v ≥ 2. A non-integer result signals misuse of the formula.
pub fn dihedral_length(x: &Rational, y: &Rational, z: &Rational) -> Result<u64, String> {
    let u = x.denom().abs();
    let uy = y * &u;
    let uz = z * &u;
    let v = uy.denom().abs().lcm(&uz.denom().abs());
    let mut len = Rational::new(&u * &u * &v * &v, BigInt::one());
    let two = BigInt::from(2);
    let mut rest = v.clone();
    while rest.is_multiple_of(&two) {
        rest /= &two;
    }
    let mut p = BigInt::from(3);
    while &p * &p <= rest {
        if rest.is_multiple_of(&p) {
            len *= Rational::new(&p * &p - 1, &p * &p);
            while rest.is_multiple_of(&p) {
                rest /= &p;
            }
        }
        p += 2;
    }
    if rest > BigInt::one() {
        len *= Rational::new(&rest * &rest - 1, &rest * &rest);
    }
    if u.is_one() && v > BigInt::one() {
        len /= BigInt::from(2);
    }
    if !len.is_integer() || !len.is_positive() {
        return Err(format!("dihedral length formula gave a non-integer: {len}"));
    }
    len.to_integer()
        .to_u64()
        .ok_or_else(|| "dihedral length out of range".into())
}
