//! Orbit enumeration under the braid action.
//!
//! A state of the orbit is a tuple up to simultaneous conjugation together
//! with its label permutation. For non-triangular tuples the conjugation
//! class is faithfully encoded by the complete signature, so the enumeration
//! runs in two phases:
//!
//! 1. a breadth-first closure over *signature classes*, carrying one witness
//!    tuple per class to evaluate the 2n braid generators exactly and
//!    recording the class-transition table;
//! 2. a breadth-first closure over (class, label-permutation) pairs using
//!    only the table — the labels of a braid move never depend on the
//!    matrices.
//!
//! The orbit length is the number of states with trivial label permutation;
//! the total state count must equal length × n! and is verified, not
//! assumed.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::angle::Angle;
use crate::cells::CellId;
use crate::reconstruct::{reconstruct_tuple, Reconstruction};
use crate::signature::{signature_of_tuple, Signature};
use crate::tuple::{braid_tuple, is_triangular, BraidDir, MonodromyTuple};

/// Result of an orbit enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    /// True when the closure completed within budget (the orbit is finite).
    pub finite: bool,
    /// Number of states with trivial label permutation.
    pub length: u64,
    /// Number of labeled states; equals length × n! for finite orbits.
    pub total_states: u64,
    /// True when every generator was applied to every state and landed
    /// inside the visited set.
    pub generator_closure_checked: bool,
}

/// Default labeled-state budget; the largest cataloged orbit needs
/// 3072 × 120 = 368640 states.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// Witnesses are re-normalized by reconstruction when their entries grow
/// past this many bits, keeping the arithmetic flat across deep orbits.
const WITNESS_REFRESH_BITS: u64 = 8_192;

type SigKey = Vec<(CellId, Angle)>;

fn sig_key(s: &Signature) -> SigKey {
    s.cells().map(|(c, v)| (c.clone(), v.clone())).collect()
}

/// Enumerate the orbit of a tuple under all 2n braid generators.
///
/// Triangular tuples are rejected: their conjugation classes are not
/// separated by signatures and their orbits are understood analytically.
/// A trace angle falling outside the rational lattice proves the orbit
/// infinite and reports `finite: false` without error.
pub fn enumerate_orbit(t: &MonodromyTuple, budget: u64) -> Result<OrbitReport, String> {
    if is_triangular(t) {
        return Err("triangular tuples have no signature-faithful orbit".into());
    }
    let n = t.len();
    let nfact: u64 = (1..=n as u64).product();
    let infinite = OrbitReport {
        finite: false,
        length: 0,
        total_states: 0,
        generator_closure_checked: false,
    };
    let Ok(sig0) = signature_of_tuple(t) else {
        // an irrational trace angle cannot occur in a finite orbit
        return Ok(infinite);
    };
    let gens: Vec<(i64, BraidDir)> = (1..=n as i64)
        .flat_map(|k| [(k, BraidDir::Forward), (k, BraidDir::Backward)])
        .collect();

    // phase 1: signature classes and their transition table
    let mut classes: HashMap<SigKey, u32> = HashMap::new();
    let mut trans: Vec<Vec<u32>> = Vec::new();
    let mut queue: VecDeque<(u32, MonodromyTuple)> = VecDeque::new();
    classes.insert(sig_key(&sig0), 0);
    trans.push(vec![u32::MAX; gens.len()]);
    queue.push_back((0, t.clone()));
    while let Some((id, witness)) = queue.pop_front() {
        for (g, &(k, dir)) in gens.iter().enumerate() {
            let mut image = braid_tuple(&witness, k, dir);
            let Ok(sig) = signature_of_tuple(&image) else {
                return Ok(infinite);
            };
            let key = sig_key(&sig);
            let next = classes.len() as u32;
            let id2 = *classes.entry(key).or_insert(next);
            trans[id as usize][g] = id2;
            if id2 == next {
                if classes.len() as u64 > budget {
                    return Ok(infinite);
                }
                if image.bit_size() > WITNESS_REFRESH_BITS {
                    image = match reconstruct_tuple(&sig)? {
                        Reconstruction::Unique(w) => w,
                        other => {
                            return Err(format!(
                                "orbit state lost signature faithfulness: {other:?}"
                            ))
                        }
                    };
                }
                trans.push(vec![u32::MAX; gens.len()]);
                queue.push_back((id2, image));
            }
        }
    }

    // phase 2: labeled covering of the class graph
    let identity: Vec<u8> = (1..=n as u8).collect();
    let mut visited: HashSet<(u32, Vec<u8>)> = HashSet::new();
    let mut frontier: VecDeque<(u32, Vec<u8>)> = VecDeque::new();
    visited.insert((0, identity.clone()));
    frontier.push_back((0, identity.clone()));
    let mut length: u64 = 1;
    while let Some((id, perm)) = frontier.pop_front() {
        for (g, &(k, _)) in gens.iter().enumerate() {
            let id2 = trans[id as usize][g];
            let mut perm2 = perm.clone();
            perm2.swap(k as usize - 1, k as usize % n);
            let state = (id2, perm2);
            if visited.contains(&state) {
                continue;
            }
            if visited.len() as u64 >= budget {
                return Ok(infinite);
            }
            if state.1 == identity {
                length += 1;
            }
            visited.insert(state.clone());
            frontier.push_back(state);
        }
    }
    let total_states = visited.len() as u64;
    if total_states != length * nfact {
        return Err(format!(
            "orbit accounting failed: {total_states} states but length {length} × {n}! = {}",
            length * nfact
        ));
    }
    Ok(OrbitReport {
        finite: true,
        length,
        total_states,
        generator_closure_checked: true,
    })
}

/// Reconstruct a signature and enumerate its orbit.
pub fn orbit_of_signature(s: &Signature, budget: u64) -> Result<OrbitReport, String> {
    match reconstruct_tuple(s)? {
        Reconstruction::Unique(t) => enumerate_orbit(&t, budget),
        Reconstruction::Triangular => {
            Err("signature only has triangular realizations".into())
        }
        Reconstruction::Inconsistent(why) => Err(format!("inconsistent signature: {why}")),
    }
}
