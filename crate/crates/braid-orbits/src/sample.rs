//! Deterministic sample tuples for tests and benchmarks.
//!
//! Tuples drawn from a finite subgroup of SU(2) have every cell trace equal
//! to 2cos(πq) for rational q, so their signatures are exactly representable.
//! The generators used here lie in the binary octahedral group over Q(ζ₈).

use std::sync::Arc;

use crate::cyclo::{CycloField, CycloNumber};
use crate::mat2::UnimodularMatrix;
use crate::tuple::MonodromyTuple;

/// Tiny splittable PRNG (splitmix64), enough for reproducible test data
/// without pulling a RNG crate into the library's public API.
pub struct SplitMix {
    state: u64,
}

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        SplitMix { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in 0..bound.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

/// Generators of the binary octahedral group in SL(2, Q(ζ₈)):
/// the quarter-turn [[0,1],[−1,0]] and the diagonal eighth-root twist.
pub fn octahedral_generators(field: &Arc<CycloField>) -> [UnimodularMatrix; 2] {
    let zero = CycloNumber::zero(field);
    let one = CycloNumber::one(field);
    let s = UnimodularMatrix::new_unchecked([zero.clone(), one.clone(), one.neg(), zero]);
    let z = CycloNumber::root_of_unity(field, 1);
    let t = UnimodularMatrix::diagonal(z);
    [s, t]
}

/// A random word in the group generators and their inverses.
pub fn random_group_element(rng: &mut SplitMix) -> UnimodularMatrix {
    let field = CycloField::new(8);
    let [s, t] = octahedral_generators(&field);
    let letters = [s.clone(), s.inverse(), t.clone(), t.inverse()];
    let mut m = UnimodularMatrix::identity(&field);
    for _ in 0..(2 + rng.below(6)) {
        m = m.mul(&letters[rng.below(4) as usize]);
    }
    m
}

/// A random n-tuple of binary-octahedral elements whose product is the
/// identity, so every cell of its signature is exactly representable.
pub fn random_subgroup_tuple(n: usize, rng: &mut SplitMix) -> MonodromyTuple {
    let field = CycloField::new(8);
    let mut matrices = Vec::with_capacity(n);
    let mut prod = UnimodularMatrix::identity(&field);
    for _ in 0..n - 1 {
        let m = random_group_element(rng);
        prod = prod.mul(&m);
        matrices.push(m);
    }
    matrices.push(prod.inverse());
    MonodromyTuple::new(matrices).expect("product is the identity by construction")
}

/// A random integer unimodular matrix (product of elementary shears), handy
/// for conjugating a tuple without changing its signature.
pub fn random_conjugator(field: &Arc<CycloField>, rng: &mut SplitMix) -> UnimodularMatrix {
    let mut m = UnimodularMatrix::identity(field);
    for _ in 0..3 {
        let t = rng.below(5) as i64 - 2;
        let one = CycloNumber::one(field);
        let zero = CycloNumber::zero(field);
        let e = CycloNumber::from_i64(field, t);
        let shear = if rng.below(2) == 0 {
            UnimodularMatrix::new_unchecked([one.clone(), e, zero, one])
        } else {
            UnimodularMatrix::new_unchecked([one.clone(), zero, e, one])
        };
        m = m.mul(&shear);
    }
    m
}
