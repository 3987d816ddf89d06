//! Explicit matrix tuples for the known orbit families.
//!
//! Each constructor instantiates one of the cataloged parametric families at
//! exact parameter values, with entries in a cyclotomic field just large
//! enough for the requested angles. Angle parameters follow the convention
//! X = exp(iπx) throughout.


use num_bigint::BigInt;
use num_integer::Integer;

use crate::angle::{Angle, Rational};
use crate::cyclo::{CycloField, CycloNumber};
use crate::mat2::UnimodularMatrix;
use crate::tuple::MonodromyTuple;

/// Common denominator of a set of angles, for sizing the working field.
fn common_denominator(angles: &[&Angle]) -> u32 {
    let mut d = BigInt::from(1);
    for a in angles {
        d = d.lcm(&a.denom());
    }
    u32::try_from(d).expect("angle denominator out of range")
}

/// exp(iπa) in Q(ζ_{2d}) where d is a multiple of the denominator of a.
fn unit(a: &Angle, d: u32) -> CycloNumber {
    crate::cyclo::cyclo_embed(a.value(), d)
}

/// The length-16 tetrahedral 5-tuple built by inducting two 4-tuples.
pub fn tuple_f() -> MonodromyTuple {
    let f = CycloField::new(4);
    let i = CycloNumber::root_of_unity(&f, 1);
    let c = |v: i64| CycloNumber::from_i64(&f, v);
    let m = |e: [CycloNumber; 4]| UnimodularMatrix::new(e).unwrap();
    MonodromyTuple::new(vec![
        m([c(1), c(1), c(-1), c(0)]),
        m([c(0), c(-1), c(1), c(1)]),
        m([c(1), c(1), c(-1), c(0)]),
        m([c(0), i.neg(), i.neg(), c(1)]),
        m([i.clone(), i.sub(&c(1)), c(0), i.neg()]),
    ])
    .expect("tuple F")
}

/// The five 4-tuples whose inductions assemble [`tuple_f`]; reductions of
/// the F orbit land among their orbits.
pub fn tuple_f_sources() -> [MonodromyTuple; 5] {
    let f = CycloField::new(4);
    let i = CycloNumber::root_of_unity(&f, 1);
    let c = |v: i64| CycloNumber::from_i64(&f, v);
    let m = |e: [CycloNumber; 4]| UnimodularMatrix::new(e).unwrap();
    let p = || m([c(1), c(1), c(-1), c(0)]); // [[1,1],[-1,0]]
    let q = || m([c(0), c(-1), c(1), c(1)]); // [[0,-1],[1,1]]
    let r = || m([c(0), i.neg(), i.neg(), c(1)]); // [[0,-i],[-i,1]]
    let s = || m([i.clone(), i.sub(&c(1)), c(0), i.neg()]); // [[i,i-1],[0,-i]]
    let t = |v: Vec<UnimodularMatrix>| MonodromyTuple::new(v).expect("source tuple");
    [
        t(vec![UnimodularMatrix::identity(&f), p(), r(), s()]),
        t(vec![p(), UnimodularMatrix::identity(&f), r(), s()]),
        t(vec![p(), q(), m([i.neg(), c(1).sub(&i), c(0), i.clone()]), s()]),
        t(vec![p(), q(), p(), q()]),
        t(vec![q(), p(), r(), m([c(1), i.clone(), i.clone(), c(0)])]),
    ]
}

/// Triangular 5-tuple: four lower-triangular matrices with the given
/// diagonal angles and subdiagonal entries, closed by the product inverse.
pub fn lower_triangular_tuple(
    angles: [&Angle; 4],
    shears: [&Rational; 4],
) -> Result<MonodromyTuple, String> {
    let d = common_denominator(&angles);
    let field = unit(angles[0], d).field().clone();
    let mut mats = Vec::with_capacity(5);
    for (a, v) in angles.iter().zip(shears) {
        let x = unit(a, d);
        mats.push(UnimodularMatrix::new([
            x.clone(),
            CycloNumber::zero(&field),
            CycloNumber::from_rational(&field, v.clone()),
            x.inverse(),
        ])?);
    }
    let prod = mats
        .iter()
        .fold(UnimodularMatrix::identity(&field), |p, m| p.mul(m));
    mats.push(prod.inverse());
    MonodromyTuple::new(mats)
}

/// Dihedral 5-tuple with two anti-diagonal and three diagonal matrices
/// (orbit length 2^{n−3} = 4).
pub fn three_letter_4(x: &Angle, y: &Angle, z: &Angle) -> MonodromyTuple {
    let d = common_denominator(&[x, y, z]);
    let (x, y, z) = (unit(x, d), unit(y, d), unit(z, d));
    let one = CycloNumber::one(x.field());
    MonodromyTuple::new(vec![
        UnimodularMatrix::anti_diagonal(one),
        UnimodularMatrix::diagonal(x.clone()),
        UnimodularMatrix::diagonal(y.clone()),
        UnimodularMatrix::diagonal(z.clone()),
        UnimodularMatrix::anti_diagonal(x.mul(&y).mul(&z).inverse().neg()),
    ])
    .expect("dihedral tuple")
}

/// Dihedral 5-tuple with four anti-diagonal matrices; its orbit length is
/// given by the closed-form [`crate::subgroup::dihedral_length`].
pub fn three_letter_big(x: &Angle, y: &Angle, z: &Angle) -> MonodromyTuple {
    let d = common_denominator(&[x, y, z]);
    let (x, y, z) = (unit(x, d), unit(y, d), unit(z, d));
    let one = CycloNumber::one(x.field());
    MonodromyTuple::new(vec![
        UnimodularMatrix::anti_diagonal(one),
        UnimodularMatrix::anti_diagonal(x.mul(&y).neg()),
        UnimodularMatrix::diagonal(x.clone()),
        UnimodularMatrix::anti_diagonal(y.mul(&z.inverse())),
        UnimodularMatrix::anti_diagonal(z.inverse().neg()),
    ])
    .expect("dihedral tuple")
}

/// One-parameter 5-tuple of orbit length 9.
pub fn one_letter_9(a: &Angle) -> MonodromyTuple {
    let d = common_denominator(&[a]);
    let x = unit(a, d);
    let f = x.field().clone();
    let (zero, one) = (CycloNumber::zero(&f), CycloNumber::one(&f));
    let lower = UnimodularMatrix::new([x.clone(), zero.clone(), one.clone(), x.inverse()])
        .expect("unimodular");
    let x2 = x.mul(&x);
    let m5 = UnimodularMatrix::new([
        one.add(&x2).neg(),
        x2.mul(&x),
        x.add(&x.inverse()).add(&x2.mul(&x).inverse()).neg(),
        x2.clone(),
    ])
    .expect("unimodular");
    let m4 = UnimodularMatrix::new([x.inverse(), one.neg(), zero, x.clone()]).expect("unimodular");
    MonodromyTuple::new(vec![lower.clone(), lower.clone(), lower, m4, m5]).expect("length-9 tuple")
}

/// One-parameter 5-tuple of orbit length 12.
pub fn one_letter_12(a: &Angle) -> MonodromyTuple {
    let d = common_denominator(&[a]);
    let x = unit(a, d);
    let f = x.field().clone();
    let (zero, one) = (CycloNumber::zero(&f), CycloNumber::one(&f));
    let x2 = x.mul(&x);
    let m1 = UnimodularMatrix::new([x.clone(), zero.clone(), one.neg(), x.inverse()])
        .expect("unimodular");
    let m2 = UnimodularMatrix::new([x.inverse(), one.clone(), zero.clone(), x.clone()])
        .expect("unimodular");
    let m3 = UnimodularMatrix::new([
        x2.neg(),
        zero,
        x.add(&x.inverse()),
        x2.inverse().neg(),
    ])
    .expect("unimodular");
    MonodromyTuple::new(vec![m1.clone(), m2.clone(), m3, m2, m1]).expect("length-12 tuple")
}

/// Exceptional 5-tuple of orbit length 105; `k` in 1..=3 selects which
/// primitive seventh root of unity s = exp(2iπk/7) is used.
pub fn no_letter_105(k: u32) -> MonodromyTuple {
    assert!((1..=3).contains(&k), "k selects one of three roots");
    let f = CycloField::new(7);
    let s = CycloNumber::root_of_unity(&f, k as i64);
    let one = CycloNumber::one(&f);
    let pow = |b: &CycloNumber, e: u32| {
        let mut r = one.clone();
        for _ in 0..e {
            r = r.mul(b);
        }
        r
    };
    let sm1 = s.sub(&one); // s - 1
    let sp1 = s.add(&one); // s + 1
    let s2p1 = s.mul(&s).add(&one); // s² + 1
    let seventh = Rational::new(BigInt::from(1), BigInt::from(7));
    let m1 = UnimodularMatrix::new([s.clone(), CycloNumber::zero(&f), CycloNumber::zero(&f), pow(&s, 6)])
        .expect("unimodular");
    let a = pow(&s, 6)
        .mul(&pow(&sm1, 5))
        .mul(&pow(&sp1, 3))
        .mul(&pow(&s2p1, 2))
        .mul_rational(&seventh);
    let b = pow(&s, 5).mul(&s2p1).mul_rational(&seventh);
    let c = s.mul(&pow(&sm1, 4)).mul(&pow(&sp1, 3));
    let dd = pow(&s, 3)
        .mul(&pow(&sm1.neg(), 5))
        .mul(&pow(&sp1, 3))
        .mul(&pow(&s2p1, 2))
        .mul_rational(&seventh);
    let m2 = UnimodularMatrix::new([a, b, c, dd]).expect("unimodular");
    let conj = |e: i64| {
        let g = UnimodularMatrix::diagonal(CycloNumber::root_of_unity(&f, e));
        g.mul(&m2).mul(&g.inverse())
    };
    // M1 = diag(s, s⁶), so conjugating M2 by M1^j is conjugation by diag(s^j, ·)
    MonodromyTuple::new(vec![m1, m2.clone(), conj(2 * k as i64), conj(-3 * k as i64), conj(-(k as i64))])
        .expect("length-105 tuple")
}

/// Exceptional 5-tuple of orbit length 192, with entries in Q(√5) ⊂ Q(ζ₅).
pub fn no_letter_192() -> MonodromyTuple {
    let f = CycloField::new(5);
    let one = CycloNumber::one(&f);
    let z = CycloNumber::root_of_unity(&f, 1);
    let sqrt5 = z.add(&z.inverse()).mul_rational(&Rational::from_integer(BigInt::from(2))).add(&one);
    let half = |a: i64, b: i64| {
        // (a + b·√5)/2
        CycloNumber::from_i64(&f, a)
            .add(&sqrt5.mul_rational(&Rational::from_integer(BigInt::from(b))))
            .mul_rational(&Rational::new(BigInt::from(1), BigInt::from(2)))
    };
    let c = |v: i64| CycloNumber::from_i64(&f, v);
    let m = |e: [CycloNumber; 4]| UnimodularMatrix::new(e).expect("unimodular");
    MonodromyTuple::new(vec![
        m([c(-1), c(1), c(0), c(-1)]),
        m([c(-1), c(0), c(-1), c(-1)]),
        m([half(-1, -1), c(1), half(-3, 1), half(-3, 1)]),
        m([half(1, -1), half(3, -1), half(-3, 1), half(-5, 1)]),
        m([half(-1, -1), half(3, -1), c(-1), half(-3, 1)]),
    ])
    .expect("length-192 tuple")
}

/// One-parameter 6-tuple (the n = 6 member of the C family).
pub fn six_c(a: &Angle) -> MonodromyTuple {
    let d = common_denominator(&[a]);
    let x = unit(a, d);
    let f = x.field().clone();
    let (zero, one) = (CycloNumber::zero(&f), CycloNumber::one(&f));
    let lower = UnimodularMatrix::new([x.clone(), zero.clone(), one.clone(), x.inverse()])
        .expect("unimodular");
    let upper = UnimodularMatrix::new([x.inverse(), one.neg(), zero.clone(), x.clone()])
        .expect("unimodular");
    let m3 = UnimodularMatrix::new([x.inverse().neg(), one.clone(), zero, x.neg()])
        .expect("unimodular");
    MonodromyTuple::new(vec![lower.clone(), upper.clone(), m3, lower, upper.clone(), upper])
        .expect("six-matrix tuple")
}

/// The five parametric 4-signatures whose inductions merge into the
/// signature of [`tuple_f`]: two dihedral-type families with a zero matrix
/// angle, one concrete tetrahedral signature, one free linear family, and a
/// one-parameter family. Evaluating the merged candidates at the right
/// parameter values recovers the tetrahedral 5-signature.
pub fn merge_seed_signatures() -> Vec<crate::signature::ParamSignature> {
    use crate::affine::parse_affine;
    use crate::cells::CellId;
    use crate::signature::ParamSignature;
    // values per column: theta_1..theta_4, sigma_12, sigma_23, sigma_13, sigma_24
    let rows: [[&str; 8]; 5] = [
        ["0", "x", "y", "z", "x", "z", "y", "y"],
        ["a", "0", "b", "c", "a", "b", "c", "c"],
        ["1/3", "1/3", "1/2", "1/2", "0", "1/3", "2/3", "2/3"],
        ["f", "g", "h", "f+g+h", "f+g", "g+h", "f+h", "f+h"],
        ["2u+1", "u", "1/3", "u", "3u+1", "1/2", "1/3", "1/3"],
    ];
    let cells = [
        CellId::theta(1, 4),
        CellId::theta(2, 4),
        CellId::theta(3, 4),
        CellId::theta(4, 4),
        CellId::sigma(&[1, 2], 4),
        CellId::sigma(&[2, 3], 4),
        CellId::sigma(&[1, 3], 4),
        CellId::sigma(&[2, 4], 4),
    ];
    rows.iter()
        .map(|row| {
            let mut s = ParamSignature::new(4);
            for (cell, text) in cells.iter().zip(row) {
                s.insert(cell.clone(), parse_affine(text).unwrap());
            }
            s
        })
        .collect()
}
