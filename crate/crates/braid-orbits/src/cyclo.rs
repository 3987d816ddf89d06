//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! Elements are stored as integer coefficient vectors over the power basis
//! 1, ζ, …, ζ^(φ(N)−1) (reduced modulo the N-th cyclotomic polynomial) with a
//! single positive denominator. This keeps the hot paths — matrix products
//! and trace extraction during orbit enumeration — in pure big-integer
//! convolutions, with rational normalization once per operation.

use crate::angle::{Angle, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Shared, immutable description of one cyclotomic field Q(ζ_N).
pub struct CycloField {
    order: u32,
    /// Monic integer coefficients of Φ_N, lowest degree first.
    phi: Vec<BigInt>,
    degree: usize,
    trace_table: OnceLock<HashMap<(Vec<BigInt>, BigInt), Angle>>,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloField(Q(zeta_{}))", self.order)
    }
}

fn field_cache() -> &'static Mutex<HashMap<u32, Arc<CycloField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CycloField {
    /// Field handle for Q(ζ_n); handles are cached and shared.
    pub fn new(n: u32) -> Arc<CycloField> {
        assert!(n >= 1, "field order must be positive");
        let mut cache = field_cache().lock().unwrap();
        if let Some(f) = cache.get(&n) {
            return f.clone();
        }
        let phi = cyclotomic_polynomial(n);
        let degree = phi.len() - 1;
        let field = Arc::new(CycloField {
            order: n,
            phi,
            degree,
            trace_table: OnceLock::new(),
        });
        cache.insert(n, field.clone());
        field
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of the field over Q, i.e. φ(order).
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of Φ_N, lowest degree first.
    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.phi
    }

    /// Reduce an integer coefficient vector modulo Φ_N in place.
    fn reduce(&self, num: &mut Vec<BigInt>) {
        while num.len() > self.degree {
            let d = num.len() - 1;
            let lead = num.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let shift = d - self.degree;
            for (i, c) in self.phi[..self.degree].iter().enumerate() {
                let t = &lead * c;
                num[shift + i] -= t;
            }
        }
        while num.len() > 1 && num.last().map_or(false, |c| c.is_zero()) {
            num.pop();
        }
    }

    /// Canonical reduced representation of `ζ_N^k` as (numerators, denominator).
    fn zeta_pow_raw(&self, k: i64) -> Vec<BigInt> {
        let n = self.order as i64;
        let k = k.rem_euclid(n) as usize;
        let mut num = vec![BigInt::zero(); k + 1];
        num[k] = BigInt::one();
        self.reduce(&mut num);
        num
    }

    /// Raw reduced coefficients of 2cos(π·a/b) if it lies in this field.
    fn two_cos_raw(&self, a: i64, b: i64) -> Option<Vec<BigInt>> {
        debug_assert!(b > 0 && a >= 0 && a <= b);
        let n = self.order as i64;
        // Representability of Q(ζ_{2b})⁺ inside Q(ζ_N): rational values for
        // b ≤ 3; conductor b for odd b ≥ 5; conductor 2b for even b ≥ 4.
        let rational: Option<i64> = match b {
            1 => Some(if a % 2 == 0 { 2 } else { -2 }),
            2 => Some(0),
            3 => Some(match a.rem_euclid(6) {
                1 | 5 => 1,
                _ => -1,
            }),
            _ => None,
        };
        if let Some(v) = rational {
            let mut num = vec![BigInt::from(v)];
            self.reduce(&mut num);
            return Some(num);
        }
        let (e, sign) = if b % 2 == 1 {
            if n % b != 0 {
                return None;
            }
            // ζ_{2b} = −ζ_b^{(b+1)/2}
            let e = (a * (b + 1) / 2).rem_euclid(b) * (n / b);
            (e, if a % 2 == 0 { 1 } else { -1 })
        } else {
            if n % (2 * b) != 0 {
                return None;
            }
            ((a * n / (2 * b)).rem_euclid(n), 1)
        };
        let mut num = self.zeta_pow_raw(e);
        let other = self.zeta_pow_raw(-e);
        add_assign_poly(&mut num, &other);
        if sign < 0 {
            for c in &mut num {
                *c = -&*c;
            }
        }
        self.reduce(&mut num);
        Some(num)
    }

    /// Lookup table from canonical trace values to angles, over all angles
    /// representable in this field.
    fn table(&self) -> &HashMap<(Vec<BigInt>, BigInt), Angle> {
        self.trace_table.get_or_init(|| {
            let mut table = HashMap::new();
            let n = self.order as i64;
            let mut dens: Vec<i64> = (1..=2 * n).filter(|b| (2 * n) % b == 0).collect();
            if !dens.contains(&3) {
                dens.push(3);
            }
            for b in dens {
                for a in 0..=b {
                    if a.gcd(&b) != 1 {
                        continue;
                    }
                    if let Some(num) = self.two_cos_raw(a, b) {
                        table.insert((num, BigInt::one()), Angle::from_i64(a, b));
                    }
                }
            }
            table
        })
    }
}

/// An exact element of Q(ζ_N).
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    /// Reduced integer coefficients, lowest degree first, no trailing zeros
    /// beyond index 0; gcd of contents with `den` is 1.
    num: Vec<BigInt>,
    /// Positive denominator.
    den: BigInt,
}

fn add_assign_poly(a: &mut Vec<BigInt>, b: &[BigInt]) {
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x += y;
    }
}

impl CycloNumber {
    fn make(field: Arc<CycloField>, mut num: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        field.reduce(&mut num);
        let mut den = den;
        if den.is_negative() {
            den = -den;
            for c in &mut num {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            den /= &g;
            for c in &mut num {
                *c /= &g;
            }
        }
        if num.is_empty() {
            num.push(BigInt::zero());
        }
        if num.iter().all(|c| c.is_zero()) {
            num.truncate(1);
            den = BigInt::one();
        }
        CycloNumber { field, num, den }
    }

    pub fn zero(field: &Arc<CycloField>) -> Self {
        CycloNumber {
            field: field.clone(),
            num: vec![BigInt::zero()],
            den: BigInt::one(),
        }
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        CycloNumber {
            field: field.clone(),
            num: vec![BigInt::one()],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(field: &Arc<CycloField>, q: Rational) -> Self {
        CycloNumber::make(field.clone(), vec![q.numer().clone()], q.denom().clone())
    }

    pub fn from_i64(field: &Arc<CycloField>, v: i64) -> Self {
        CycloNumber::from_rational(field, Rational::from_integer(v.into()))
    }

    /// ζ_N^k for any integer k.
    pub fn root_of_unity(field: &Arc<CycloField>, k: i64) -> Self {
        CycloNumber::make(field.clone(), field.zeta_pow_raw(k), BigInt::one())
    }

    /// 2cos(π·angle) as an exact element, if representable in this field.
    pub fn two_cos(field: &Arc<CycloField>, angle: &Angle) -> Option<Self> {
        let v = angle.value();
        let a = i64::try_from(v.numer()).ok()?;
        let b = i64::try_from(v.denom()).ok()?;
        let num = field.two_cos_raw(a, b)?;
        Some(CycloNumber::make(field.clone(), num, BigInt::one()))
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    /// Rational coefficients over the power basis, length φ(N).
    pub fn coefficients(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.field.degree);
        for i in 0..self.field.degree {
            let n = self.num.get(i).cloned().unwrap_or_else(BigInt::zero);
            out.push(Rational::new(n, self.den.clone()));
        }
        out
    }

    pub fn from_coefficients(
        field: &Arc<CycloField>,
        coeffs: &[Rational],
    ) -> Self {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        CycloNumber::make(field.clone(), num, den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational()
            .then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Total bit size of the representation; used as a growth heuristic.
    pub fn bit_size(&self) -> u64 {
        self.num.iter().map(|c| c.bits()).sum::<u64>() + self.den.bits()
    }

    /// Promote both operands into the smallest common field.
    fn align(&self, other: &Self) -> (Self, Self) {
        if self.field.order == other.field.order {
            (self.clone(), other.clone())
        } else {
            let m = (self.field.order as u64).lcm(&(other.field.order as u64)) as u32;
            let f = CycloField::new(m);
            (self.embed(&f), other.embed(&f))
        }
    }

    /// Embed into a larger field whose order is a multiple of this one's.
    pub fn embed(&self, target: &Arc<CycloField>) -> Self {
        if target.order == self.field.order {
            return CycloNumber {
                field: target.clone(),
                num: self.num.clone(),
                den: self.den.clone(),
            };
        }
        assert!(
            target.order % self.field.order == 0,
            "cannot embed Q(zeta_{}) into Q(zeta_{})",
            self.field.order,
            target.order
        );
        let k = (target.order / self.field.order) as usize;
        let mut num = vec![BigInt::zero(); (self.num.len() - 1) * k + 1];
        for (i, c) in self.num.iter().enumerate() {
            num[i * k] = c.clone();
        }
        CycloNumber::make(target.clone(), num, self.den.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        let g = a.den.gcd(&b.den);
        let ma = &b.den / &g;
        let mb = &a.den / &g;
        let den = &a.den * &ma;
        let mut num: Vec<BigInt> = a.num.iter().map(|c| c * &ma).collect();
        let bn: Vec<BigInt> = b.num.iter().map(|c| c * &mb).collect();
        add_assign_poly(&mut num, &bn);
        CycloNumber::make(a.field, num, den)
    }

    pub fn neg(&self) -> Self {
        CycloNumber {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        let mut num = vec![BigInt::zero(); a.num.len() + b.num.len() - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                num[i + j] += x * y;
            }
        }
        let den = &a.den * &b.den;
        CycloNumber::make(a.field, num, den)
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        CycloNumber::make(self.field.clone(), num, &self.den * q.denom())
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in cyclotomic field");
        // Extended Euclid over Q[x] against Φ_N.
        let phi: Vec<Rational> = self
            .field
            .phi
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let a = self.coefficients();
        let (g, _, t) = poly_ext_gcd(&phi, &a);
        // g is a nonzero constant (Φ_N is irreducible over Q).
        debug_assert!(g.len() == 1 && !g[0].is_zero());
        let inv_g = Rational::one() / &g[0];
        let coeffs: Vec<Rational> = t.iter().map(|c| c * &inv_g).collect();
        CycloNumber::from_coefficients(&self.field, &coeffs)
    }

    /// Image under complex conjugation ζ ↦ ζ⁻¹.
    pub fn conjugate(&self) -> Self {
        let mut num = vec![BigInt::zero(); self.field.order as usize];
        let n = self.field.order as usize;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            num[(n - i) % n] += c;
        }
        CycloNumber::make(self.field.clone(), num, self.den.clone())
    }

    /// Approximate complex value with ζ_N = exp(2πi/N); cross-check only,
    /// never authoritative.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.field.order as f64;
        let den = approx_bigint(&self.den);
        let (mut re, mut im) = (0.0, 0.0);
        for (i, c) in self.num.iter().enumerate() {
            let c = approx_bigint(c) / den;
            let t = 2.0 * std::f64::consts::PI * (i as f64) / n;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }
}

fn approx_bigint(v: &BigInt) -> f64 {
    let s = v.to_string();
    s.parse::<f64>().unwrap_or(f64::NAN)
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.field.order == other.field.order {
            self.num == other.num && self.den == other.den
        } else {
            let (a, b) = self.align(other);
            a.num == b.num && a.den == b.den
        }
    }
}

impl Eq for CycloNumber {}

impl std::hash::Hash for CycloNumber {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo[{}](", self.field.order)?;
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() && !(self.is_zero() && i == 0) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*z^{i}")?;
            }
            first = false;
        }
        if !self.den.is_one() {
            write!(f, ")/{}", self.den)?;
        } else {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Construct exp(iπq) = ζ_{2N}^{qN} in Q(ζ_{2N}); requires denom(q) | N.
pub fn cyclo_embed(q: &Rational, order: u32) -> CycloNumber {
    let den = q.denom();
    assert!(
        (Rational::from_integer(BigInt::from(order)) * q).is_integer(),
        "denominator {den} does not divide field order {order}"
    );
    let field = CycloField::new(2 * order);
    let k = q * Rational::from_integer(BigInt::from(order));
    let k = i64::try_from(k.numer()).expect("exponent overflow");
    CycloNumber::root_of_unity(&field, k)
}

/// Exact match of a trace against 2cos(π·rational); `None` when the value is
/// not of that form in its field.
pub fn trace_to_angle(t: &CycloNumber) -> Option<Angle> {
    t.field
        .table()
        .get(&(t.num.clone(), t.den.clone()))
        .cloned()
}

/// Monic integer coefficients of the n-th cyclotomic polynomial, lowest
/// degree first, computed by the prime-factor quotient method.
fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    // Start from x − 1 and apply current(x^p)/current(x) per prime p | n,
    // then substitute x^(n/radical).
    let mut current = vec![BigInt::from(-1), BigInt::from(1)];
    let mut radical = 1u32;
    let mut m = n;
    let mut p = 2u32;
    while m > 1 {
        if m % p == 0 {
            radical *= p;
            while m % p == 0 {
                m /= p;
            }
            let stretched = poly_substitute_power(&current, p as usize);
            current = poly_div_exact(&stretched, &current);
        }
        p += 1;
        if p * p > m && m > 1 {
            radical *= m;
            let stretched = poly_substitute_power(&current, m as usize);
            current = poly_div_exact(&stretched, &current);
            m = 1;
        }
    }
    poly_substitute_power(&current, (n / radical) as usize)
}

fn poly_substitute_power(p: &[BigInt], k: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); (p.len() - 1) * k + 1];
    for (i, c) in p.iter().enumerate() {
        out[i * k] = c.clone();
    }
    out
}

/// Exact division of integer polynomials (panics if not exact).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let lead = den.last().unwrap();
    assert!(!lead.is_zero());
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        let (q, r) = c.div_rem(lead);
        assert!(r.is_zero(), "inexact polynomial division");
        quot[i - dd] = q.clone();
        for (j, dc) in den.iter().enumerate() {
            let t = &q * dc;
            rem[i - dd + j] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

fn poly_trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

/// Extended Euclid over Q[x]: returns (g, s, t) with s·a + t·b = g.
fn poly_ext_gcd(
    a: &[Rational],
    b: &[Rational],
) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let mut r0: Vec<Rational> = a.to_vec();
    let mut r1: Vec<Rational> = b.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let zero = || vec![Rational::zero()];
    let one = || vec![Rational::one()];
    let (mut s0, mut s1) = (one(), zero());
    let (mut t0, mut t1) = (zero(), one());
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_div_rem_q(&r0, &r1);
        let s2 = poly_sub_q(&s0, &poly_mul_q(&q, &s1));
        let t2 = poly_sub_q(&t0, &poly_mul_q(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    (r0, s0, t0)
}

fn poly_mul_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_sub_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), Rational::zero());
    }
    for (x, y) in out.iter_mut().zip(b.iter()) {
        *x -= y;
    }
    poly_trim(&mut out);
    out
}

fn poly_div_rem_q(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    if rem.len() <= db {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let q = &rem[i] / lead;
        quot[i - db] = q.clone();
        for (j, dc) in b.iter().enumerate() {
            let t = &q * dc;
            rem[i - db + j] -= t;
        }
    }
    poly_trim(&mut quot);
    poly_trim(&mut rem);
    (quot, rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::rat;

    fn phi_coeffs(n: u32) -> Vec<i64> {
        cyclotomic_polynomial(n)
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(phi_coeffs(1), vec![-1, 1]);
        assert_eq!(phi_coeffs(2), vec![1, 1]);
        assert_eq!(phi_coeffs(3), vec![1, 1, 1]);
        assert_eq!(phi_coeffs(4), vec![1, 0, 1]);
        assert_eq!(phi_coeffs(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(phi_coeffs(6), vec![1, -1, 1]);
        assert_eq!(phi_coeffs(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(phi_coeffs(18), vec![1, 0, 0, -1, 0, 0, 1]);
        assert_eq!(phi_coeffs(105).len(), 49);
        assert_eq!(phi_coeffs(105)[41], -2);
    }

    #[test]
    fn sixth_root_minimal_polynomial() {
        // cyclo_embed(1/3, 3) must satisfy t² − t + 1 = 0.
        let z = cyclo_embed(&rat(1, 3), 3);
        let t2 = z.mul(&z);
        let lhs = t2.sub(&z).add(&CycloNumber::one(z.field()));
        assert!(lhs.is_zero());
    }

    #[test]
    fn embed_inverse_pairs() {
        for (num, den) in [(0i64, 1i64), (1, 1), (1, 3), (2, 5), (5, 6), (3, 7)] {
            let q = rat(num, den);
            let a = cyclo_embed(&q, den.unsigned_abs() as u32 * 2);
            let b = cyclo_embed(&(-q), den.unsigned_abs() as u32 * 2);
            assert!(a.mul(&b).as_rational() == Some(rat(1, 1)));
        }
        assert_eq!(cyclo_embed(&rat(0, 1), 4).as_rational(), Some(rat(1, 1)));
        assert_eq!(cyclo_embed(&rat(1, 1), 4).as_rational(), Some(rat(-1, 1)));
    }

    #[test]
    fn trace_angle_examples() {
        let f = CycloField::new(4);
        let two = CycloNumber::from_i64(&f, 2);
        let zero = CycloNumber::zero(&f);
        let one = CycloNumber::one(&f);
        let neg2 = CycloNumber::from_i64(&f, -2);
        assert_eq!(trace_to_angle(&two), Some(Angle::zero()));
        assert_eq!(trace_to_angle(&zero), Some(Angle::from_i64(1, 2)));
        assert_eq!(trace_to_angle(&one), Some(Angle::from_i64(1, 3)));
        assert_eq!(trace_to_angle(&neg2), Some(Angle::from_i64(1, 1)));
    }

    #[test]
    fn trace_angle_golden_ratio() {
        // 2cos(π/5) = (1+√5)/2 lies in Q(ζ₅).
        let f = CycloField::new(5);
        let t = CycloNumber::two_cos(&f, &Angle::from_i64(1, 5)).unwrap();
        assert_eq!(trace_to_angle(&t), Some(Angle::from_i64(1, 5)));
        let (re, im) = t.approx();
        assert!((re - 2.0 * (std::f64::consts::PI / 5.0).cos()).abs() < 1e-9);
        assert!(im.abs() < 1e-9);
        // √2 does not live in Q(ζ₅)
        assert!(CycloNumber::two_cos(&f, &Angle::from_i64(1, 4)).is_none());
    }

    #[test]
    fn trace_round_trip_small_denominators() {
        for b in 1..=12i64 {
            for a in 0..=b {
                if num_integer::gcd(a, b) != 1 {
                    continue;
                }
                let angle = Angle::from_i64(a, b);
                let order = 2 * b as u32;
                let f = CycloField::new(order);
                let e = cyclo_embed(&rat(a, b), order).embed(&CycloField::new(2 * order));
                let t = e.add(&cyclo_embed(&rat(-a, b), order).embed(&CycloField::new(2 * order)));
                assert_eq!(trace_to_angle(&t), Some(angle.clone()), "a={a} b={b}");
                let direct = CycloNumber::two_cos(&f, &angle).unwrap();
                assert_eq!(trace_to_angle(&direct), Some(angle), "direct a={a} b={b}");
            }
        }
    }

    #[test]
    fn not_representable() {
        let f = CycloField::new(5);
        let z = CycloNumber::root_of_unity(&f, 1);
        let t = z.add(&CycloNumber::one(&f));
        assert_eq!(trace_to_angle(&t), None);
    }

    #[test]
    fn inverse_and_field_ops() {
        let f = CycloField::new(12);
        let a = CycloNumber::root_of_unity(&f, 5)
            .add(&CycloNumber::from_rational(&f, rat(3, 7)));
        let inv = a.inverse();
        assert_eq!(a.mul(&inv), CycloNumber::one(&f));
        let b = CycloNumber::root_of_unity(&f, 7).sub(&CycloNumber::from_i64(&f, 2));
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.add(&b).sub(&b), a);
    }

    #[test]
    fn conjugation() {
        let f = CycloField::new(7);
        let z = CycloNumber::root_of_unity(&f, 2);
        assert_eq!(z.conjugate(), CycloNumber::root_of_unity(&f, 5));
        let t = z.add(&z.conjugate());
        assert_eq!(t.conjugate(), t);
    }

    #[test]
    fn cross_field_promotion() {
        let a = CycloNumber::root_of_unity(&CycloField::new(4), 1);
        let b = CycloNumber::root_of_unity(&CycloField::new(3), 1);
        let p = a.mul(&b);
        assert_eq!(p.order(), 12);
        assert_eq!(p, CycloNumber::root_of_unity(&CycloField::new(12), 7));
    }
}
