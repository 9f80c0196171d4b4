//! Finite fields F_{p^k} (k <= 4) and a minimal field interface shared with Q.
//!
//! Elements carry their parent field, so mixing elements of different fields
//! is detected rather than silently producing garbage.

use std::fmt;

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use super::modular::PrimeField;
use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 4;

/// Arithmetic context for a field whose elements are plain values.
pub trait Field: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + Eq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// F_p[t]/(m(t)) with m monic irreducible of degree 1..=4.
///
/// `modulus` holds the non-leading coefficients m_0..m_{k-1}.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExtField {
    p: u64,
    degree: u8,
    modulus: [u64; MAX_DEGREE],
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}[{:?}]", self.p, self.degree, &self.modulus[..self.degree()])
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    field: ExtField,
    coeffs: [u64; MAX_DEGREE],
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "{:?}", &self.coeffs[..self.field.degree()])
        }
    }
}

impl FieldElement {
    pub fn field(&self) -> &ExtField {
        &self.field
    }

    /// Coefficients on the basis 1, t, ..., t^{k-1}.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs[..self.field.degree()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The residue if this element lies in the prime field.
    pub fn as_prime(&self) -> Option<u64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }
}

fn poly_eval_mod(coeffs: &[u64], x: u64, base: &PrimeField) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| base.add(base.mul(acc, x), c))
}

/// Remainder of a monic `num` (given with leading 1 implicit at index len) by monic quadratic.
fn divisible_by_monic_quadratic(poly: &[u64], q0: u64, q1: u64, base: &PrimeField) -> bool {
    // poly is full coefficient list, low to high, monic
    let mut r: Vec<u64> = poly.to_vec();
    for top in (2..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        r[top] = 0;
        r[top - 1] = base.sub(r[top - 1], base.mul(c, q1));
        r[top - 2] = base.sub(r[top - 2], base.mul(c, q0));
    }
    r[0] == 0 && r[1] == 0
}

impl ExtField {
    /// The prime field as a degree-1 extension.
    pub fn prime(p: u64) -> Result<Self> {
        let base = PrimeField::new(p)?;
        Ok(ExtField { p: base.p(), degree: 1, modulus: [0; MAX_DEGREE] })
    }

    /// F_p[t]/(t^k + m_{k-1} t^{k-1} + ... + m_0), given the lower coefficients.
    pub fn new(base: PrimeField, lower_coeffs: &[u64]) -> Result<Self> {
        let k = lower_coeffs.len();
        if !(1..=MAX_DEGREE).contains(&k) {
            return Err(Error::UnsupportedDegree(k));
        }
        let mut modulus = [0u64; MAX_DEGREE];
        for (slot, &c) in modulus.iter_mut().zip(lower_coeffs) {
            *slot = c % base.p();
        }
        let field = ExtField { p: base.p(), degree: k as u8, modulus };
        if !field.modulus_irreducible() {
            return Err(Error::NotIrreducible);
        }
        Ok(field)
    }

    /// The first irreducible monic modulus of degree `k`, scanning lower
    /// coefficient vectors in base-p counting order.
    pub fn with_degree(p: u64, k: usize) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if !(1..=MAX_DEGREE).contains(&k) {
            return Err(Error::UnsupportedDegree(k));
        }
        if k == 1 {
            return Self::prime(p);
        }
        let total = p.pow(k as u32);
        for n in 0..total {
            let mut lower = vec![0u64; k];
            let mut m = n;
            for c in lower.iter_mut() {
                *c = m % p;
                m /= p;
            }
            if let Ok(f) = Self::new(base, &lower) {
                return Ok(f);
            }
        }
        Err(Error::NotIrreducible)
    }

    fn modulus_irreducible(&self) -> bool {
        let k = self.degree();
        if k == 1 {
            return true;
        }
        let base = self.base();
        let mut full: Vec<u64> = self.modulus[..k].to_vec();
        full.push(1);
        if (0..self.p).any(|x| poly_eval_mod(&full, x, &base) == 0) {
            return false;
        }
        if k == 4 {
            for q0 in 0..self.p {
                for q1 in 0..self.p {
                    if divisible_by_monic_quadratic(&full, q0, q1, &base) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn base(&self) -> PrimeField {
        PrimeField::new_unchecked(self.p)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus[..self.degree()]
    }

    /// Number of elements p^k.
    pub fn size(&self) -> u64 {
        self.p.pow(self.degree as u32)
    }

    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.degree() {
            return Err(Error::InvalidInput("too many coefficients".into()));
        }
        let mut c = [0u64; MAX_DEGREE];
        for (slot, &x) in c.iter_mut().zip(coeffs) {
            *slot = x % self.p;
        }
        Ok(FieldElement { field: *self, coeffs: c })
    }

    pub fn from_u64(&self, n: u64) -> FieldElement {
        let mut c = [0u64; MAX_DEGREE];
        c[0] = n % self.p;
        FieldElement { field: *self, coeffs: c }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_u64(n.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        let r = n % BigInt::from(self.p);
        let r = if r < BigInt::zero() { r + BigInt::from(self.p) } else { r };
        self.from_u64(u64::try_from(r).expect("residue fits"))
    }

    /// The class of t.
    pub fn generator(&self) -> FieldElement {
        let mut c = [0u64; MAX_DEGREE];
        if self.degree == 1 {
            c[0] = 0;
        } else {
            c[1] = 1;
        }
        FieldElement { field: *self, coeffs: c }
    }

    /// The element whose coefficient vector is the base-p expansion of `index`.
    pub fn element_at(&self, index: u64) -> FieldElement {
        let mut c = [0u64; MAX_DEGREE];
        let mut m = index;
        for slot in c.iter_mut().take(self.degree()) {
            *slot = m % self.p;
            m /= self.p;
        }
        FieldElement { field: *self, coeffs: c }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size()).map(move |i| self.element_at(i))
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut b = *a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// x -> x^p.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p)
    }

    /// Quadratic character: 0, 1 or -1.
    pub fn quadratic_character(&self, a: &FieldElement) -> i8 {
        if a.is_zero() {
            return 0;
        }
        if self.degree == 1 {
            return self.base().legendre(a.coeffs[0]);
        }
        if self.pow(a, (self.size() - 1) / 2) == self.one() {
            1
        } else {
            -1
        }
    }

    /// A square root when one exists (Tonelli-Shanks in F_q).
    pub fn sqrt(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return Some(*a);
        }
        if self.degree == 1 {
            return self.base().sqrt(a.coeffs[0]).map(|r| self.from_u64(r));
        }
        if self.quadratic_character(a) != 1 {
            return None;
        }
        let q = self.size();
        let mut odd = q - 1;
        let mut s = 0u32;
        while odd.is_multiple_of(2) {
            odd /= 2;
            s += 1;
        }
        let z = self.elements().find(|z| self.quadratic_character(z) == -1)?;
        let mut m = s;
        let mut c = self.pow(&z, odd);
        let mut t = self.pow(a, odd);
        let mut r = self.pow(a, odd.div_ceil(2));
        let one = self.one();
        while t != one {
            let mut i = 0;
            let mut t2 = t;
            while t2 != one {
                t2 = self.mul(&t2, &t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &FieldElement) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let n = self.size() - 1;
        let mut divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
        divisors.sort_unstable();
        divisors.into_iter().find(|&d| self.pow(a, d) == self.one())
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if a.field != *self {
            Err(Error::FieldMismatch)
        } else {
            Ok(())
        }
    }
}

impl Field for ExtField {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement { field: *self, coeffs: [0; MAX_DEGREE] }
    }

    fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    fn from_i64(&self, n: i64) -> FieldElement {
        self.from_int(n)
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert!(a.field == b.field);
        let mut c = [0u64; MAX_DEGREE];
        for i in 0..self.degree() {
            let s = a.coeffs[i] + b.coeffs[i];
            c[i] = if s >= self.p { s - self.p } else { s };
        }
        FieldElement { field: *self, coeffs: c }
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert!(a.field == b.field);
        let mut c = [0u64; MAX_DEGREE];
        for i in 0..self.degree() {
            c[i] = if a.coeffs[i] >= b.coeffs[i] {
                a.coeffs[i] - b.coeffs[i]
            } else {
                a.coeffs[i] + self.p - b.coeffs[i]
            };
        }
        FieldElement { field: *self, coeffs: c }
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert!(a.field == b.field);
        let p = self.p;
        let k = self.degree();
        if k == 1 {
            let mut c = [0u64; MAX_DEGREE];
            c[0] = a.coeffs[0] * b.coeffs[0] % p;
            return FieldElement { field: *self, coeffs: c };
        }
        let mut prod = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..k {
            if a.coeffs[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a.coeffs[i] * b.coeffs[j]) % p;
            }
        }
        for top in (k..2 * k - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..k {
                let sub = c * self.modulus[i] % p;
                let slot = &mut prod[top - k + i];
                *slot = (*slot + p - sub) % p;
            }
        }
        let mut c = [0u64; MAX_DEGREE];
        c[..k].copy_from_slice(&prod[..k]);
        FieldElement { field: *self, coeffs: c }
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.size() - 2))
        }
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
}

/// Checked product of two elements.
pub fn ext_mul(x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
    x.field.check(y)?;
    Ok(x.field.mul(x, y))
}

pub fn ext_add(x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
    x.field.check(y)?;
    Ok(x.field.add(x, y))
}

pub fn ext_pow(x: &FieldElement, e: u64) -> FieldElement {
    x.field.pow(x, e)
}

pub fn frobenius(x: &FieldElement) -> FieldElement {
    x.field.frobenius(x)
}

/// The field of rational numbers, with exact big rationals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}
