//! Mumford representation and Cantor's algorithm for y² = f(x), deg f = 5.

use crate::arith::field::Field;
use crate::arith::poly::{Poly, PolyRing};

/// A reduced divisor class (u, v): u monic, deg v < deg u ≤ 2, u | v² − f.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mumford<E> {
    pub u: Poly<E>,
    pub v: Poly<E>,
}

#[derive(Debug, Clone)]
pub struct HyperJacobian<F: Field> {
    pub ring: PolyRing<F>,
    pub f: Poly<F::Elem>,
}

pub const GENUS: usize = 2;

impl<F: Field> HyperJacobian<F> {
    pub fn new(field: F, f: &[i64]) -> Self {
        let ring = PolyRing::new(field);
        let f = ring.from_i64s(f);
        HyperJacobian { ring, f }
    }

    pub fn identity(&self) -> Mumford<F::Elem> {
        Mumford { u: self.ring.one(), v: self.ring.zero() }
    }

    pub fn is_identity(&self, d: &Mumford<F::Elem>) -> bool {
        d.u.deg0() == 0
    }

    pub fn contains(&self, d: &Mumford<F::Elem>) -> bool {
        let r = &self.ring;
        let monic = d.u.leading().is_some_and(|l| *l == r.field.one());
        let du = d.u.deg0();
        monic
            && du <= GENUS
            && (d.v.is_zero() || d.v.deg0() < du)
            && r.divides(&d.u, &r.sub(&r.mul(&d.v, &d.v), &self.f))
    }

    /// [(a, b) − ∞]
    pub fn point_class(&self, a: &F::Elem, b: &F::Elem) -> Mumford<F::Elem> {
        Mumford { u: self.ring.linear_root(a), v: self.ring.constant(b.clone()) }
    }

    pub fn neg(&self, d: &Mumford<F::Elem>) -> Mumford<F::Elem> {
        let r = &self.ring;
        Mumford { u: d.u.clone(), v: r.rem(&r.neg(&d.v), &d.u) }
    }

    pub fn add(&self, d1: &Mumford<F::Elem>, d2: &Mumford<F::Elem>) -> Mumford<F::Elem> {
        let r = &self.ring;
        let (d0, e1, e2) = r.xgcd(&d1.u, &d2.u);
        let (d, c1, c2) = r.xgcd(&d0, &r.add(&d1.v, &d2.v));
        let s1 = r.mul(&c1, &e1);
        let s2 = r.mul(&c1, &e2);
        let s3 = c2;
        let u = r.div_exact(&r.mul(&d1.u, &d2.u), &r.mul(&d, &d)).expect("d² | u1 u2");
        let num = r.add(
            &r.add(&r.mul(&r.mul(&s1, &d1.u), &d2.v), &r.mul(&r.mul(&s2, &d2.u), &d1.v)),
            &r.mul(&s3, &r.add(&r.mul(&d1.v, &d2.v), &self.f)),
        );
        let v = r.rem(&r.div_exact(&num, &d).expect("d divides the composition numerator"), &u);
        self.reduce(u, v)
    }

    fn reduce(&self, mut u: Poly<F::Elem>, mut v: Poly<F::Elem>) -> Mumford<F::Elem> {
        let r = &self.ring;
        while u.deg0() > GENUS {
            let u2 = r.div_exact(&r.sub(&self.f, &r.mul(&v, &v)), &u).expect("u | f − v²");
            let v2 = r.rem(&r.neg(&v), &u2);
            u = u2;
            v = v2;
        }
        let u = r.monic(&u);
        let v = r.rem(&v, &u);
        Mumford { u, v }
    }

    pub fn mul(&self, d: &Mumford<F::Elem>, n: u64) -> Mumford<F::Elem> {
        let mut acc = self.identity();
        let mut base = d.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    pub fn mul_signed(&self, d: &Mumford<F::Elem>, n: i64) -> Mumford<F::Elem> {
        let q = self.mul(d, n.unsigned_abs());
        if n < 0 {
            self.neg(&q)
        } else {
            q
        }
    }
}
