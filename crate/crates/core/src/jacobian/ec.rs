//! Chord-tangent group law on y² = x³ + ax + b over any field of characteristic ≠ 2, 3.

use crate::arith::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EcPoint<E> {
    Identity,
    Affine { x: E, y: E },
}

#[derive(Debug, Clone)]
pub struct EcGroup<F: Field> {
    pub field: F,
    pub a: F::Elem,
    pub b: F::Elem,
}

impl<F: Field> EcGroup<F> {
    pub fn new(field: F, a: i64, b: i64) -> Self {
        let (a, b) = (field.from_i64(a), field.from_i64(b));
        EcGroup { field, a, b }
    }

    pub fn contains(&self, p: &EcPoint<F::Elem>) -> bool {
        match p {
            EcPoint::Identity => true,
            EcPoint::Affine { x, y } => {
                let f = &self.field;
                let rhs = f.add(&f.add(&f.mul(&f.square(x), x), &f.mul(&self.a, x)), &self.b);
                f.square(y) == rhs
            }
        }
    }

    pub fn neg(&self, p: &EcPoint<F::Elem>) -> EcPoint<F::Elem> {
        match p {
            EcPoint::Identity => EcPoint::Identity,
            EcPoint::Affine { x, y } => EcPoint::Affine { x: x.clone(), y: self.field.neg(y) },
        }
    }

    pub fn add(&self, p: &EcPoint<F::Elem>, q: &EcPoint<F::Elem>) -> EcPoint<F::Elem> {
        let f = &self.field;
        let (x1, y1, x2, y2) = match (p, q) {
            (EcPoint::Identity, _) => return q.clone(),
            (_, EcPoint::Identity) => return p.clone(),
            (EcPoint::Affine { x: x1, y: y1 }, EcPoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if f.is_zero(&f.add(y1, y2)) {
                return EcPoint::Identity;
            }
            let num = f.add(&f.mul(&f.from_i64(3), &f.square(x1)), &self.a);
            f.div(&num, &f.add(y1, y1)).expect("2y ≠ 0")
        } else {
            f.div(&f.sub(y2, y1), &f.sub(x2, x1)).expect("distinct x")
        };
        let x3 = f.sub(&f.sub(&f.square(&lambda), x1), x2);
        let y3 = f.sub(&f.mul(&lambda, &f.sub(x1, &x3)), y1);
        EcPoint::Affine { x: x3, y: y3 }
    }

    pub fn mul(&self, p: &EcPoint<F::Elem>, n: u64) -> EcPoint<F::Elem> {
        let mut acc = EcPoint::Identity;
        let mut base = p.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn mul_signed(&self, p: &EcPoint<F::Elem>, n: i64) -> EcPoint<F::Elem> {
        let q = self.mul(p, n.unsigned_abs());
        if n < 0 {
            self.neg(&q)
        } else {
            q
        }
    }
}
