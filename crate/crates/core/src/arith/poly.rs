//! Dense univariate polynomials over a [`Field`].

use super::field::Field;

/// Coefficients low to high, no trailing zeros. The zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as degree 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

/// Polynomial arithmetic over a fixed coefficient field.
#[derive(Debug, Clone)]
pub struct PolyRing<F: Field> {
    pub field: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F) -> Self {
        PolyRing { field }
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(&self, coeffs: &[i64]) -> Poly<F::Elem> {
        self.from_coeffs(coeffs.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![c])
    }

    /// x - a
    pub fn linear_root(&self, a: &F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![self.field.neg(a), self.field.one()])
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.field.zero();
        let coeffs = (0..n)
            .map(|i| self.field.add(a.coeffs.get(i).unwrap_or(&zero), b.coeffs.get(i).unwrap_or(&zero)))
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.field.zero();
        let coeffs = (0..n)
            .map(|i| self.field.sub(a.coeffs.get(i).unwrap_or(&zero), b.coeffs.get(i).unwrap_or(&zero)))
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly { coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect() }
    }

    pub fn scale(&self, a: &Poly<F::Elem>, s: &F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|c| self.field.mul(c, s)).collect())
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut out = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(x, y));
            }
        }
        self.from_coeffs(out)
    }

    /// Quotient and remainder; `None` when dividing by zero.
    pub fn divrem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<(Poly<F::Elem>, Poly<F::Elem>)> {
        let lead_inv = self.field.inv(b.leading()?)?;
        let db = b.coeffs.len() - 1;
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return Some((self.zero(), a.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = self.field.mul(&rem[k + db], &lead_inv);
            if self.field.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[k + j] = self.field.sub(&rem[k + j], &self.field.mul(&c, bj));
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Some((self.from_coeffs(quot), self.from_coeffs(rem)))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.divrem(a, b).expect("nonzero divisor").1
    }

    /// Exact quotient; `None` if `b` does not divide `a`.
    pub fn div_exact(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (q, r) = self.divrem(a, b)?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, b: &Poly<F::Elem>, a: &Poly<F::Elem>) -> bool {
        self.divrem(a, b).is_some_and(|(_, r)| r.is_zero())
    }

    pub fn monic(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        match a.leading().and_then(|l| self.field.inv(l)) {
            Some(inv) => self.scale(a, &inv),
            None => a.clone(),
        }
    }

    /// Extended gcd: (d, s, t) with d = s a + t b and d monic (or zero).
    pub fn xgcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1).expect("nonzero");
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading().and_then(|l| self.field.inv(l)) {
            Some(inv) => (self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv)),
            None => (r0, s0, t0),
        }
    }

    pub fn eval(&self, a: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
        a.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| self.field.add(&self.field.mul(&acc, x), c))
    }

    pub fn derivative(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        let coeffs = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.mul(c, &self.field.from_i64(i as i64)))
            .collect();
        self.from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{ExtField, Rationals};

    #[test]
    fn division_identity_over_fp() {
        let ring = PolyRing::new(ExtField::prime(7).unwrap());
        let a = ring.from_i64s(&[1, 2, 3, 4, 5, 6]);
        let b = ring.from_i64s(&[3, 0, 1]);
        let (q, r) = ring.divrem(&a, &b).unwrap();
        assert!(r.deg0() < 2);
        assert_eq!(ring.add(&ring.mul(&q, &b), &r), a);
    }

    #[test]
    fn xgcd_bezout_over_q() {
        let ring = PolyRing::new(Rationals);
        // (x-1)(x-2) and (x-1)(x+3)
        let a = ring.from_i64s(&[2, -3, 1]);
        let b = ring.from_i64s(&[-3, 2, 1]);
        let (d, s, t) = ring.xgcd(&a, &b);
        assert_eq!(d, ring.from_i64s(&[-1, 1]));
        assert_eq!(ring.add(&ring.mul(&s, &a), &ring.mul(&t, &b)), d);
    }

    #[test]
    fn derivative_and_eval() {
        let ring = PolyRing::new(Rationals);
        let f = ring.from_i64s(&[1, 0, 0, 0, 0, 1]);
        assert_eq!(ring.derivative(&f), ring.from_i64s(&[0, 0, 0, 0, 5]));
        assert_eq!(ring.eval(&f, &ring.field.from_i64(-1)), ring.field.from_i64(0));
    }
}
