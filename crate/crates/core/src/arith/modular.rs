//! Prime fields, Legendre symbols and modular square roots.

use serde::{Deserialize, Serialize};

use super::primes::{is_prime, pow_mod};
use crate::error::{Error, Result};

/// The prime field F_p for an odd prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::CompositeModulus(p));
        }
        // products of two residues must fit in u64
        if p >= 1 << 31 {
            return Err(Error::InvalidInput(format!("prime {p} too large for field arithmetic")));
        }
        Ok(PrimeField { p })
    }

    /// For moduli already validated elsewhere.
    pub(crate) fn new_unchecked(p: u64) -> Self {
        PrimeField { p }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    /// Legendre symbol of a residue.
    pub fn legendre(&self, a: u64) -> i8 {
        let a = a % self.p;
        if a == 0 {
            return 0;
        }
        if self.pow(a, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// Tonelli-Shanks; returns the smaller of the two roots.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if self.legendre(a) != 1 {
            return None;
        }
        let root = if p % 4 == 3 {
            self.pow(a, (p + 1) / 4)
        } else {
            let mut q = p - 1;
            let mut s = 0u32;
            while q.is_multiple_of(2) {
                q /= 2;
                s += 1;
            }
            let z = (2..p).find(|&z| self.legendre(z) == -1).expect("odd prime has a non-residue");
            let mut m = s;
            let mut c = self.pow(z, q);
            let mut t = self.pow(a, q);
            let mut r = self.pow(a, q.div_ceil(2));
            while t != 1 {
                let mut i = 0;
                let mut t2 = t;
                while t2 != 1 {
                    t2 = self.mul(t2, t2);
                    i += 1;
                }
                let mut b = c;
                for _ in 0..(m - i - 1) {
                    b = self.mul(b, b);
                }
                m = i;
                c = self.mul(b, b);
                t = self.mul(t, c);
                r = self.mul(r, b);
            }
            r
        };
        Some(root.min(p - root))
    }
}

/// Legendre symbol (a / p) for an odd prime p.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    let field = PrimeField::new(p)?;
    Ok(field.legendre(field.reduce(a)))
}

/// The canonical (numerically smaller) square root of `a` modulo `p`.
pub fn sqrt_mod(a: i64, p: u64) -> Result<u64> {
    let field = PrimeField::new(p)?;
    field.sqrt(field.reduce(a)).ok_or(Error::NonResidue(a, p))
}
