//! Truncated Galois rings GR(p^m, d) = (Z/p^m)[t]/(m(t)), the residue rings of
//! the unramified extension of Q_p of degree d. Works for every prime, 2 included.

use crate::arith::field::MAX_DEGREE;

pub type GrElem = [i128; MAX_DEGREE];

#[derive(Debug, Clone)]
pub struct GaloisRing {
    p: u64,
    d: usize,
    m: u32,
    pm: i128,
    /// Lower coefficients of the monic modulus, entries in [0, p).
    modulus: GrElem,
}

/// Largest m with p^m < 2^62.
pub fn max_precision(p: u64) -> u32 {
    let mut m = 0;
    let mut acc: u128 = 1;
    while acc * p as u128 <= 1 << 62 {
        acc *= p as u128;
        m += 1;
    }
    m
}

/// First monic irreducible polynomial of degree d over F_p in base-p counting order
/// of its lower coefficients.
pub fn irreducible_modulus(p: u64, d: usize) -> Vec<u64> {
    assert!((1..=MAX_DEGREE).contains(&d));
    if d == 1 {
        return vec![0];
    }
    let eval = |f: &[u64], x: u64| f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p);
    let divisible_by = |f: &[u64], q0: u64, q1: u64| {
        let mut r = f.to_vec();
        for top in (2..r.len()).rev() {
            let c = r[top];
            r[top] = 0;
            r[top - 1] = (r[top - 1] + p * p - c * q1 % p) % p;
            r[top - 2] = (r[top - 2] + p * p - c * q0 % p) % p;
        }
        r[0] == 0 && r[1] == 0
    };
    for n in 0..p.pow(d as u32) {
        let mut full: Vec<u64> = (0..d).map(|i| n / p.pow(i as u32) % p).collect();
        full.push(1);
        if (0..p).any(|x| eval(&full, x) == 0) {
            continue;
        }
        if d == 4 && (0..p).any(|q0| (0..p).any(|q1| divisible_by(&full, q0, q1))) {
            continue;
        }
        full.pop();
        return full;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl GaloisRing {
    pub fn new(p: u64, d: usize, m: u32) -> Self {
        assert!(m >= 1 && m <= max_precision(p));
        let mut modulus = [0i128; MAX_DEGREE];
        for (slot, c) in modulus.iter_mut().zip(irreducible_modulus(p, d)) {
            *slot = c as i128;
        }
        GaloisRing { p, d, m, pm: (p as i128).pow(m), modulus }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn precision(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> Vec<u64> {
        self.modulus[..self.d].iter().map(|&c| c as u64).collect()
    }

    pub fn from_int(&self, n: i128) -> GrElem {
        let mut e = [0; MAX_DEGREE];
        e[0] = n.rem_euclid(self.pm);
        e
    }

    pub fn add(&self, a: &GrElem, b: &GrElem) -> GrElem {
        std::array::from_fn(|i| (a[i] + b[i]) % self.pm)
    }

    pub fn mul(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let d = self.d;
        let mut prod = [0i128; 2 * MAX_DEGREE - 1];
        for i in 0..d {
            if a[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + a[i] * b[j] % self.pm) % self.pm;
            }
        }
        for top in (d..2 * d - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..d {
                let slot = &mut prod[top - d + i];
                *slot = (*slot - c * self.modulus[i] % self.pm).rem_euclid(self.pm);
            }
        }
        let mut out = [0; MAX_DEGREE];
        out[..d].copy_from_slice(&prod[..d]);
        out
    }

    pub fn scale(&self, a: &GrElem, c: i128) -> GrElem {
        let c = c.rem_euclid(self.pm);
        std::array::from_fn(|i| a[i] * c % self.pm)
    }

    pub fn pow(&self, a: &GrElem, e: u32) -> GrElem {
        (0..e).fold(self.from_int(1), |acc, _| self.mul(&acc, a))
    }

    /// p-adic valuation, capped at the precision m.
    pub fn valuation(&self, a: &GrElem) -> u32 {
        a[..self.d]
            .iter()
            .map(|&c| {
                if c == 0 {
                    return self.m;
                }
                let mut v = 0;
                let mut x = c;
                while x % self.p as i128 == 0 {
                    x /= self.p as i128;
                    v += 1;
                }
                v
            })
            .min()
            .unwrap_or(self.m)
    }

    /// Representatives of the residue field: coefficient vectors with entries in [0, p).
    pub fn residues(&self) -> Vec<GrElem> {
        let q = self.p.pow(self.d as u32);
        (0..q)
            .map(|n| {
                let mut e = [0; MAX_DEGREE];
                let mut x = n;
                for slot in e.iter_mut().take(self.d) {
                    *slot = (x % self.p) as i128;
                    x /= self.p;
                }
                e
            })
            .collect()
    }

    /// a + p^k · s
    pub fn lift(&self, a: &GrElem, k: u32, s: &GrElem) -> GrElem {
        let pk = (self.p as i128).pow(k);
        std::array::from_fn(|i| (a[i] + pk * s[i]) % self.pm)
    }

    pub fn is_valid(&self, a: &[i128]) -> bool {
        a.len() == self.d && a.iter().all(|&c| (0..self.pm).contains(&c))
    }
}
