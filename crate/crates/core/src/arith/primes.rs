//! Primality, trial-division factorization and p-adic valuations.

use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial division stops here; larger cofactors must be prime.
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin on big integers with the first twenty prime bases.
pub fn is_probable_prime_big(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    if n.is_negative() || n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
///
/// Trial division runs to [`TRIAL_DIVISION_LIMIT`]; a leftover cofactor is
/// accepted only if it passes a primality test.
pub fn prime_divisors(n: &BigInt) -> Result<Vec<u64>> {
    let mut n = n.abs();
    if n.is_zero() {
        return Err(Error::InvalidInput("cannot factor zero".into()));
    }
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT {
        let big_d = BigInt::from(d);
        if &big_d * &big_d > n {
            break;
        }
        if (&n % &big_d).is_zero() {
            out.push(d);
            while (&n % &big_d).is_zero() {
                n /= &big_d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        if !is_probable_prime_big(&n) {
            return Err(Error::FactorizationIncomplete(n.to_string()));
        }
        match n.to_u64() {
            Some(p) => out.push(p),
            None => return Err(Error::FactorizationIncomplete(n.to_string())),
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// p-adic valuation of a nonzero big integer; `u32::MAX` for zero.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

pub fn valuation_i64(n: i64, p: u64) -> u32 {
    valuation(&BigInt::from(n), p)
}

/// Odd primes in `[lo, hi]`, ascending.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&n| is_prime(n)).collect()
}

/// Removes square factors: returns `(squarefree part, square root of the removed square)`.
pub fn squarefree_decompose(n: i64) -> (i64, i64) {
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut root = 1u64;
    let mut d = 2u64;
    while d * d <= m {
        while m.is_multiple_of(d * d) {
            m /= d * d;
            root *= d;
        }
        d += 1;
    }
    (sign * m as i64, root as i64)
}
