//! Hilbert symbols (a, b)_v over Q.

use num::bigint::BigInt;
use num::{BigRational, Integer, Signed, ToPrimitive, Zero};

use super::modular::PrimeField;
use super::primes::is_prime;
use crate::error::{Error, Place, Result};

/// Splits off the p-part: returns (v_p(n), n / p^v).
fn split_p(n: &BigInt, p: u64) -> (u32, BigInt) {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    (v, n)
}

fn mod_u64(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

/// An integer in the same square class as the nonzero rational `q`.
fn square_class_integer(q: &BigRational) -> BigInt {
    q.numer() * q.denom()
}

/// Hilbert symbol of nonzero integers.
pub fn hilbert_symbol_int(a: &BigInt, b: &BigInt, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidInput("Hilbert symbol of zero".into()));
    }
    match place {
        Place::Real => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(2) => {
            let (alpha, u) = split_p(a, 2);
            let (beta, v) = split_p(b, 2);
            let (u8_, v8) = (mod_u64(&u, 8), mod_u64(&v, 8));
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omega = |x: u64| ((x * x - 1) / 8) % 2;
            let e = eps(u8_) * eps(v8) + alpha as u64 * omega(v8) + beta as u64 * omega(u8_);
            Ok(if e.is_multiple_of(2) { 1 } else { -1 })
        }
        Place::Prime(p) => {
            if !is_prime(p) {
                return Err(Error::CompositeModulus(p));
            }
            let field = PrimeField::new(p)?;
            let (alpha, u) = split_p(a, p);
            let (beta, v) = split_p(b, p);
            let mut sign = if (alpha as u64 * beta as u64 * ((p - 1) / 2)).is_multiple_of(2) { 1 } else { -1 };
            if beta % 2 == 1 {
                sign *= field.legendre(mod_u64(&u, p));
            }
            if alpha % 2 == 1 {
                sign *= field.legendre(mod_u64(&v, p));
            }
            Ok(sign)
        }
    }
}

/// Hilbert symbol (a, b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over Q_v.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i8> {
    hilbert_symbol_int(&square_class_integer(a), &square_class_integer(b), place)
}

/// Places where (a, b)_v can be -1: the real place and primes dividing 2ab.
pub fn relevant_places(a: &BigInt, b: &BigInt) -> Result<Vec<Place>> {
    let prod = a * b * BigInt::from(2);
    let mut places = vec![Place::Real];
    places.extend(super::primes::prime_divisors(&prod)?.into_iter().map(Place::Prime));
    Ok(places)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(a: i64, b: i64, place: Place) -> i8 {
        hilbert_symbol_int(&BigInt::from(a), &BigInt::from(b), place).unwrap()
    }

    /// Primitive solutions of z^2 = a x^2 + b y^2 modulo 2^k or p^k, by brute force.
    fn has_primitive_solution_mod(a: i64, b: i64, m: i64, p: i64) -> bool {
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if x % p == 0 && y % p == 0 && z % p == 0 {
                        continue;
                    }
                    if (a * x * x + b * y * y - z * z).rem_euclid(m) == 0 {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn examples() {
        for v in [Place::Real, Place::Prime(2), Place::Prime(3), Place::Prime(5), Place::Prime(7)] {
            assert_eq!(h(1, 1, v), 1);
        }
        assert_eq!(h(-1, -1, Place::Real), -1);
        assert!(!has_primitive_solution_mod(-1, -1, 16, 2));
        assert_eq!(h(-1, -1, Place::Prime(2)), -1);
        assert_eq!(h(-1, -1, Place::Prime(3)), 1);
        // x^2 + y^2 = 3 z^2 fails at 3
        assert_eq!(h(3, -1, Place::Prime(3)), -1);
    }

    #[test]
    fn rational_arguments_use_square_classes() {
        let a = BigRational::new(BigInt::from(1), BigInt::from(3));
        let b = BigRational::from_integer(BigInt::from(-1));
        assert_eq!(hilbert_symbol(&a, &b, Place::Prime(3)).unwrap(), -1);
    }

    #[test]
    fn odd_prime_symbol_matches_brute_force() {
        // for squarefree a, b and odd p, solubility is decided modulo p^2
        for p in [3i64, 5, 7] {
            for a in [-6i64, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 14, 15] {
                for b in [-7i64, -3, -1, 1, 2, 3, 5, 7, 21] {
                    let brute = has_primitive_solution_mod(a, b, p * p, p);
                    let expected = if brute { 1 } else { -1 };
                    assert_eq!(h(a, b, Place::Prime(p as u64)), expected, "({a},{b})_{p}");
                }
            }
        }
    }

    #[test]
    fn two_adic_symbol_matches_brute_force() {
        // for squarefree a, b, a primitive solution mod 16 decides solubility over Q_2
        for a in [-6i64, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7] {
            for b in [-7i64, -3, -2, -1, 1, 2, 3, 5, 6] {
                let brute = has_primitive_solution_mod(a, b, 16, 2);
                let expected = if brute { 1 } else { -1 };
                assert_eq!(h(a, b, Place::Prime(2)), expected, "({a},{b})_2");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn product_formula(a in -50i64..=50, b in -50i64..=50) {
            prop_assume!(a != 0 && b != 0);
            let (ba, bb) = (BigInt::from(a), BigInt::from(b));
            let product: i8 = relevant_places(&ba, &bb).unwrap().into_iter()
                .map(|v| hilbert_symbol_int(&ba, &bb, v).unwrap())
                .product();
            prop_assert_eq!(product, 1);
        }

        #[test]
        fn symmetric_and_bimultiplicative(a in -40i64..=40, b in -40i64..=40, c in -40i64..=40,
                                          v in prop_oneof![Just(0u64), Just(2), Just(3), Just(5), Just(7), Just(11)]) {
            prop_assume!(a != 0 && b != 0 && c != 0);
            let place = if v == 0 { Place::Real } else { Place::Prime(v) };
            prop_assert_eq!(h(a, b, place), h(b, a, place));
            prop_assert_eq!(h(a * c, b, place), h(a, b, place) * h(c, b, place));
        }
    }
}
