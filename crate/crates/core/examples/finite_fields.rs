//! Arithmetic in F_p and F_{p^k}, square roots, and Hilbert symbols.

use num::BigInt;
use zcs::arith::{hilbert_symbol_int, legendre, sqrt_mod, ExtField, Field, PrimeField};
use zcs::Place;

fn main() -> zcs::Result<()> {
    let f = PrimeField::new(101)?;
    let a = f.reduce(-7);
    println!("-7 mod 101 = {a}, inverse = {:?}", f.inv(a));
    println!("legendre(2, 101) = {}", legendre(2, 101)?);
    let r = sqrt_mod(5, 101)?;
    println!("sqrt(5) mod 101 = {r} (check: {})", f.mul(r, r));

    // F_{7^2} has a cyclic multiplicative group of order 48.
    let f49 = ExtField::with_degree(7, 2)?;
    let t = f49.generator();
    println!("F_49 = F_7[t]/{:?}: t has order {:?}", f49.modulus(), f49.multiplicative_order(&t));
    let primitive = f49.elements().find(|e| f49.multiplicative_order(e) == Some(48));
    println!("first primitive element: {primitive:?}");
    let x = f49.element(&[3, 5])?;
    let frob = f49.frobenius(&x);
    println!("x = {x:?}, x^7 = {frob:?}, x * x^7 = {:?} (lies in F_7)", f49.mul(&x, &frob));

    for place in [Place::Real, Place::Prime(2), Place::Prime(3)] {
        let s = hilbert_symbol_int(&BigInt::from(-1), &BigInt::from(-3), place)?;
        println!("(-1, -3)_{place} = {s}");
    }
    Ok(())
}
