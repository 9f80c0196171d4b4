//! Exact modular arithmetic, small finite fields, quadratic symbols and
//! coset bookkeeping shared by the rest of the crate.

pub mod coset;
pub mod field;
pub mod hilbert;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod primes;

pub use coset::{intersect_cosets, CosetLattice, LatticeShape};
pub use field::{ext_add, ext_mul, ext_pow, frobenius, ExtField, Field, FieldElement, Rationals};
pub use hilbert::{hilbert_symbol, hilbert_symbol_int};
pub use modular::{legendre, sqrt_mod, PrimeField};
pub use poly::{Poly, PolyRing};
pub use primes::{is_prime, prime_divisors};
