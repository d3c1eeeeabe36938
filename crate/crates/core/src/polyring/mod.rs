//! Arithmetic in `F_q[T]`.

mod arith;
mod factor;
mod field;
mod irreducible;
mod ops;
mod poly;

pub use arith::{
    arith_fn, divisor_k, divisor_k_prime_power, mobius, omega, phi, rad, von_mangoldt, ArithFn,
    ArithValue,
};
pub use factor::{factorize, squarefree, Factorization};
pub use field::{FiniteField, MAX_FIELD_ORDER};
pub use irreducible::{
    is_irreducible, monic_count, monic_polys, prime_count, prime_sieve, primes_of_degree,
    primes_up_to_degree,
};
pub use ops::{poly_add, poly_divrem, poly_gcd, poly_mul};
pub use poly::{Degree, Poly};

pub(crate) use arith::phi_of;
