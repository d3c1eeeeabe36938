use alloc::vec::Vec;

use super::ops::{mul_raw, rem_raw, sub_raw};
use super::{FiniteField, Poly};
use crate::math::mobius_u64;
use crate::{Error, Result};

/// All monic polynomials of degree `n`, in index order.
pub fn monic_polys(field: &FiniteField, n: usize) -> impl Iterator<Item = Poly> + '_ {
    let count = (field.q() as u64).pow(n as u32);
    (0..count).map(move |i| Poly::monic_from_index(field, n, i))
}

/// Number of monic polynomials of degree `n`, `q^n`.
pub fn monic_count(q: u32, n: usize) -> u64 {
    (q as u64).pow(n as u32)
}

/// Deterministic distinct-degree test: `f` of degree `n` is irreducible iff
/// `gcd(T^{q^i} - T, f) = 1` for every `1 <= i <= n/2`.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let n = match f.degree().finite() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let field = f.field();
    let m = f.monic();
    if m.coeff(0) == 0 {
        return Ok(false);
    }
    let t = [0u32, 1];
    let mut h = t.to_vec();
    for _ in 1..=n / 2 {
        h = frobenius(field, &h, m.coeffs());
        let diff = Poly::new(field, sub_raw(field, &h, &t));
        if !diff.gcd(&m)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `h^q mod m` on raw coefficient vectors.
pub(crate) fn frobenius(field: &FiniteField, h: &[u32], m: &[u32]) -> Vec<u32> {
    let mut e = field.q() as u64;
    let mut base = h.to_vec();
    let mut acc = alloc::vec![1u32];
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_raw(field, &acc, &base);
            rem_raw(field, &mut acc, m);
        }
        e >>= 1;
        if e > 0 {
            base = mul_raw(field, &base, &base);
            rem_raw(field, &mut base, m);
        }
    }
    acc
}

/// Number of monic primes of degree `n`: `(1/n) sum_{d | n} mu(d) q^{n/d}`.
pub fn prime_count(q: u32, n: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut total: i128 = 0;
    for d in 1..=n {
        if n % d == 0 {
            total += mobius_u64(d as u64) as i128 * (q as i128).pow((n / d) as u32);
        }
    }
    Ok((total / n as i128) as u128)
}

/// Monic primes of degree `n` in index order (lexicographic from the top coefficient).
pub fn primes_of_degree(field: &FiniteField, n: usize) -> Result<Vec<Poly>> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(monic_polys(field, n)
        .filter(|f| is_irreducible(f).unwrap_or(false))
        .collect())
}

/// Monic primes of every degree `1..=n`, grouped by degree (`out[d-1]` has degree `d`).
pub fn primes_up_to_degree(field: &FiniteField, n: usize) -> Vec<Vec<Poly>> {
    (1..=n)
        .map(|d| primes_of_degree(field, d).expect("d >= 1"))
        .collect()
}

/// Sieve of all monic primes of degree exactly `n` by striking out products
/// of smaller primes. Returns the monic indices `i` (so the prime is
/// `Poly::monic_from_index(field, n, i)`). Cheaper than repeated
/// irreducibility tests when every prime of a degree is wanted.
pub fn prime_sieve(field: &FiniteField, n: usize, smaller: &[Vec<Poly>]) -> Vec<u64> {
    let count = monic_count(field.q(), n) as usize;
    let mut composite = alloc::vec![false; count];
    let q = field.q() as u64;
    for d in 1..=n / 2 {
        for p in &smaller[d - 1] {
            for a in monic_polys(field, n - d) {
                if a.deg() == n - d {
                    let prod = p * &a;
                    let idx = prod.to_index() - q.pow(n as u32);
                    composite[idx as usize] = true;
                }
            }
        }
    }
    (0..count as u64).filter(|&i| !composite[i as usize]).collect()
}
