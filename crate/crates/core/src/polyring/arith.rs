//! Multiplicative arithmetic functions on monic polynomials.

use serde::{Deserialize, Serialize};

use super::factor::{factorize, Factorization};
use super::Poly;
use crate::math::binomial;
use crate::{Error, Result};

/// Selector for [`arith_fn`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArithFn {
    Mobius,
    Phi,
    /// von Mangoldt, in units of `log q`.
    Lambda,
    Omega,
    Rad,
    DivisorK(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithValue {
    Int(i128),
    Poly(Poly),
}

fn monic_factorization(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    factorize(f)
}

pub fn arith_fn(f: &Poly, which: ArithFn) -> Result<ArithValue> {
    let fac = monic_factorization(f)?;
    let q = f.q();
    Ok(match which {
        ArithFn::Mobius => ArithValue::Int(mobius_of(&fac) as i128),
        ArithFn::Phi => ArithValue::Int(phi_of(q, &fac) as i128),
        ArithFn::Lambda => ArithValue::Int(lambda_of(&fac) as i128),
        ArithFn::Omega => ArithValue::Int(fac.omega() as i128),
        ArithFn::Rad => ArithValue::Poly(rad_of(f, &fac)),
        ArithFn::DivisorK(k) => ArithValue::Int(divisor_k_of(k, &fac) as i128),
    })
}

pub fn mobius(f: &Poly) -> Result<i32> {
    Ok(mobius_of(&monic_factorization(f)?))
}

/// Number of units of `F_q[T]/f`.
pub fn phi(f: &Poly) -> Result<u128> {
    Ok(phi_of(f.q(), &monic_factorization(f)?))
}

/// `Lambda(f) / log q`: `deg P` if `f = P^j`, else 0.
pub fn von_mangoldt(f: &Poly) -> Result<u32> {
    Ok(lambda_of(&monic_factorization(f)?))
}

pub fn omega(f: &Poly) -> Result<usize> {
    Ok(monic_factorization(f)?.omega())
}

pub fn rad(f: &Poly) -> Result<Poly> {
    let fac = monic_factorization(f)?;
    Ok(rad_of(f, &fac))
}

/// `d_k(f)`, the number of ordered `k`-tuples of monic polynomials with product `f`.
pub fn divisor_k(f: &Poly, k: u32) -> Result<u128> {
    Ok(divisor_k_of(k, &monic_factorization(f)?))
}

pub(crate) fn mobius_of(fac: &Factorization) -> i32 {
    if fac.primes.iter().any(|&(_, e)| e > 1) {
        0
    } else if fac.primes.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn phi_of(q: u32, fac: &Factorization) -> u128 {
    fac.primes
        .iter()
        .map(|(p, e)| {
            let norm = (q as u128).pow(p.deg() as u32);
            norm.pow(*e) - norm.pow(*e - 1)
        })
        .product()
}

pub(crate) fn lambda_of(fac: &Factorization) -> u32 {
    match fac.primes.as_slice() {
        [(p, _)] => p.deg() as u32,
        _ => 0,
    }
}

fn rad_of(f: &Poly, fac: &Factorization) -> Poly {
    fac.primes
        .iter()
        .fold(Poly::one(f.field()), |acc, (p, _)| &acc * p)
}

/// `d_k(P^m) = C(m + k - 1, k - 1)`.
pub fn divisor_k_prime_power(k: u32, m: u32) -> u128 {
    if k == 0 {
        return u128::from(m == 0);
    }
    binomial((m + k - 1) as u64, (k - 1) as u64)
}

pub(crate) fn divisor_k_of(k: u32, fac: &Factorization) -> u128 {
    fac.primes
        .iter()
        .map(|&(_, e)| divisor_k_prime_power(k, e))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::irreducible::{monic_polys, primes_of_degree};
    use crate::polyring::FiniteField;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn spec_examples() {
        // P^2 A with P = T
        assert_eq!(mobius(&p("q=3:[0,0,1,1]")).unwrap(), 0);
        assert_eq!(phi(&p("q=3:[0,0,1]")).unwrap(), 6);
        assert_eq!(divisor_k(&p("q=3:[0,0,1]"), 2).unwrap(), 3);
        assert_eq!(mobius(&p("q=3:[1]")).unwrap(), 1);
        assert_eq!(phi(&p("q=3:[1]")).unwrap(), 1);
        assert_eq!(mobius(&p("q=3:[0,2]")), Err(Error::NotMonic));
        assert_eq!(phi(&p("q=3:[]")), Err(Error::ZeroPolynomial));
        assert_eq!(rad(&p("q=3:[0,0,1,1]")).unwrap(), p("q=3:[0,1,1]"));
        assert_eq!(
            arith_fn(&p("q=2:[0,0,0,1]"), ArithFn::Lambda).unwrap(),
            ArithValue::Int(1)
        );
    }

    #[test]
    fn phi_counts_units_directly() {
        for q in [2u64, 3] {
            let field = FiniteField::new(q).unwrap();
            for n in 1..=4 {
                for r in monic_polys(&field, n) {
                    let direct = (0..(q.pow(n as u32)))
                        .filter(|&i| Poly::from_index(&field, i).gcd(&r).unwrap().is_one())
                        .count() as u128;
                    assert_eq!(phi(&r).unwrap(), direct, "{r:?}");
                }
            }
        }
    }

    #[test]
    fn von_mangoldt_sum_is_q_to_the_n() {
        for q in [2u64, 3] {
            let field = FiniteField::new(q).unwrap();
            for n in 1..=8usize {
                // sum over monic f of degree n of Lambda(f)/log q = q^n, via prime powers
                let mut total = 0u64;
                for d in (1..=n).filter(|d| n % d == 0) {
                    total += d as u64 * primes_of_degree(&field, d).unwrap().len() as u64;
                }
                assert_eq!(total, q.pow(n as u32));
                if n <= 6 {
                    let direct: u64 = monic_polys(&field, n)
                        .map(|f| von_mangoldt(&f).unwrap() as u64)
                        .sum();
                    assert_eq!(direct, q.pow(n as u32));
                }
            }
        }
    }

    #[test]
    fn phi_multiplicative_and_prime_powers() {
        let field = FiniteField::new(3).unwrap();
        for a in (1..=2).flat_map(|n| monic_polys(&field, n).collect::<alloc::vec::Vec<_>>()) {
            for b in (1..=2).flat_map(|n| monic_polys(&field, n).collect::<alloc::vec::Vec<_>>()) {
                if a.is_coprime(&b).unwrap() {
                    assert_eq!(phi(&(&a * &b)).unwrap(), phi(&a).unwrap() * phi(&b).unwrap());
                }
            }
        }
        for pr in primes_of_degree(&field, 2).unwrap() {
            for k in 1..=2u32 {
                let norm = 9u128;
                assert_eq!(phi(&pr.pow(k as u64)).unwrap(), norm.pow(k) - norm.pow(k - 1));
            }
        }
    }
}
