use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::polyring::{factorize, omega, primes_of_degree, FiniteField, Poly};
use crate::{Error, Result};

/// `R_n`, the product of the first `n` monic primes in degree-then-index order,
/// written as `(prod_{deg P <= m} P) * Q_1 ... Q_r` with `deg Q_i = m + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimorialRecord {
    pub n: usize,
    pub r_n: Poly,
    pub m_n: usize,
    pub r_count: usize,
    /// `log_q log_q |R_n| - m_n`, which stays bounded.
    pub loglog_gap: f64,
}

pub fn primorial(field: &FiniteField, n: usize) -> Result<PrimorialRecord> {
    if n == 0 {
        return Err(Error::InvalidArgument("primorial index starts at 1".into()));
    }
    let mut r = Poly::one(field);
    let mut left = n;
    let mut m = 0;
    loop {
        let primes = primes_of_degree(field, m + 1)?;
        if left < primes.len() {
            for p in &primes[..left] {
                r = &r * p;
            }
            break;
        }
        for p in &primes {
            r = &r * p;
        }
        left -= primes.len();
        m += 1;
    }
    let log_q = libm::log(field.q() as f64);
    // log_q log_q |R_n| = log_q deg R_n, undefined for deg R_n = 1
    let deg = r.deg() as f64;
    let loglog = if deg > 1.0 {
        libm::log(libm::log(deg) / log_q) / log_q
    } else {
        0.0
    };
    Ok(PrimorialRecord {
        n,
        r_n: r,
        m_n: m,
        r_count: left,
        loglog_gap: loglog - m as f64,
    })
}

/// `A_i = G_i V_{i,j} V_{i,k}` and `B_j = G_j V_{i,j} V_{k,j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleDecomposition {
    pub g: [Poly; 3],
    /// `v[i][j]` is `V_{i+1,j+1}`; the diagonal holds 1.
    pub v: [[Poly; 3]; 3],
}

fn check_monic(ps: &[&Poly]) -> Result<()> {
    for p in ps {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !p.is_monic() {
            return Err(Error::NotMonic);
        }
    }
    Ok(())
}

/// Split `A_1 A_2 A_3 = B_1 B_2 B_3` into `G_i = (A_i, B_i)` and the
/// cross factors `V_{i,j} = (B^_j, B^_i B^_j / A^_k)`.
pub fn decompose_triple_product(a: [&Poly; 3], b: [&Poly; 3]) -> Result<TripleDecomposition> {
    check_monic(&[a[0], a[1], a[2], b[0], b[1], b[2]])?;
    if &(a[0] * a[1]) * a[2] != &(b[0] * b[1]) * b[2] {
        return Err(Error::ProductMismatch);
    }
    let g: Vec<Poly> = (0..3).map(|i| a[i].gcd(b[i])).collect::<Result<_>>()?;
    let ah: Vec<Poly> = (0..3).map(|i| a[i].div_exact(&g[i])).collect::<Result<_>>()?;
    let bh: Vec<Poly> = (0..3).map(|i| b[i].div_exact(&g[i])).collect::<Result<_>>()?;
    let one = Poly::one(a[0].field());
    let mut v = [
        [one.clone(), one.clone(), one.clone()],
        [one.clone(), one.clone(), one.clone()],
        [one.clone(), one.clone(), one],
    ];
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let k = 3 - i - j;
                let w = (&bh[i] * &bh[j]).div_exact(&ah[k])?;
                v[i][j] = bh[j].gcd(&w)?;
            }
        }
    }
    Ok(TripleDecomposition {
        g: [g[0].clone(), g[1].clone(), g[2].clone()],
        v,
    })
}

/// Inverse of [`decompose_triple_product`]: returns `(A, B)`.
pub fn compose_triple(d: &TripleDecomposition) -> ([Poly; 3], [Poly; 3]) {
    let a = |i: usize| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        &(&d.g[i] * &d.v[i][j]) * &d.v[i][k]
    };
    let b = |j: usize| {
        let (i, k) = ((j + 1) % 3, (j + 2) % 3);
        &(&d.g[j] * &d.v[i][j]) * &d.v[k][j]
    };
    ([a(0), a(1), a(2)], [b(0), b(1), b(2)])
}

/// `(V_{i,j}, V_{k,l}) = 1` whenever `i != k` and `j != l`.
pub fn cross_coprime(d: &TripleDecomposition) -> Result<bool> {
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    if i != j && k != l && i != k && j != l && !d.v[i][j].is_coprime(&d.v[k][l])? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// The four side factors fixed while `V = V_{1,2} V_{2,1}` is split.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingSides {
    pub v13: Poly,
    pub v23: Poly,
    pub v31: Poly,
    pub v32: Poly,
}

impl SplittingSides {
    /// `(V13, V31 V32) = 1`, `(V23, V31 V32) = 1` and `(V, (V13 V31, V23 V32)) = 1`.
    pub fn admissible(&self, v: &Poly) -> Result<bool> {
        let v3x = &self.v31 * &self.v32;
        let cross = (&self.v13 * &self.v31).gcd(&(&self.v23 * &self.v32))?;
        Ok(self.v13.is_coprime(&v3x)? && self.v23.is_coprime(&v3x)? && v.is_coprime(&cross)?)
    }

    fn product(&self) -> Poly {
        &(&self.v13 * &self.v23) * &(&self.v31 * &self.v32)
    }
}

/// Number of `(V_{1,2}, V_{2,1})` with `V_{1,2} V_{2,1} = V`, coprime to each
/// other, `(V_{1,2}, V_{2,3} V_{3,1}) = 1` and `(V_{2,1}, V_{1,3} V_{3,2}) = 1`:
/// `2^{omega(V) - omega((V, V13 V23 V31 V32))}`.
pub fn count_coprime_splittings(v: &Poly, sides: &SplittingSides) -> Result<u64> {
    check_monic(&[v, &sides.v13, &sides.v23, &sides.v31, &sides.v32])?;
    if !sides.admissible(v)? {
        return Err(Error::InvalidArgument("side polynomials violate the coprimality hypotheses".into()));
    }
    let shared = omega(&v.gcd(&sides.product())?)?;
    Ok(1u64 << (omega(v)? - shared))
}

/// All monic divisors of a non-zero polynomial.
pub fn monic_divisors(f: &Poly) -> Result<Vec<Poly>> {
    let fac = factorize(f)?;
    let mut out = alloc::vec![Poly::one(f.field())];
    for (p, e) in &fac.primes {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut x = d.clone();
            next.push(x.clone());
            for _ in 0..*e {
                x = &x * p;
                next.push(x.clone());
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

/// The same count by enumerating the divisors of `V`.
pub fn count_coprime_splittings_brute(v: &Poly, sides: &SplittingSides) -> Result<u64> {
    let m1 = &sides.v23 * &sides.v31;
    let m2 = &sides.v13 * &sides.v32;
    let mut n = 0;
    for v12 in monic_divisors(v)? {
        let v21 = v.div_exact(&v12)?;
        if v12.is_coprime(&v21)? && v12.is_coprime(&m1)? && v21.is_coprime(&m2)? {
            n += 1;
        }
    }
    Ok(n)
}

fn norm_inv(p: &Poly) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(p.q()).pow(p.deg() as u32))
}

/// `gamma(A) = prod_{P | A} (1 + e_P(A) (1 - |P|^{-1}) / (1 + |P|^{-1}))`.
pub fn gamma_weight(a: &Poly) -> Result<BigRational> {
    let fac = factorize(a)?;
    let one = BigRational::one();
    Ok(fac.primes.iter().fold(one.clone(), |acc, (p, e)| {
        let y = norm_inv(p);
        let c = (&one - &y) / (&one + &y);
        acc * (&one + c * BigRational::from_integer(BigInt::from(*e)))
    }))
}

/// Both sides of `sum_{V13 V23 = B} prod_{P | B} c_P prod_{P | B, P !| (V13, V23)}
/// (1 - |P|^{-1})^{-1} = gamma(B)` with `c_P = (1 - |P|^{-1}) / (1 + |P|^{-1})`.
pub fn gamma_identity_check(b: &Poly) -> Result<(BigRational, BigRational)> {
    let fac = factorize(b)?;
    let one = BigRational::one();
    let mut lhs = BigRational::from_integer(BigInt::from(0));
    for v13 in monic_divisors(b)? {
        let v23 = b.div_exact(&v13)?;
        let common = v13.gcd(&v23)?;
        let mut term = one.clone();
        for (p, _) in &fac.primes {
            let y = norm_inv(p);
            term *= (&one - &y) / (&one + &y);
            if !p.divides(&common)? {
                term /= &one - &y;
            }
        }
        lhs += term;
    }
    Ok((lhs, gamma_weight(b)?))
}
