use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::irreducible::frobenius;
use super::ops::{mul_raw, rem_raw};
use super::{FiniteField, Poly};
use crate::{Error, Result};

/// `f = unit * prod P_i^{e_i}` with distinct monic primes `P_i`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub unit: u32,
    pub primes: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiply the factorisation back out.
    pub fn reconstruct(&self, field: &FiniteField) -> Poly {
        let mut acc = Poly::constant(field, self.unit);
        for (p, e) in &self.primes {
            acc = &acc * &p.pow(*e as u64);
        }
        acc
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.primes.len()
    }

    /// Exponent of `p` in the factorisation (0 if absent).
    pub fn exponent_of(&self, p: &Poly) -> u32 {
        self.primes
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }
}

/// Factor a non-zero polynomial into monic primes.
///
/// Squarefree decomposition, then Berlekamp's deterministic splitting on each
/// squarefree part.
pub fn factorize(f: &Poly) -> Result<Factorization> {
    let unit = f.leading().ok_or(Error::ZeroPolynomial)?;
    let m = f.monic();
    let mut primes = Vec::new();
    if m.deg() > 0 {
        for (part, mult) in squarefree(&m) {
            for p in berlekamp(&part) {
                primes.push((p, mult));
            }
        }
    }
    primes.sort();
    Ok(Factorization { unit, primes })
}

/// Squarefree decomposition of a monic polynomial of positive degree:
/// pairwise coprime squarefree parts with their multiplicities.
pub fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let field = f.field();
    let mut out = Vec::new();
    let one = Poly::one(field);
    let mut c = f.gcd(&f.derivative()).unwrap();
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1;
    while w != one {
        let y = w.gcd(&c).unwrap();
        let z = w.div_exact(&y).unwrap();
        if z != one {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w).unwrap();
    }
    if c != one {
        let root = pth_root(&c);
        let p = field.p();
        for (g, m) in squarefree(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// `g` with `g^p = f`, for `f` whose derivative vanishes.
fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.p() as usize;
    let k = (field.q() / field.p()) as u64;
    let coeffs: Vec<u32> = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|&a| field.pow(a, k))
        .collect();
    Poly::new(field, coeffs)
}

/// Split a monic squarefree polynomial into its monic prime factors.
fn berlekamp(f: &Poly) -> Vec<Poly> {
    let n = f.deg();
    if n == 1 {
        return vec![f.clone()];
    }
    let field = f.field();
    let m = f.coeffs();
    // rows[i] = T^{iq} mod f
    let xq = frobenius(field, &[0, 1], m);
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut cur = vec![1u32];
    for _ in 0..n {
        let mut row = cur.clone();
        row.resize(n, 0);
        rows.push(row);
        cur = mul_raw(field, &cur, &xq);
        rem_raw(field, &mut cur, m);
    }
    // Solve v (Q - I) = 0, i.e. (Q - I)^T v = 0.
    let mut a: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let x = rows[i][j];
                    if i == j {
                        field.sub(x, 1)
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    let basis = null_space(field, &mut a, n);
    let r = basis.len();
    if r == 1 {
        return vec![f.clone()];
    }
    let mut factors = vec![f.clone()];
    for v in basis.iter() {
        let g = Poly::new(field, v.clone());
        if g.degree().finite().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::new();
        for h in factors {
            let mut pending = vec![h];
            let mut done = Vec::new();
            for s in field.elements() {
                if pending.is_empty() {
                    break;
                }
                let shifted = g.sub(&Poly::constant(field, s)).unwrap();
                let mut still = Vec::new();
                for h in pending {
                    if h.deg() == 1 {
                        done.push(h);
                        continue;
                    }
                    let d = h.gcd(&shifted).unwrap();
                    if d.is_one() || d == h {
                        still.push(h);
                    } else {
                        let e = h.div_exact(&d).unwrap();
                        still.push(d);
                        still.push(e);
                    }
                }
                pending = still;
            }
            done.extend(pending);
            next.extend(done);
        }
        factors = next;
        if factors.len() == r {
            break;
        }
    }
    debug_assert_eq!(factors.len(), r);
    factors
}

/// Basis of the null space of the `n x n` matrix `a` over the field.
fn null_space(field: &FiniteField, a: &mut [Vec<u32>], n: usize) -> Vec<Vec<u32>> {
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, pr);
        let inv = field.inv(a[row][col]).unwrap();
        for x in a[row].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..n {
            if r != row && a[r][col] != 0 {
                let c = a[r][col];
                for k in 0..n {
                    let t = field.mul(c, a[row][k]);
                    a[r][k] = field.sub(a[r][k], t);
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![0u32; n];
        v[free] = 1;
        for (i, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = field.neg(a[i][free]);
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::irreducible::{is_irreducible, monic_polys};

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn spec_examples() {
        let f = factorize(&p("q=3:[1,2,1]")).unwrap();
        assert_eq!(f.primes, vec![(p("q=3:[1,1]"), 2)]);
        let f = factorize(&p("q=2:[0,1,1]")).unwrap();
        assert_eq!(f.primes, vec![(p("q=2:[0,1]"), 1), (p("q=2:[1,1]"), 1)]);
        let prime = p("q=3:[1,0,1]");
        assert_eq!(factorize(&prime).unwrap().primes, vec![(prime, 1)]);
        assert_eq!(factorize(&p("q=3:[]")), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn non_monic_and_constant() {
        let f = factorize(&p("q=5:[2,0,2]")).unwrap();
        assert_eq!(f.unit, 2);
        assert_eq!(f.primes, vec![(p("q=5:[2,1]"), 1), (p("q=5:[3,1]"), 1)]);
        let c = factorize(&p("q=5:[3]")).unwrap();
        assert_eq!(c.unit, 3);
        assert!(c.primes.is_empty());
    }

    #[test]
    fn pth_powers() {
        // (T+1)^6 over F_3 has vanishing derivative
        let base = p("q=3:[1,1]");
        let f = factorize(&base.pow(6)).unwrap();
        assert_eq!(f.primes, vec![(base, 6)]);
        let g = &p("q=2:[1,1,1]").pow(4) * &p("q=2:[0,1]").pow(3);
        let f = factorize(&g).unwrap();
        assert_eq!(f.primes, vec![(p("q=2:[0,1]"), 3), (p("q=2:[1,1,1]"), 4)]);
    }

    #[test]
    fn exhaustive_reconstruction() {
        for q in [2u64, 3] {
            let field = FiniteField::new(q).unwrap();
            for n in 1..=6 {
                for f in monic_polys(&field, n) {
                    let fac = factorize(&f).unwrap();
                    assert_eq!(fac.reconstruct(&field), f);
                    for (pr, e) in &fac.primes {
                        assert!(*e >= 1);
                        assert!(pr.is_monic());
                        assert!(is_irreducible(pr).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn extension_field_reconstruction() {
        let field = FiniteField::new(9).unwrap();
        for n in 1..=3 {
            for f in monic_polys(&field, n) {
                let fac = factorize(&f).unwrap();
                assert_eq!(fac.reconstruct(&field), f);
            }
        }
    }
}
