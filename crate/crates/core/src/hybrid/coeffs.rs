use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::chargroup::DirichletCharacter;
use crate::math::binomial;
use crate::polyring::{factorize, Poly};
use crate::{Error, Result};

/// Which multiplicative coefficient family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffKind {
    /// Dirichlet coefficients of `P_X^*(s)^k`.
    AlphaK(u32),
    /// Dirichlet coefficients of `P_X^*(s)^{-1}`.
    AlphaMinus1,
    /// The truncated coefficients approximating `P_X(s)^{-2}`.
    Beta,
}

/// Multiplicative coefficients supported on `X`-smooth monic polynomials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSystem {
    pub kind: CoeffKind,
    pub x: u32,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl CoefficientSystem {
    pub fn new(kind: CoeffKind, x: u32) -> Self {
        Self { kind, x }
    }

    /// Value at `P^r` for a prime of the given degree.
    pub fn local(&self, deg_p: usize, r: u32) -> BigRational {
        if r == 0 {
            return BigRational::one();
        }
        let x = self.x as usize;
        if deg_p > x {
            return BigRational::zero();
        }
        let small = 2 * deg_p <= x;
        match self.kind {
            CoeffKind::AlphaK(k) => {
                let dk = |m: u32| int(binomial((m + k - 1) as u64, k as u64 - 1));
                if k == 0 {
                    return BigRational::zero();
                }
                if small {
                    return dk(r);
                }
                // coefficient of x^r in (1 - x)^{-k} (1 + x^2/2)^{-k}
                let mut acc = BigRational::zero();
                let mut j = 0;
                while 2 * j <= r {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    let half = BigRational::new(BigInt::from(sign), BigInt::from(2).pow(j));
                    acc += half * dk(j) * dk(r - 2 * j);
                    j += 1;
                }
                acc
            }
            CoeffKind::AlphaMinus1 => match (r, small) {
                (1, _) => rat(-1, 1),
                (2, false) => rat(1, 2),
                (3, false) => rat(-1, 2),
                _ => BigRational::zero(),
            },
            CoeffKind::Beta => match (r, small) {
                (1, _) => rat(-2, 1),
                (2, true) => rat(1, 1),
                (2, false) => rat(2, 1),
                _ => BigRational::zero(),
            },
        }
    }

    /// Coefficient of a monic polynomial; zero off the `X`-smooth polynomials.
    pub fn coeff(&self, a: &Poly) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !a.is_monic() {
            return Err(Error::NotMonic);
        }
        let fac = factorize(a)?;
        let mut acc = BigRational::one();
        for (p, e) in &fac.primes {
            acc *= self.local(p.deg(), *e);
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// The local Euler factor `sum_r local(P, r) y^r` evaluated at `y`.
    pub fn local_factor(&self, deg_p: usize, y: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let x = self.x as usize;
        if deg_p > x {
            return one;
        }
        let small = 2 * deg_p <= x;
        match self.kind {
            CoeffKind::AlphaK(k) => {
                let mut f = (one - y).inv();
                if !small {
                    f /= one + y * y * 0.5;
                }
                f.powu(k)
            }
            _ => {
                let top = if self.kind == CoeffKind::Beta { 2 } else { 3 };
                (1..=top).fold(one, |acc, r| {
                    acc + y.powu(r) * self.local(deg_p, r).to_f64().unwrap_or(0.0)
                })
            }
        }
    }
}

/// A truncated Dirichlet series `sum coeff(A) chi(A) |A|^{-s}` over `X`-smooth
/// monic `A` with `deg A <= max_deg`.
#[derive(Debug, Clone)]
pub struct SmoothSeries {
    pub system: CoefficientSystem,
    pub max_deg: usize,
    /// `(A, deg A, coeff(A))` with non-zero coefficients.
    pub terms: Vec<(Poly, usize, BigRational)>,
}

impl SmoothSeries {
    /// Enumerate the terms from the monic primes of each degree `1..=X`.
    pub fn new(system: CoefficientSystem, primes_by_degree: &[Vec<Poly>], max_deg: usize) -> Self {
        let field = primes_by_degree
            .iter()
            .flatten()
            .next()
            .map(|p| p.field().clone());
        let mut terms = Vec::new();
        if let Some(field) = field {
            let primes: Vec<&Poly> = primes_by_degree
                .iter()
                .take((system.x as usize).min(max_deg))
                .flatten()
                .collect();
            extend(&system, &primes, 0, Poly::one(&field), 0, BigRational::one(), max_deg, &mut terms);
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Self {
            system,
            max_deg,
            terms,
        }
    }

    pub fn eval(&self, chi: &DirichletCharacter, s: Complex64) -> Result<Complex64> {
        let log_q = libm::log(chi.group().field().q() as f64);
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, d, c) in &self.terms {
            let v = chi.evaluate(a)?.to_complex();
            if v.norm() == 0.0 {
                continue;
            }
            let w = (-s * (*d as f64 * log_q)).exp();
            acc += v * w * c.to_f64().unwrap_or(f64::NAN);
        }
        Ok(acc)
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    system: &CoefficientSystem,
    primes: &[&Poly],
    from: usize,
    a: Poly,
    deg: usize,
    coeff: BigRational,
    max_deg: usize,
    out: &mut Vec<(Poly, usize, BigRational)>,
) {
    out.push((a.clone(), deg, coeff.clone()));
    for (i, p) in primes.iter().enumerate().skip(from) {
        let dp = p.deg();
        let mut r = 1u32;
        let mut pa = a.clone();
        while deg + r as usize * dp <= max_deg {
            pa = &pa * *p;
            let c = system.local(dp, r);
            if !c.is_zero() {
                extend(system, primes, i + 1, pa.clone(), deg + r as usize * dp, &coeff * &c, max_deg, out);
            }
            r += 1;
        }
    }
}
