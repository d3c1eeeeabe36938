use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::constants::{a_k, default_cutoff, f_k, local_moment_sum, ratio_to_f64};
use crate::polyring::{factorize, Poly};
use crate::{Error, Result, EXP_EULER_GAMMA};

/// Which main-term formula to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Prediction {
    /// `2k`-th moment of `P_X(1/2)`.
    Euler,
    /// Random-matrix prediction for the `2k`-th moment of `Z_X(1/2)`.
    Hadamard,
    /// The full moment of `L(1/2)`.
    L,
    /// Second moment of `Z_X(1/2)`.
    Hadamard2,
    /// Fourth moment of `Z_X(1/2)`.
    Hadamard4,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictedMoment {
    pub which: Prediction,
    pub value: f64,
    /// Whether `(X, deg R)` satisfy the side condition of the formula.
    pub in_regime: bool,
}

fn inv_norm(q: u32, deg: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(q).pow(deg as u32))
}

/// `prod_{P | R, keep(deg P)} (sum_m d_k(P^m)^2 |P|^{-m})^{-1}`, exact.
pub fn divisor_correction(r: &Poly, k: u32, keep: impl Fn(usize) -> bool) -> Result<BigRational> {
    let fac = factorize(r)?;
    let mut acc = BigRational::one();
    for (p, _) in &fac.primes {
        if keep(p.deg()) {
            acc /= local_moment_sum(k, &inv_norm(r.q(), p.deg()));
        }
    }
    Ok(acc)
}

/// `prod_{P | R, deg P > X} (1 - |P|^{-1})^3 / (1 + |P|^{-1})`, exact.
fn fourth_correction(r: &Poly, x: u32) -> Result<BigRational> {
    let fac = factorize(r)?;
    let mut acc = BigRational::one();
    for (p, _) in &fac.primes {
        if p.deg() > x as usize {
            let y = inv_norm(r.q(), p.deg());
            let one = BigRational::one();
            acc *= (&one - &y).pow(3) / (&one + &y);
        }
    }
    Ok(acc)
}

pub fn predicted_moment(r: &Poly, k: u32, x: u32, which: Prediction) -> Result<PredictedMoment> {
    if r.is_zero() || !r.is_monic() || r.deg() == 0 {
        return Err(Error::InvalidArgument(alloc::format!(
            "modulus must be monic of positive degree, got {}",
            r.to_text()
        )));
    }
    if x == 0 && which != Prediction::L {
        return Err(Error::InvalidArgument("X must be at least 1".into()));
    }
    let q = r.q();
    let deg = r.deg() as f64;
    let xf = x as f64;
    let log_q = libm::log(q as f64);
    let kk = (k * k) as i32;
    let hadamard_base = deg / (EXP_EULER_GAMMA * xf);
    let short_regime = xf <= libm::log(deg) / log_q;
    let (value, in_regime) = match which {
        Prediction::Euler => {
            let a = a_k(q, k, default_cutoff(q))?.value;
            let c = ratio_to_f64(&divisor_correction(r, k, |d| d <= x as usize)?);
            (a * c * libm::pow(EXP_EULER_GAMMA * xf, kk as f64), short_regime)
        }
        Prediction::Hadamard => (ratio_to_f64(&f_k(k)) * libm::pow(hadamard_base, kk as f64), true),
        Prediction::L => {
            let a = a_k(q, k, default_cutoff(q))?.value;
            let c = ratio_to_f64(&divisor_correction(r, k, |_| true)?);
            (ratio_to_f64(&f_k(k)) * a * c * libm::pow(deg, kk as f64), true)
        }
        Prediction::Hadamard2 => {
            if k != 1 {
                return Err(Error::InvalidArgument("hadamard2 is the k = 1 formula".into()));
            }
            let c = ratio_to_f64(&divisor_correction(r, 1, |d| d > x as usize)?);
            (hadamard_base * c, short_regime)
        }
        Prediction::Hadamard4 => {
            if k != 2 {
                return Err(Error::InvalidArgument("hadamard4 is the k = 2 formula".into()));
            }
            let c = ratio_to_f64(&fourth_correction(r, x)?);
            let regime = deg > 1.0 && xf <= libm::log(libm::log(deg)) / log_q;
            (libm::pow(hadamard_base, 4.0) * c / 12.0, regime)
        }
    };
    Ok(PredictedMoment {
        which,
        value,
        in_regime,
    })
}

/// `sum_{deg A <= x, (A, R) = 1} 1/|A|` against its main term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicSum {
    pub x: usize,
    pub exact: BigRational,
    pub value: f64,
    /// `phi(R)/|R| x`.
    pub main_term: f64,
    /// Number of monic `A` coprime to `R` in each degree `0..=x`.
    pub counts: Vec<u128>,
}

pub fn coprime_harmonic_sum(r: &Poly, x: usize) -> Result<HarmonicSum> {
    let fac = factorize(r)?;
    let q = r.q() as u128;
    let degs: Vec<usize> = fac.primes.iter().map(|(p, _)| p.deg()).collect();
    let mut counts = Vec::with_capacity(x + 1);
    for n in 0..=x {
        // inclusion-exclusion over squarefree divisors D of rad R
        let mut c: i128 = 0;
        for mask in 0u32..(1 << degs.len()) {
            let d: usize = (0..degs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| degs[i])
                .sum();
            if d <= n {
                let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                c += sign * q.pow((n - d) as u32) as i128;
            }
        }
        counts.push(c as u128);
    }
    let mut exact = BigRational::zero();
    for (n, &c) in counts.iter().enumerate() {
        exact += BigRational::new(BigInt::from(c), BigInt::from(q).pow(n as u32));
    }
    let density: f64 = degs
        .iter()
        .map(|&d| 1.0 - libm::pow(q as f64, -(d as f64)))
        .product();
    Ok(HarmonicSum {
        x,
        value: ratio_to_f64(&exact),
        exact,
        main_term: density * x as f64,
        counts,
    })
}
