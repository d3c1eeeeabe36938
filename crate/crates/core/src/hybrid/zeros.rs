use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bump::{BumpProfile, Rule};
use super::euler::p_x_eval;
use crate::chargroup::DirichletCharacter;
use crate::lfunc::{l_coeffs, log_deriv_of, log_deriv_series, zeros_of, LPolynomial};
use crate::polyring::Poly;
use crate::special::e1;
use crate::{Error, Result};

/// Offset applied to `s` when some `s - rho` lies on the negative real axis.
pub const BRANCH_EPS: f64 = 1e-8;

/// `Z_X(s, chi) = L(s, chi) / P_X(s, chi)`.
pub fn z_x_quotient(
    chi: &DirichletCharacter,
    s: Complex64,
    x: u32,
    primes_by_degree: &[Vec<Poly>],
) -> Result<Complex64> {
    let l = l_coeffs(chi)?.eval(s);
    Ok(l / p_x_eval(chi, s, x, primes_by_degree)?)
}

/// `Z_X` computed from the zeros.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroSum {
    pub value: Complex64,
    /// `sum_rho U((s - rho) X log q)` before exponentiation.
    pub exponent: Complex64,
    /// `s` was shifted by `i * BRANCH_EPS` to leave the branch cut.
    pub perturbed: bool,
}

/// Fundamental zeros in the `s`-plane and the point to evaluate at, shifted off
/// the cut if needed.
fn prepare(lp: &LPolynomial, s: Complex64) -> Result<(Vec<Complex64>, Complex64, bool)> {
    let zs = zeros_of(lp)?;
    let rhos = zs.s_zeros();
    let period = 2.0 * PI / lp.log_q();
    let mut perturbed = false;
    for &rho in &rhos {
        let d = s - rho;
        let k = libm::round(d.im / period);
        if (d.im - k * period).abs() < 1e-12 * period {
            if d.re.abs() < 1e-12 {
                return Err(Error::AtZero);
            }
            if d.re < 0.0 {
                perturbed = true;
            }
        }
    }
    let s = if perturbed {
        s + Complex64::new(0.0, BRANCH_EPS)
    } else {
        s
    };
    Ok((rhos, s, perturbed))
}

/// Sum of `f(m)` over `|m| <= m_max`, where `f(m) = h(z0 - 2 pi i m X) +
/// sum_j g_j e^{2 pi i m X y_j}`, accumulated in `+-m` pairs.
fn periodic_sum(
    rule: &Rule,
    g: &[Complex64],
    x: u32,
    m_max: usize,
    mut h: impl FnMut(i64) -> Result<Complex64>,
) -> Result<Complex64> {
    let step: Vec<Complex64> = rule
        .y
        .iter()
        .map(|&y| Complex64::from_polar(1.0, 2.0 * PI * x as f64 * y))
        .collect();
    let mut phase: Vec<Complex64> = alloc::vec![Complex64::new(1.0, 0.0); g.len()];
    let mut total = h(0)? + g.iter().sum::<Complex64>();
    for m in 1..=m_max as i64 {
        let mut plus = Complex64::new(0.0, 0.0);
        let mut minus = Complex64::new(0.0, 0.0);
        for ((ph, st), gj) in phase.iter_mut().zip(&step).zip(g) {
            *ph *= st;
            plus += gj * *ph;
            minus += gj * ph.conj();
        }
        total += (h(m)? + h(-m)?) + (plus + minus);
    }
    Ok(total)
}

/// `Z_X(s, chi) = exp(-sum_rho U((s - rho) X log q))` over every root of the
/// L-polynomial and its periodic copies `rho + 2 pi i m / log q`, `|m| <= m_max`.
pub fn z_x_from_zeros(
    chi: &DirichletCharacter,
    s: Complex64,
    bump: &BumpProfile,
    m_max: usize,
) -> Result<ZeroSum> {
    let lp = l_coeffs(chi)?;
    z_x_from_zeros_of(&lp, s, bump, m_max)
}

pub fn z_x_from_zeros_of(
    lp: &LPolynomial,
    s: Complex64,
    bump: &BumpProfile,
    m_max: usize,
) -> Result<ZeroSum> {
    let (rhos, s, perturbed) = prepare(lp, s)?;
    let x = bump.x;
    let scale = lp.log_q() * x as f64;
    let mut exponent = Complex64::new(0.0, 0.0);
    for rho in rhos {
        let z0 = (s - rho) * scale;
        let freq = z0.im.abs() + 2.0 * PI * x as f64 * m_max as f64;
        let rule = bump.rule(bump.panels_for(freq));
        // U(z) = E1(z) - int v(e^y) e^{-zy}/y dy
        let g: Vec<Complex64> = rule
            .y
            .iter()
            .zip(&rule.dy)
            .zip(&rule.tail)
            .map(|((&y, &dy), &v)| -(-z0 * y).exp() * (v * dy / y))
            .collect();
        let step = Complex64::new(0.0, 2.0 * PI * x as f64);
        exponent += periodic_sum(&rule, &g, x, m_max, |m| e1(z0 - step * m as f64))?;
    }
    Ok(ZeroSum {
        value: (-exponent).exp(),
        exponent,
        perturbed,
    })
}

/// `U((s - rho) X log q)` for a single zero, by the direct quadrature.
pub fn u_term(bump: &BumpProfile, lp: &LPolynomial, s: Complex64, rho: Complex64) -> Result<Complex64> {
    bump.u_cap((s - rho) * (lp.log_q() * bump.x as f64))
}

/// Both sides of the explicit formula for `-L'/L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExplicitFormulaSides {
    /// `-L'/L(s, chi)`.
    pub lhs: Complex64,
    /// `sum_{deg A <= X} chi(A) Lambda(A) / |A|^s`.
    pub prime_sum: Complex64,
    /// `sum_rho u~(1 + (rho - s) X log q) / (rho - s)`.
    pub zero_sum: Complex64,
    pub rhs: Complex64,
}

pub fn explicit_formula_sides(
    chi: &DirichletCharacter,
    s: Complex64,
    bump: &BumpProfile,
    m_max: usize,
    primes_by_degree: &[Vec<Poly>],
) -> Result<ExplicitFormulaSides> {
    let lp = l_coeffs(chi)?;
    let lhs = log_deriv_of(&lp, s)?;
    let x = bump.x;
    let prime_sum = log_deriv_series(chi, primes_by_degree, x as usize, s)?;
    let zs = zeros_of(&lp)?;
    let scale = lp.log_q() * x as f64;
    let period = 2.0 * PI / lp.log_q();
    let mut zero_sum = Complex64::new(0.0, 0.0);
    for rho in zs.s_zeros() {
        let w0 = (rho - s) * scale;
        let freq = w0.im.abs() + 2.0 * PI * x as f64 * m_max as f64;
        let rule = bump.rule(bump.panels_for(freq));
        let base: Vec<Complex64> = rule
            .y
            .iter()
            .map(|&y| (w0 * y).exp())
            .collect();
        // u~(1 + w_m) / (rho_m - s), w_m = w0 + 2 pi i m X, rho_m - s = (rho - s) + i m period
        let term = |m: i64| -> Complex64 {
            let phase = Complex64::new(0.0, 2.0 * PI * x as f64 * m as f64);
            let mel: Complex64 = rule
                .y
                .iter()
                .zip(&rule.mass)
                .zip(&base)
                .map(|((&y, &mass), &b)| b * (phase * y).exp() * mass)
                .sum();
            mel / (rho - s + Complex64::new(0.0, period * m as f64))
        };
        zero_sum += term(0);
        for m in 1..=m_max as i64 {
            zero_sum += term(m) + term(-m);
        }
    }
    Ok(ExplicitFormulaSides {
        lhs,
        prime_sum,
        zero_sum,
        rhs: prime_sum + zero_sum,
    })
}
