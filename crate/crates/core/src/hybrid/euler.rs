use alloc::vec::Vec;

use num_complex::Complex64;

use super::coeffs::CoefficientSystem;
use crate::chargroup::{root_of_unity, DirichletCharacter};
use crate::polyring::Poly;
use crate::Result;

/// `P_X(s, chi) = exp(sum_{P^j, j deg P <= X} chi(P)^j / (j |P|^{js}))`.
///
/// `primes_by_degree[d - 1]` lists the monic primes of degree `d`, for `d <= X`.
pub fn p_x_eval(
    chi: &DirichletCharacter,
    s: Complex64,
    x: u32,
    primes_by_degree: &[Vec<Poly>],
) -> Result<Complex64> {
    Ok(p_x_log(chi, s, x, primes_by_degree)?.exp())
}

/// The exponent of [`p_x_eval`].
pub fn p_x_log(
    chi: &DirichletCharacter,
    s: Complex64,
    x: u32,
    primes_by_degree: &[Vec<Poly>],
) -> Result<Complex64> {
    let group = chi.group();
    let n = group.exponent();
    let log_q = libm::log(group.field().q() as f64);
    let x = x as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for (di, primes) in primes_by_degree.iter().enumerate().take(x) {
        let deg = di + 1;
        for p in primes {
            let Some(k) = chi.rotation_at(group.residue_index(p)?) else {
                continue;
            };
            for j in 1..=x / deg {
                let w = (-s * (log_q * (j * deg) as f64)).exp();
                acc += root_of_unity(k * j as u64 % n, n) * w / j as f64;
            }
        }
    }
    Ok(acc)
}

/// `prod_{deg P <= X} F_P(chi(P) |P|^{-s})`, the Euler product whose Dirichlet
/// coefficients are `system`.
pub fn euler_product_eval(
    system: &CoefficientSystem,
    chi: &DirichletCharacter,
    s: Complex64,
    primes_by_degree: &[Vec<Poly>],
) -> Result<Complex64> {
    let group = chi.group();
    let log_q = libm::log(group.field().q() as f64);
    let mut acc = Complex64::new(1.0, 0.0);
    for (di, primes) in primes_by_degree.iter().enumerate().take(system.x as usize) {
        let deg = di + 1;
        for p in primes {
            let v = chi.evaluate(p)?.to_complex();
            let y = v * (-s * (log_q * deg as f64)).exp();
            acc *= system.local_factor(deg, y);
        }
    }
    Ok(acc)
}

/// `P_X^*(s, chi) = prod_{deg P <= X} (1 - chi(P)|P|^{-s})^{-1}
/// prod_{X/2 < deg P <= X} (1 + chi(P)^2 |P|^{-2s} / 2)^{-1}`.
pub fn p_star_eval(
    chi: &DirichletCharacter,
    s: Complex64,
    x: u32,
    primes_by_degree: &[Vec<Poly>],
) -> Result<Complex64> {
    let sys = CoefficientSystem::new(super::CoeffKind::AlphaK(1), x);
    euler_product_eval(&sys, chi, s, primes_by_degree)
}
