//! L-functions of Dirichlet characters as polynomials in `u = q^{-s}`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chargroup::{root_of_unity, DirichletCharacter, UnitGroup};
use crate::numeric::polynomial_roots;
use crate::polyring::{factorize, monic_polys, Poly};
use crate::{Error, Result};

/// Relative size below which a coefficient counts as zero.
const COEFF_EPS: f64 = 1e-9;

/// `L(s, chi) = sum_n c_n u^n` with `u = q^{-s}` and `c_n = sum_{deg A = n} chi(A)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LPolynomial {
    pub q: u32,
    pub modulus: Poly,
    pub exponents: Vec<u64>,
    /// `c_0, ..., c_{deg R - 1}`.
    pub coeffs: Vec<Complex64>,
}

impl LPolynomial {
    pub fn log_q(&self) -> f64 {
        libm::log(self.q as f64)
    }

    /// Largest `n` with `c_n != 0`.
    pub fn degree(&self) -> usize {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        self.coeffs
            .iter()
            .rposition(|c| c.norm() > COEFF_EPS * scale)
            .unwrap_or(0)
    }

    /// Coefficients up to [`degree`](Self::degree).
    pub fn trimmed(&self) -> &[Complex64] {
        &self.coeffs[..=self.degree()]
    }

    pub fn eval_u(&self, u: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * u + c)
    }

    /// `d/du` of the polynomial.
    pub fn eval_du(&self, u: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (n, &c)| acc * u + c * n as f64)
    }

    pub fn u_of(&self, s: Complex64) -> Complex64 {
        (-s * self.log_q()).exp()
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.eval_u(self.u_of(s))
    }

    pub fn conj(&self) -> Self {
        Self {
            q: self.q,
            modulus: self.modulus.clone(),
            exponents: self.exponents.clone(),
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }
}

/// Per-degree character sums `sum_{A monic, deg A = n} chi(A)` for `n < deg R`.
///
/// Monic polynomials of degree `n < deg R` are their own residues, with indices
/// filling `[q^n, 2 q^n)`.
pub fn l_coeffs(chi: &DirichletCharacter) -> Result<LPolynomial> {
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let group = chi.group();
    let q = group.field().q() as usize;
    let d = group.modulus().deg();
    let n_exp = group.exponent();
    let mut coeffs = Vec::with_capacity(d);
    let mut hist = vec![0u64; n_exp as usize];
    let mut start = 1usize;
    for _ in 0..d {
        hist.iter_mut().for_each(|h| *h = 0);
        for r in start..2 * start {
            if let Some(k) = chi.rotation_at(r) {
                hist[k as usize] += 1;
            }
        }
        coeffs.push(histogram_sum(&hist, n_exp));
        start *= q;
    }
    Ok(LPolynomial {
        q: q as u32,
        modulus: group.modulus().clone(),
        exponents: chi.exponents().to_vec(),
        coeffs,
    })
}

/// `sum_k hist[k] e^{2 pi i k/n}`, with exact cancellation of antipodal pairs.
pub(crate) fn histogram_sum(hist: &[u64], n: u64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let half = (n % 2 == 0).then_some(n / 2);
    for (k, &c) in hist.iter().enumerate() {
        let k = k as u64;
        let weight = match half {
            Some(h) if k < h => c as f64 - hist[(k + h) as usize] as f64,
            Some(_) => continue,
            None => c as f64,
        };
        if weight != 0.0 {
            acc += root_of_unity(k, n) * weight;
        }
    }
    acc
}

/// `L(s, chi)` for a non-trivial character.
pub fn l_eval(chi: &DirichletCharacter, s: Complex64) -> Result<Complex64> {
    Ok(l_coeffs(chi)?.eval(s))
}

/// `L(s, chi_0) = prod_{P | R} (1 - |P|^{-s}) / (1 - q^{1-s})`.
pub fn l_eval_trivial(r: &Poly, s: Complex64) -> Result<Complex64> {
    let log_q = libm::log(r.q() as f64);
    let denom = Complex64::new(1.0, 0.0) - ((Complex64::new(1.0, 0.0) - s) * log_q).exp();
    if denom.norm() < 1e-13 {
        return Err(Error::Pole);
    }
    let fac = factorize(r)?;
    let num = fac.primes.iter().fold(Complex64::new(1.0, 0.0), |acc, (p, _)| {
        acc * (Complex64::new(1.0, 0.0) - (-s * (p.deg() as f64 * log_q)).exp())
    });
    Ok(num / denom)
}

/// `zeta_A(s) = 1 / (1 - q^{1-s})`.
pub fn zeta_a(q: u32, s: Complex64) -> Result<Complex64> {
    let denom = Complex64::new(1.0, 0.0) - ((Complex64::new(1.0, 0.0) - s) * libm::log(q as f64)).exp();
    if denom.norm() < 1e-13 {
        return Err(Error::Pole);
    }
    Ok(denom.inv())
}

/// `L(s, chi)` for any character, trivial included.
pub fn l_value(chi: &DirichletCharacter, s: Complex64) -> Result<Complex64> {
    if chi.is_trivial() {
        l_eval_trivial(chi.modulus(), s)
    } else {
        l_eval(chi, s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    /// `|u| = q^{-1/2}`, a zero on `Re s = 1/2`.
    Critical,
    /// `|u| = 1`.
    Unit,
    Other,
}

/// Roots of the L-polynomial in the `u`-plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    pub q: u32,
    pub roots: Vec<Complex64>,
    pub kinds: Vec<RootKind>,
}

impl ZeroSet {
    pub fn log_q(&self) -> f64 {
        libm::log(self.q as f64)
    }

    /// `s` with `q^{-s} = u` and `Im s` in `(-pi/log q, pi/log q]`.
    pub fn s_of(&self, u: Complex64) -> Complex64 {
        let log_q = self.log_q();
        let re = -libm::log(u.norm()) / log_q;
        let mut im = -u.arg() / log_q;
        if im <= -PI / log_q {
            im += 2.0 * PI / log_q;
        }
        Complex64::new(re, im)
    }

    /// Fundamental zeros in the `s`-plane, one per root.
    pub fn s_zeros(&self) -> Vec<Complex64> {
        self.roots.iter().map(|&u| self.s_of(u)).collect()
    }

    /// `gamma` with `rho = 1/2 + i gamma` for the critical roots.
    pub fn gammas(&self) -> Vec<f64> {
        self.roots
            .iter()
            .zip(&self.kinds)
            .filter(|(_, k)| **k == RootKind::Critical)
            .map(|(&u, _)| self.s_of(u).im)
            .collect()
    }

    /// The copies `rho + 2 pi i m / log q` for `|m| <= m_max`.
    pub fn periodic_copies(&self, m_max: i64) -> Vec<Complex64> {
        let period = 2.0 * PI / self.log_q();
        let mut out = Vec::new();
        for s in self.s_zeros() {
            for m in -m_max..=m_max {
                out.push(s + Complex64::new(0.0, period * m as f64));
            }
        }
        out
    }
}

fn classify(u: Complex64, q: u32, tol: f64) -> RootKind {
    let r = u.norm();
    if (r - 1.0 / libm::sqrt(q as f64)).abs() < tol {
        RootKind::Critical
    } else if (r - 1.0).abs() < tol {
        RootKind::Unit
    } else {
        RootKind::Other
    }
}

/// Roots of `sum c_n u^n`, from companion-matrix eigenvalues polished by Newton.
pub fn l_zeros(chi: &DirichletCharacter) -> Result<ZeroSet> {
    zeros_of(&l_coeffs(chi)?)
}

pub fn zeros_of(lp: &LPolynomial) -> Result<ZeroSet> {
    let coeffs = lp.trimmed();
    let mut roots = if coeffs.len() <= 1 {
        Vec::new()
    } else {
        polynomial_roots(coeffs)?
    };
    let cmax = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    for u in roots.iter_mut() {
        *u = polish(lp, *u, cmax)?;
    }
    roots.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
    let kinds = roots.iter().map(|&u| classify(u, lp.q, 1e-6)).collect();
    Ok(ZeroSet {
        q: lp.q,
        roots,
        kinds,
    })
}

fn polish(lp: &LPolynomial, mut u: Complex64, cmax: f64) -> Result<Complex64> {
    let tol = |u: Complex64| 1e-12 * cmax * libm::pow(1.0 + u.norm(), lp.coeffs.len() as f64);
    for _ in 0..50 {
        let f = lp.eval_u(u);
        if f.norm() <= 1e-14 * cmax {
            break;
        }
        let df = lp.eval_du(u);
        if df.norm() == 0.0 {
            break;
        }
        let step = f / df;
        u -= step;
        if step.norm() <= 1e-16 * u.norm() {
            break;
        }
    }
    let res = lp.eval_u(u).norm();
    if res > tol(u) {
        return Err(Error::RootFinding(alloc::format!(
            "residual {res:e} at root {u} exceeds tolerance"
        )));
    }
    Ok(u)
}

/// Root classification against the circles `|u| = q^{-1/2}` and `|u| = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhReport {
    pub critical: usize,
    pub unit: usize,
    pub other: usize,
    /// Largest `||u| - q^{-1/2}|` over critical roots.
    pub max_critical_deviation: f64,
    /// Largest `||u| - 1|` over unit roots.
    pub max_unit_deviation: f64,
    /// `|u|` for each unclassified root.
    pub other_moduli: Vec<f64>,
}

pub fn rh_report(chi: &DirichletCharacter, tol: f64) -> Result<RhReport> {
    Ok(rh_report_of(&l_zeros(chi)?, tol))
}

pub fn rh_report_of(zeros: &ZeroSet, tol: f64) -> RhReport {
    let crit = 1.0 / libm::sqrt(zeros.q as f64);
    let mut rep = RhReport {
        critical: 0,
        unit: 0,
        other: 0,
        max_critical_deviation: 0.0,
        max_unit_deviation: 0.0,
        other_moduli: Vec::new(),
    };
    for &u in &zeros.roots {
        let r = u.norm();
        match classify(u, zeros.q, tol) {
            RootKind::Critical => {
                rep.critical += 1;
                rep.max_critical_deviation = rep.max_critical_deviation.max((r - crit).abs());
            }
            RootKind::Unit => {
                rep.unit += 1;
                rep.max_unit_deviation = rep.max_unit_deviation.max((r - 1.0).abs());
            }
            RootKind::Other => {
                rep.other += 1;
                rep.other_moduli.push(r);
            }
        }
    }
    rep
}

/// Both sides of the short-sum identity for `|L(1/2, chi)|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShortSumSides {
    pub lhs: f64,
    pub rhs: f64,
}

/// `|L(1/2, chi)|^2` against `2 sum_{deg AB < deg R} chi(A) conj chi(B) / |AB|^{1/2} + c(chi)`.
///
/// The right side evaluates `chi` polynomial by polynomial (reducing mod `R`)
/// rather than reading the L-polynomial.
pub fn short_sum_sides(chi: &DirichletCharacter) -> Result<ShortSumSides> {
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let lhs = l_eval(chi, Complex64::new(0.5, 0.0))?.norm_sqr();

    let group = chi.group();
    let field = group.field();
    let d = group.modulus().deg();
    let q = field.q() as f64;
    let sq = libm::sqrt(q);
    // t[n] = sum over monic A of degree n of chi(A), n <= deg R
    let mut t = Vec::with_capacity(d + 1);
    for n in 0..=d {
        let mut acc = Complex64::new(0.0, 0.0);
        for a in monic_polys(field, n) {
            acc += chi.evaluate(&a)?.to_complex();
        }
        t.push(acc);
    }
    // s[m] = sum_{deg AB = m} chi(A) conj chi(B) / |AB|^{1/2}
    let s = |m: usize| -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..=m.min(d) {
            if m - i <= d {
                acc += t[i] * t[m - i].conj();
            }
        }
        acc.re / libm::pow(q, m as f64 / 2.0)
    };
    let main: f64 = (0..d).map(s).sum::<f64>() * 2.0;
    let c = if chi.is_even() {
        let s2 = if d >= 2 { s(d - 2) } else { 0.0 };
        -q / ((sq - 1.0) * (sq - 1.0)) * s2 - 2.0 * sq / (sq - 1.0) * s(d - 1)
            + s(d) / ((sq - 1.0) * (sq - 1.0))
    } else {
        -s(d - 1)
    };
    Ok(ShortSumSides { lhs, rhs: main + c })
}

/// `-L'/L(s, chi)` from the polynomial, which equals `sum chi(A) Lambda(A) / |A|^s`.
pub fn l_log_deriv(chi: &DirichletCharacter, s: Complex64) -> Result<Complex64> {
    log_deriv_of(&l_coeffs(chi)?, s)
}

pub fn log_deriv_of(lp: &LPolynomial, s: Complex64) -> Result<Complex64> {
    let u = lp.u_of(s);
    let l = lp.eval_u(u);
    let scale = lp.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if l.norm() <= 1e-13 * scale {
        return Err(Error::AtZero);
    }
    // dL/ds = -log q * u * dL/du
    Ok(lp.log_q() * u * lp.eval_du(u) / l)
}

/// `sum_{deg A <= n_max} chi(A) Lambda(A) / |A|^s` over prime powers, given the
/// monic primes of each degree `1..=n_max`.
pub fn log_deriv_series(
    chi: &DirichletCharacter,
    primes_by_degree: &[Vec<Poly>],
    n_max: usize,
    s: Complex64,
) -> Result<Complex64> {
    let group = chi.group();
    let n = group.exponent();
    let log_q = libm::log(group.field().q() as f64);
    let mut total = Complex64::new(0.0, 0.0);
    for (di, primes) in primes_by_degree.iter().enumerate().take(n_max) {
        let deg = di + 1;
        for p in primes {
            let Some(k) = chi.rotation_at(group.residue_index(p)?) else {
                continue;
            };
            let mut j = 1;
            while j * deg <= n_max {
                let w = (-s * (log_q * (j * deg) as f64)).exp();
                total += root_of_unity(k * j as u64 % n, n) * w * (deg as f64 * log_q);
                j += 1;
            }
        }
    }
    Ok(total)
}

/// `|L(1/2, chi)|^2` averaged over the given characters.
pub fn mean_square_at_half(chars: &[DirichletCharacter]) -> Result<f64> {
    let mut acc = 0.0;
    for chi in chars {
        acc += l_eval(chi, Complex64::new(0.5, 0.0))?.norm_sqr();
    }
    Ok(acc / chars.len() as f64)
}

/// Shared handle plus L-polynomials for every primitive character of `R`.
pub fn primitive_l_polynomials(group: &alloc::sync::Arc<UnitGroup>) -> Result<Vec<LPolynomial>> {
    crate::chargroup::primitive_characters(group)
        .iter()
        .map(l_coeffs)
        .collect()
}
