//! Haar-random unitary matrices and the random-matrix side of the moment model.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::hybrid::BumpProfile;
use crate::moments::{f_k, ratio_to_f64};
use crate::numeric::{eigenvalues, householder_qr, CMatrix};
use crate::special::ci;
use crate::{Error, Result, EXP_EULER_GAMMA};

/// Largest acceptable `max |U U^dagger - I|` for a sample.
pub const UNITARITY_TOL: f64 = 1e-12;
const MAX_RESAMPLES: u32 = 8;

/// Independent ChaCha8 stream `stream` under key `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform on `(0, 1]`.
fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 / (1u64 << 53) as f64
}

/// Standard complex Gaussian (`E|z|^2 = 1`) by Box–Muller.
pub fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let r = libm::sqrt(-libm::log(uniform(rng)));
    let t = 2.0 * PI * uniform(rng);
    Complex64::new(r * libm::cos(t), r * libm::sin(t))
}

/// QR of a complex Ginibre matrix with the phases of `diag R` moved into `Q`.
pub fn haar_unitary(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let mut g = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = complex_gaussian(rng);
        }
    }
    let (mut q, diag) = householder_qr(&g);
    for (j, d) in diag.iter().enumerate() {
        let ph = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    q
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitarySample {
    pub n: usize,
    /// Sorted eigenphases in `(-pi, pi]`.
    pub phases: Vec<f64>,
    pub seed: u64,
    pub stream: u64,
    /// `max |U U^dagger - I|` of the accepted matrix.
    pub residual: f64,
    /// Matrices discarded before this one (failed eigen-decomposition).
    pub resampled: u32,
}

pub fn sample_haar_unitary(n: usize, seed: u64, stream: u64) -> Result<UnitarySample> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix size must be at least 1".into()));
    }
    let mut rng = stream_rng(seed, stream);
    for resampled in 0..MAX_RESAMPLES {
        let u = haar_unitary(n, &mut rng);
        let residual = u.unitarity_residual();
        if residual >= UNITARITY_TOL {
            continue;
        }
        let Ok(eigs) = eigenvalues(&u) else {
            continue;
        };
        let mut phases: Vec<f64> = eigs
            .iter()
            .map(|z| {
                let a = z.arg();
                if a <= -PI { PI } else { a }
            })
            .collect();
        phases.sort_by(f64::total_cmp);
        return Ok(UnitarySample {
            n,
            phases,
            seed,
            stream,
            residual,
            resampled,
        });
    }
    Err(Error::RootFinding(alloc::format!(
        "no usable Haar sample after {MAX_RESAMPLES} attempts"
    )))
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_err: f64,
    pub samples: usize,
}

impl MonteCarloEstimate {
    pub fn from_values(xs: &[f64]) -> Self {
        let n = xs.len();
        let mean = crate::moments::pairwise_sum(xs) / n as f64;
        let var = if n > 1 {
            let dev: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
            crate::moments::pairwise_sum(&dev) / (n - 1) as f64
        } else {
            0.0
        };
        Self {
            mean,
            std_err: libm::sqrt(var / n as f64),
            samples: n,
        }
    }
}

/// `|det(I - U e^{-i theta})|^{2k} = prod_n |1 - e^{i(theta_n - theta)}|^{2k}`.
pub fn char_poly_power(phases: &[f64], theta: f64, k: u32) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let p: f64 = phases
        .iter()
        .map(|&t| 2.0 - 2.0 * libm::cos(t - theta))
        .product();
    libm::pow(p, k as f64)
}

/// Monte Carlo `E |Z(U, theta)|^{2k}` over Haar `U(N)`; sample `j` uses stream `j`.
pub fn char_poly_moment(n: usize, k: u32, theta: f64, samples: usize, seed: u64) -> Result<MonteCarloEstimate> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let mut xs = Vec::with_capacity(samples);
    for j in 0..samples {
        let s = sample_haar_unitary(n, seed, j as u64)?;
        xs.push(char_poly_power(&s.phases, theta, k));
    }
    Ok(MonteCarloEstimate::from_values(&xs))
}

/// `E |Z(U, 0)|^{2k}` over `U(N)`, `N <= 3`, by integrating against the
/// eigenvalue density `prod_{j<l} |e^{i a_j} - e^{i a_l}|^2 / ((2 pi)^N N!)`.
///
/// The integrand is a trigonometric polynomial, so an equispaced grid finer
/// than its degree integrates it exactly.
pub fn cue_moment_exact(n: usize, k: u32) -> Result<f64> {
    if n == 0 || n > 3 {
        return Err(Error::InvalidArgument("exact CUE integration supports 1 <= N <= 3".into()));
    }
    let pts = 4 * (n + k as usize) + 8;
    let grid: Vec<f64> = (0..pts).map(|i| 2.0 * PI * i as f64 / pts as f64).collect();
    let mut idx = alloc::vec![0usize; n];
    let mut total = 0.0;
    loop {
        let a: Vec<f64> = idx.iter().map(|&i| grid[i]).collect();
        let mut w = 1.0;
        for j in 0..n {
            for l in j + 1..n {
                w *= 2.0 - 2.0 * libm::cos(a[j] - a[l]);
            }
        }
        total += w * char_poly_power(&a, 0.0, k);
        let mut d = 0;
        while d < n {
            idx[d] += 1;
            if idx[d] < pts {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
        if d == n {
            break;
        }
    }
    let fact: f64 = (1..=n).map(|i| i as f64).product();
    Ok(total / libm::pow(pts as f64, n as f64) / fact)
}

/// Precomputed quadrature for `G(theta) = sum_{|m| <= M} int u(x)
/// Ci(|theta + 2 pi m| L log x) dx` with `L = X log q`.
///
/// Integrating by parts once, `int u(x) Ci(c log x) dx = Ci(c) + int v(e^y)
/// cos(c y) / y dy`; the sum over `m` of the cosines collapses to
/// `cos(theta L y) D_M(2 pi L y)` with the Dirichlet kernel `D_M`.
#[derive(Debug, Clone)]
pub struct PhaseKernel {
    pub scale: f64,
    pub m_max: usize,
    ly: Vec<f64>,
    weights: Vec<f64>,
}

fn dirichlet_kernel(m: usize, t: f64) -> f64 {
    let half = libm::sin(0.5 * t);
    if half.abs() < 1e-9 {
        return (2 * m + 1) as f64;
    }
    libm::sin((m as f64 + 0.5) * t) / half
}

impl PhaseKernel {
    pub fn new(bump: &BumpProfile, m_max: usize) -> Self {
        let scale = libm::log(bump.q as f64) * bump.x as f64;
        let freq = scale * (2.0 * PI * m_max as f64 + PI);
        let rule = bump.rule(bump.panels_for(freq));
        let mut ly = Vec::with_capacity(rule.y.len());
        let mut weights = Vec::with_capacity(rule.y.len());
        for ((&y, &dy), &v) in rule.y.iter().zip(&rule.dy).zip(&rule.tail) {
            ly.push(scale * y);
            weights.push(v * dy / y * dirichlet_kernel(m_max, 2.0 * PI * scale * y));
        }
        Self {
            scale,
            m_max,
            ly,
            weights,
        }
    }

    /// `G(theta)`; a phase at exactly 0 is moved to `1e-12`.
    pub fn periodic_ci_integral(&self, theta: f64) -> Result<f64> {
        let theta = if theta == 0.0 { 1e-12 } else { theta };
        let mut acc = 0.0;
        let m = self.m_max as i64;
        for j in -m..=m {
            acc += ci((theta + 2.0 * PI * j as f64).abs() * self.scale)?;
        }
        let smooth: f64 = self
            .ly
            .iter()
            .zip(&self.weights)
            .map(|(&ly, &w)| w * libm::cos(theta * ly))
            .sum();
        Ok(acc + smooth)
    }

    /// `2k sum_n G(theta_n)`.
    pub fn exponent(&self, phases: &[f64], k: u32) -> Result<f64> {
        let mut acc = 0.0;
        for &t in phases {
            acc += self.periodic_ci_integral(t)?;
        }
        Ok(2.0 * k as f64 * acc)
    }
}

/// `int u(x) Ci(c log x) dx` by direct quadrature, for checking [`PhaseKernel`].
pub fn ci_integral_direct(bump: &BumpProfile, c: f64) -> Result<f64> {
    let rule = bump.rule(bump.panels_for(c));
    let mut acc = 0.0;
    for (&y, &m) in rule.y.iter().zip(&rule.mass) {
        if m != 0.0 {
            acc += m * ci(c * y)?;
        }
    }
    Ok(acc)
}

/// Monte Carlo average of `exp(2k sum_n G(theta_n))` against the surrogate
/// `f(k) (N / (log q e^gamma X))^{k^2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RmtComparison {
    pub n: usize,
    pub k: u32,
    pub q: u32,
    pub x: u32,
    pub m_periods: usize,
    pub estimate: MonteCarloEstimate,
    pub surrogate: f64,
    pub ratio: f64,
}

/// Deterministic: sample `j` uses stream `j` under `seed`.
pub fn hadamard_rmt_average(
    n: usize,
    bump: &BumpProfile,
    k: u32,
    m_periods: usize,
    samples: usize,
    seed: u64,
) -> Result<RmtComparison> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let kernel = PhaseKernel::new(bump, m_periods);
    let mut xs = Vec::with_capacity(samples);
    for j in 0..samples {
        let s = sample_haar_unitary(n, seed, j as u64)?;
        xs.push(if k == 0 { 1.0 } else { libm::exp(kernel.exponent(&s.phases, k)?) });
    }
    let estimate = MonteCarloEstimate::from_values(&xs);
    let surrogate = hadamard_surrogate(n, bump.q, bump.x, k);
    Ok(RmtComparison {
        n,
        k,
        q: bump.q,
        x: bump.x,
        m_periods,
        estimate,
        surrogate,
        ratio: estimate.mean / surrogate,
    })
}

/// `f(k) (N / (log q e^gamma X))^{k^2}`, i.e. the Hadamard prediction with
/// `deg R = N / log q`.
pub fn hadamard_surrogate(n: usize, q: u32, x: u32, k: u32) -> f64 {
    let base = n as f64 / (libm::log(q as f64) * EXP_EULER_GAMMA * x as f64);
    ratio_to_f64(&f_k(k)) * libm::pow(base, (k * k) as f64)
}

#[cfg(test)]
mod tests;
