//! Dense complex linear algebra and quadrature used by the other modules.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use crate::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pnm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pnm1) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n);
            for (j, &v) in r.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// `max |(M M^dagger - I)_{ij}|`.
    pub fn unitarity_residual(&self) -> f64 {
        let p = self.mul(&self.adjoint());
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((p[(i, j)] - target).norm());
            }
        }
        worst
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }
}

impl core::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Householder QR: returns `(Q, diag(R))` with `A = Q R`.
pub fn householder_qr(a: &CMatrix) -> (CMatrix, Vec<Complex64>) {
    let n = a.n;
    let mut r = a.clone();
    let mut vs: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        let norm_x = libm::sqrt((k..n).map(|i| r[(i, k)].norm_sqr()).sum::<f64>());
        let x0 = r[(k, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * norm_x;
        let mut v: Vec<Complex64> = (k..n).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let vn = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if vn > 0.0 {
            v.iter_mut().for_each(|z| *z /= vn);
            for j in k..n {
                let dot: Complex64 = (k..n).map(|i| v[i - k].conj() * r[(i, j)]).sum();
                for i in k..n {
                    let t = v[i - k] * dot * 2.0;
                    r[(i, j)] -= t;
                }
            }
        }
        diag.push(r[(k, k)]);
        vs.push(v);
    }
    // Q = H_0 H_1 ... H_{n-1}, accumulated from the right end.
    let mut q = CMatrix::identity(n);
    for k in (0..n).rev() {
        let v = &vs[k];
        for j in 0..n {
            let dot: Complex64 = (k..n).map(|i| v[i - k].conj() * q[(i, j)]).sum();
            for i in k..n {
                let t = v[i - k] * dot * 2.0;
                q[(i, j)] -= t;
            }
        }
    }
    (q, diag)
}

/// Eigenvalues of a general complex matrix: Householder reduction to
/// Hessenberg form followed by single-shift QR with Wilkinson shifts.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>> {
    let n = a.n;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = a.clone();
    to_hessenberg(&mut h);
    hessenberg_qr(&mut h)
}

fn to_hessenberg(h: &mut CMatrix) {
    let n = h.n;
    for k in 0..n.saturating_sub(2) {
        let norm_x = libm::sqrt((k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>());
        if norm_x == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] += phase * norm_x;
        let vn = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
        v.iter_mut().for_each(|z| *z /= vn);
        // H <- P H
        for j in 0..n {
            let dot: Complex64 = (k + 1..n).map(|i| v[i - k - 1].conj() * h[(i, j)]).sum();
            for i in k + 1..n {
                let t = v[i - k - 1] * dot * 2.0;
                h[(i, j)] -= t;
            }
        }
        // H <- H P
        for i in 0..n {
            let dot: Complex64 = (k + 1..n).map(|j| h[(i, j)] * v[j - k - 1]).sum();
            for j in k + 1..n {
                let t = dot * v[j - k - 1].conj() * 2.0;
                h[(i, j)] -= t;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = Complex64::zero();
        }
    }
}

fn hessenberg_qr(h: &mut CMatrix) -> Result<Vec<Complex64>> {
    let n = h.n;
    let mut eig = vec![Complex64::zero(); n];
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            let s = if s == 0.0 { 1.0 } else { s };
            if h[(l, l - 1)].norm() <= f64::EPSILON * s {
                h[(l, l - 1)] = Complex64::zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > 100 * n.max(10) {
            return Err(Error::RootFinding(format!(
                "QR iteration did not converge (n = {n})"
            )));
        }
        let mu = if iter % 11 == 10 {
            // exceptional shift to break cycles
            h[(hi, hi)] + Complex64::new(h[(hi, hi - 1)].norm(), 0.0) * 0.75
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        for i in l..=hi {
            h[(i, i)] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - l);
        for k in l..hi {
            let x = h[(k, k)];
            let y = h[(k + 1, k)];
            let r = libm::sqrt(x.norm_sqr() + y.norm_sqr());
            let (c, s) = if r == 0.0 {
                (Complex64::new(1.0, 0.0), Complex64::zero())
            } else {
                (x / r, y / r)
            };
            for j in k..=hi {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = c.conj() * a + s.conj() * b;
                h[(k + 1, j)] = -s * a + c * b;
            }
            rots.push((c, s));
        }
        for (idx, k) in (l..hi).enumerate() {
            let (c, s) = rots[idx];
            for i in l..=(k + 1).min(hi) {
                let a = h[(i, k)];
                let b = h[(i, k + 1)];
                h[(i, k)] = a * c + b * s;
                h[(i, k + 1)] = -a * s.conj() + b * c.conj();
            }
        }
        for i in l..=hi {
            h[(i, i)] += mu;
        }
    }
    eig[0] = h[(0, 0)];
    Ok(eig)
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m1 = (a + d) * 0.5 + disc;
    let m2 = (a + d) * 0.5 - disc;
    if (m1 - d).norm() < (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// Roots of `sum c_k u^k` via eigenvalues of the balanced companion matrix.
/// `coeffs` is lowest degree first with a non-zero top coefficient.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg];
    if lead.is_zero() {
        return Err(Error::InvalidArgument("leading coefficient is zero".into()));
    }
    let mut m = CMatrix::zeros(deg);
    for i in 1..deg {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -coeffs[i] / lead;
    }
    balance(&mut m);
    eigenvalues(&m)
}

/// Diagonal similarity scaling by powers of two (Parlett–Reinsch).
fn balance(m: &mut CMatrix) {
    let n = m.n;
    let radix = 2.0f64;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].l1_norm();
                    r += m[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= radix * radix;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
    }
}
