use alloc::vec::Vec;
use core::f64::consts::{E, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numeric::gauss_legendre;
use crate::special::e1;
use crate::Result;

/// Shape of the smooth weight on `[0, 1]` before rescaling to the support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BumpShape {
    /// `exp(-1/(t(1-t)))`
    Standard,
    /// `exp(-1/(t(1-t))) (1 + 3t^2)`, deliberately asymmetric.
    Skewed,
}

impl BumpShape {
    fn raw(self, t: f64) -> f64 {
        if t <= 0.0 || t >= 1.0 {
            return 0.0;
        }
        let b = libm::exp(-1.0 / (t * (1.0 - t)));
        match self {
            BumpShape::Standard => b,
            BumpShape::Skewed => b * (1.0 + 3.0 * t * t),
        }
    }
}

/// Smooth weight `u` supported on `[e, e^{1 + q^{-X}}]` with `int u = 1`.
///
/// Integrals are taken in `t`, the affine coordinate sending the support to
/// `[0, 1]`, with composite Gauss–Legendre panels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BumpProfile {
    pub x: u32,
    pub q: u32,
    pub shape: BumpShape,
    /// Gauss–Legendre nodes per panel.
    pub nodes: usize,
    /// Panels used for non-oscillatory integrands.
    pub base_panels: usize,
    delta: f64,
    width: f64,
    norm: f64,
}

/// Quadrature on the support with the bump pre-multiplied.
#[derive(Debug, Clone)]
pub(crate) struct Rule {
    /// `y = log x` at the nodes.
    pub y: Vec<f64>,
    /// `int f(y) u(x) dx ~ sum mass[j] f(y[j])`.
    pub mass: Vec<f64>,
    /// `int g(y) dy ~ sum dy[j] g(y[j])`.
    pub dy: Vec<f64>,
    /// `v(e^y) = int_{e^y}^inf u` at the nodes.
    pub tail: Vec<f64>,
}

impl BumpProfile {
    pub fn new(q: u32, x: u32) -> Self {
        Self::with_shape(q, x, BumpShape::Standard, 32)
    }

    pub fn with_shape(q: u32, x: u32, shape: BumpShape, nodes: usize) -> Self {
        let delta = libm::pow(q as f64, -(x as f64));
        let width = libm::exp(1.0 + delta) - E;
        let mut b = Self {
            x,
            q,
            shape,
            nodes,
            base_panels: 4,
            delta,
            width,
            norm: 1.0,
        };
        let (t, w) = b.t_rule(64);
        b.norm = t.iter().zip(&w).map(|(&t, &w)| w * shape.raw(t)).sum();
        b
    }

    /// Same profile with the node count per panel doubled.
    pub fn refined(&self) -> Self {
        let mut b = Self::with_shape(self.q, self.x, self.shape, self.nodes * 2);
        b.base_panels = self.base_panels;
        b
    }

    /// Support `[e, e^{1 + q^{-X}}]`.
    pub fn support(&self) -> (f64, f64) {
        (E, E + self.width)
    }

    /// `u(x)`.
    pub fn density(&self, x: f64) -> f64 {
        self.shape.raw((x - E) / self.width) / (self.norm * self.width)
    }

    /// Panels needed to resolve `e^{i freq y}` over the support.
    pub fn panels_for(&self, freq: f64) -> usize {
        let cycles = freq.abs() * self.delta / (2.0 * PI);
        self.base_panels + libm::ceil(2.0 * cycles) as usize
    }

    fn t_rule(&self, panels: usize) -> (Vec<f64>, Vec<f64>) {
        let (g, gw) = gauss_legendre(self.nodes);
        let h = 1.0 / panels as f64;
        let mut t = Vec::with_capacity(panels * self.nodes);
        let mut w = Vec::with_capacity(panels * self.nodes);
        for p in 0..panels {
            let a = p as f64 * h;
            for (&gi, &wi) in g.iter().zip(&gw) {
                t.push(a + 0.5 * h * (gi + 1.0));
                w.push(0.5 * h * wi);
            }
        }
        (t, w)
    }

    pub(crate) fn rule(&self, panels: usize) -> Rule {
        let (t, w) = self.t_rule(panels);
        let (g, gw) = gauss_legendre(self.nodes);
        let h = 1.0 / panels as f64;
        let n = t.len();
        let mut rule = Rule {
            y: Vec::with_capacity(n),
            mass: Vec::with_capacity(n),
            dy: Vec::with_capacity(n),
            tail: Vec::with_capacity(n),
        };
        let mut done = 0.0;
        for p in 0..panels {
            let a = p as f64 * h;
            for j in p * self.nodes..(p + 1) * self.nodes {
                let tj = t[j];
                let x = E + self.width * tj;
                // mass of [a, tj] by a Gauss rule on that piece
                let part: f64 = g
                    .iter()
                    .zip(&gw)
                    .map(|(&gi, &wi)| {
                        let s = a + 0.5 * (tj - a) * (gi + 1.0);
                        0.5 * (tj - a) * wi * self.shape.raw(s)
                    })
                    .sum();
                rule.y.push(libm::log(x));
                rule.mass.push(w[j] * self.shape.raw(tj) / self.norm);
                rule.dy.push(w[j] * self.width / x);
                rule.tail.push(1.0 - (done + part) / self.norm);
            }
            let end: f64 = (p * self.nodes..(p + 1) * self.nodes)
                .map(|j| w[j] * self.shape.raw(t[j]))
                .sum();
            done += end;
        }
        rule
    }

    /// `int u(x) dx` with the base rule; 1 up to quadrature error.
    pub fn total_mass(&self) -> f64 {
        self.rule(self.base_panels).mass.iter().sum()
    }

    /// `U(z) = int u(x) E_1(z log x) dx`, by direct quadrature.
    pub fn u_cap(&self, z: Complex64) -> Result<Complex64> {
        self.u_cap_with(z, self.panels_for(z.im))
    }

    pub fn u_cap_with(&self, z: Complex64, panels: usize) -> Result<Complex64> {
        let rule = self.rule(panels);
        let mut acc = Complex64::new(0.0, 0.0);
        for (&y, &m) in rule.y.iter().zip(&rule.mass) {
            if m != 0.0 {
                acc += e1(z * y)? * m;
            }
        }
        Ok(acc)
    }

    /// `U(z)` after integrating by parts once:
    /// `E_1(z) - int v(e^y) e^{-zy} / y dy` over `log x` in the support.
    pub fn u_cap_by_parts(&self, z: Complex64) -> Result<Complex64> {
        let rule = self.rule(self.panels_for(z.im));
        Ok(e1(z)? - by_parts_integral(&rule, z))
    }

    /// Mellin transform `int x^{s-1} u(x) dx`.
    pub fn u_mellin(&self, s: Complex64) -> Complex64 {
        self.u_mellin_with(s, self.panels_for(s.im))
    }

    pub fn u_mellin_with(&self, s: Complex64, panels: usize) -> Complex64 {
        let rule = self.rule(panels);
        mellin_on(&rule, s)
    }
}

pub(crate) fn by_parts_integral(rule: &Rule, z: Complex64) -> Complex64 {
    rule.y
        .iter()
        .zip(&rule.dy)
        .zip(&rule.tail)
        .map(|((&y, &dy), &v)| (-z * y).exp() * (v * dy / y))
        .sum()
}

pub(crate) fn mellin_on(rule: &Rule, s: Complex64) -> Complex64 {
    rule.y
        .iter()
        .zip(&rule.mass)
        .filter(|(_, &m)| m != 0.0)
        .map(|(&y, &m)| ((s - 1.0) * y).exp() * m)
        .sum()
}
