use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::predict::{predicted_moment, Prediction};
use crate::chargroup::{phi_star, primitive_characters, unit_group, DirichletCharacter};
use crate::hybrid::p_x_log;
use crate::lfunc::{l_coeffs, LPolynomial};
use crate::polyring::{primes_up_to_degree, Poly};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MomentKind {
    L,
    P,
    Z,
    #[serde(rename = "split")]
    Split,
}

impl MomentKind {
    pub fn label(self) -> &'static str {
        match self {
            MomentKind::L => "L",
            MomentKind::P => "P",
            MomentKind::Z => "Z",
            MomentKind::Split => "split",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "L" | "l" => Some(MomentKind::L),
            "P" | "p" => Some(MomentKind::P),
            "Z" | "z" => Some(MomentKind::Z),
            "split" | "S" => Some(MomentKind::Split),
            _ => None,
        }
    }
}

/// `|L(1/2, chi)|` and `log |P_X(1/2, chi)|` for one character.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacterValues {
    pub l_abs: f64,
    pub log_p_abs: f64,
}

impl CharacterValues {
    pub fn l_power(&self, k: u32) -> f64 {
        libm::pow(self.l_abs, 2.0 * k as f64)
    }

    pub fn p_power(&self, k: u32) -> f64 {
        libm::exp(2.0 * k as f64 * self.log_p_abs)
    }

    /// `|Z_X(1/2)|^{2k} = |L / P_X|^{2k}`; zero when `L(1/2) = 0`.
    pub fn z_power(&self, k: u32) -> f64 {
        if k == 0 {
            return 1.0;
        }
        libm::pow(self.l_abs * libm::exp(-self.log_p_abs), 2.0 * k as f64)
    }
}

/// Values at `s = 1/2` from a precomputed L-polynomial.
pub fn character_values_of(
    lp: &LPolynomial,
    chi: &DirichletCharacter,
    x: u32,
    primes_by_degree: &[Vec<Poly>],
) -> Result<CharacterValues> {
    let half = Complex64::new(0.5, 0.0);
    Ok(CharacterValues {
        l_abs: lp.eval(half).norm(),
        log_p_abs: p_x_log(chi, half, x, primes_by_degree)?.re,
    })
}

pub fn character_values(
    chi: &DirichletCharacter,
    x: u32,
    primes_by_degree: &[Vec<Poly>],
) -> Result<CharacterValues> {
    character_values_of(&l_coeffs(chi)?, chi, x, primes_by_degree)
}

/// Sum in a fixed pairwise tree, independent of how the inputs were produced.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n if n <= 8 => xs.iter().sum(),
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

fn mean_of(values: &[CharacterValues], f: impl Fn(&CharacterValues) -> f64) -> f64 {
    let terms: Vec<f64> = values.iter().map(f).collect();
    pairwise_sum(&terms) / values.len() as f64
}

/// Average of the `2k`-th power of the chosen quantity.
///
/// For [`MomentKind::Split`] this is `L`-moment / (`P`-moment * `Z`-moment).
pub fn moment_average(values: &[CharacterValues], k: u32, kind: MomentKind) -> f64 {
    match kind {
        MomentKind::L => mean_of(values, |v| v.l_power(k)),
        MomentKind::P => mean_of(values, |v| v.p_power(k)),
        MomentKind::Z => mean_of(values, |v| v.z_power(k)),
        MomentKind::Split => {
            let l = moment_average(values, k, MomentKind::L);
            let p = moment_average(values, k, MomentKind::P);
            let z = moment_average(values, k, MomentKind::Z);
            l / (p * z)
        }
    }
}

/// One empirical moment with its predicted main term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub q: u32,
    /// Modulus in text form.
    pub modulus: String,
    pub deg_r: usize,
    pub k: u32,
    pub x: u32,
    pub kind: MomentKind,
    pub empirical: f64,
    pub predicted: f64,
    pub prediction: Option<Prediction>,
    /// `empirical / predicted`, or NaN when nothing is predicted.
    pub ratio: f64,
    pub phi_star: u64,
    /// `(X, deg R)` lies in the range the prediction is stated for.
    pub in_regime: bool,
    /// Acceptance tolerance on `ratio`, when one applies.
    pub tolerance: Option<f64>,
    /// Filled in by callers that time the run.
    pub wall_time_secs: f64,
}

impl MomentReport {
    pub fn regime_flag(&self) -> &'static str {
        if self.in_regime {
            "in-regime"
        } else {
            "out-of-regime"
        }
    }
}

/// The prediction each kind is compared against.
pub fn prediction_for(kind: MomentKind, k: u32) -> Option<Prediction> {
    match (kind, k) {
        (MomentKind::L, _) => Some(Prediction::L),
        (MomentKind::P, _) => Some(Prediction::Euler),
        (MomentKind::Z, 1) => Some(Prediction::Hadamard2),
        (MomentKind::Z, 2) => Some(Prediction::Hadamard4),
        (MomentKind::Z, _) => Some(Prediction::Hadamard),
        (MomentKind::Split, _) => None,
    }
}

/// Build a report from per-character values (one per primitive character).
pub fn moment_report(
    r: &Poly,
    k: u32,
    kind: MomentKind,
    x: u32,
    values: &[CharacterValues],
) -> Result<MomentReport> {
    let count = phi_star(r)?;
    if count == 0 {
        return Err(Error::NoPrimitiveCharacters);
    }
    if values.len() as u128 != count {
        return Err(Error::InvalidArgument(alloc::format!(
            "expected {count} character values, got {}",
            values.len()
        )));
    }
    let empirical = moment_average(values, k, kind);
    let prediction = prediction_for(kind, k);
    let (predicted, in_regime) = match prediction {
        Some(which) => {
            let p = predicted_moment(r, k, x, which)?;
            (p.value, p.in_regime)
        }
        None => {
            let log_q = libm::log(r.q() as f64);
            (1.0, x as f64 <= libm::log(r.deg() as f64) / log_q)
        }
    };
    Ok(MomentReport {
        q: r.q(),
        modulus: r.to_text(),
        deg_r: r.deg(),
        k,
        x,
        kind,
        empirical,
        predicted,
        prediction,
        ratio: if predicted != 0.0 { empirical / predicted } else { f64::NAN },
        phi_star: count as u64,
        in_regime,
        tolerance: None,
        wall_time_secs: 0.0,
    })
}

/// `|L(1/2)|` and `log |P_X(1/2)|` for every primitive character, in index order.
pub fn primitive_values(r: &Poly, x: u32) -> Result<Vec<CharacterValues>> {
    if phi_star(r)? == 0 {
        return Err(Error::NoPrimitiveCharacters);
    }
    let group = unit_group(r)?;
    let primes = primes_up_to_degree(r.field(), x as usize);
    primitive_characters(&group)
        .iter()
        .map(|chi| character_values(chi, x, &primes))
        .collect()
}

pub fn empirical_moment(r: &Poly, k: u32, kind: MomentKind, x: u32) -> Result<MomentReport> {
    let values = primitive_values(r, x)?;
    moment_report(r, k, kind, x, &values)
}

pub fn splitting_ratio(r: &Poly, k: u32, x: u32) -> Result<MomentReport> {
    empirical_moment(r, k, MomentKind::Split, x)
}
