//! Identity checks shared by the subcommands and the acceptance tests.

use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::Result;
use ffhybrid_core::chargroup::{primitive_characters, UnitGroup};
use ffhybrid_core::hybrid::{explicit_formula_sides, z_x_from_zeros_of, z_x_quotient, BumpProfile};
use ffhybrid_core::lfunc::{l_coeffs, short_sum_sides};
use ffhybrid_core::moments::{
    compose_triple, count_coprime_splittings, count_coprime_splittings_brute, cross_coprime,
    decompose_triple_product, gamma_identity_check, SplittingSides,
};
use ffhybrid_core::polyring::{monic_polys, primes_up_to_degree, FiniteField, Poly};
use ffhybrid_core::Error;
use ffhybrid_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// `|a - b| / |a|`.
pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm()
}

/// The hybrid product, explicit formula and short-sum identities for one
/// primitive character. A side is `None` when `s` is a zero of `L`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterIdentities {
    pub index: u64,
    pub exponents: Vec<u64>,
    pub even: bool,
    pub l_value: Complex64,
    pub z_quotient: Option<Complex64>,
    pub z_zeros: Option<Complex64>,
    pub perturbed: bool,
    pub hybrid_delta: Option<f64>,
    pub explicit_lhs: Option<Complex64>,
    pub explicit_rhs: Option<Complex64>,
    pub explicit_delta: Option<f64>,
    pub short_lhs: f64,
    pub short_rhs: f64,
    /// `|lhs - rhs| / max(|lhs|, 1)`.
    pub short_delta: f64,
}

/// Below this `|L(s)|` the point counts as a zero.
pub const ZERO_CUTOFF: f64 = 1e-10;

fn skip_at_zero<T>(r: ffhybrid_core::Result<T>) -> ffhybrid_core::Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::AtZero) | Err(Error::Pole) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Every identity for every primitive character of the group, in index order.
pub fn character_identities(
    group: &Arc<UnitGroup>,
    s: Complex64,
    bump: &BumpProfile,
    m: usize,
) -> Result<Vec<CharacterIdentities>> {
    let primes = primes_up_to_degree(group.field(), bump.x as usize);
    let chars = primitive_characters(group);
    let out = chars
        .par_iter()
        .map(|chi| -> ffhybrid_core::Result<CharacterIdentities> {
            let lp = l_coeffs(chi)?;
            let l_value = lp.eval(s);
            let at_zero = l_value.norm() < ZERO_CUTOFF;
            let (z_quotient, zs) = if at_zero {
                (None, None)
            } else {
                (
                    Some(z_x_quotient(chi, s, bump.x, &primes)?),
                    skip_at_zero(z_x_from_zeros_of(&lp, s, bump, m))?,
                )
            };
            let ef = if at_zero {
                None
            } else {
                skip_at_zero(explicit_formula_sides(chi, s, bump, m, &primes))?
            };
            let short = short_sum_sides(chi)?;
            let hybrid_delta = match (z_quotient, zs) {
                (Some(a), Some(b)) => Some(rel(a, b.value)),
                _ => None,
            };
            Ok(CharacterIdentities {
                index: chi.index(),
                exponents: chi.exponents().to_vec(),
                even: chi.is_even(),
                l_value,
                z_quotient,
                z_zeros: zs.map(|z| z.value),
                perturbed: zs.is_some_and(|z| z.perturbed),
                hybrid_delta,
                explicit_lhs: ef.map(|e| e.lhs),
                explicit_rhs: ef.map(|e| e.rhs),
                explicit_delta: ef.map(|e| rel(e.lhs, e.rhs)),
                short_lhs: short.lhs,
                short_rhs: short.rhs,
                short_delta: (short.lhs - short.rhs).abs() / short.lhs.abs().max(1.0),
            })
        })
        .collect::<ffhybrid_core::Result<Vec<_>>>()?;
    Ok(out)
}

/// Outcome of an exhaustive or sampled check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub checked: u64,
    /// Up to 20 failing cases in text form.
    pub failures: Vec<String>,
    pub failure_count: u64,
}

impl SuiteResult {
    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < 20 {
                self.failures.push(case());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0 && self.checked > 0
    }
}

fn monic_up_to(field: &FiniteField, deg: usize) -> Vec<Poly> {
    (0..=deg).flat_map(|d| monic_polys(field, d).collect::<Vec<_>>()).collect()
}

/// Decompose and recompose every pair of triples `(A_i), (B_i)` of monic
/// polynomials of degree `<= max_deg` with `A1 A2 A3 = B1 B2 B3`.
pub fn triple_round_trip(field: &FiniteField, max_deg: usize) -> Result<SuiteResult> {
    let polys = monic_up_to(field, max_deg);
    let n = polys.len();
    let mut by_product: BTreeMap<Poly, Vec<[usize; 3]>> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let prod = &(&polys[i] * &polys[j]) * &polys[k];
                by_product.entry(prod).or_default().push([i, j, k]);
            }
        }
    }
    let mut res = SuiteResult::default();
    for triples in by_product.values() {
        for ai in triples {
            for bi in triples {
                let a = [&polys[ai[0]], &polys[ai[1]], &polys[ai[2]]];
                let b = [&polys[bi[0]], &polys[bi[1]], &polys[bi[2]]];
                let d = decompose_triple_product(a, b)?;
                let (ra, rb) = compose_triple(&d);
                let ok = cross_coprime(&d)?
                    && ra.iter().zip(a).all(|(x, y)| x == y)
                    && rb.iter().zip(b).all(|(x, y)| x == y);
                res.record(ok, || {
                    let t: Vec<String> = a.iter().chain(&b).map(|p| p.to_text()).collect();
                    t.join(" ")
                });
            }
        }
    }
    Ok(res)
}

/// Closed-form coprime-splitting counts against enumeration on random
/// admissible instances built from primes of degree `<= 2`.
pub fn splitting_counts(field: &FiniteField, samples: usize, seed: u64) -> Result<SuiteResult> {
    let primes: Vec<Poly> = primes_up_to_degree(field, 2).into_iter().flatten().collect();
    let one = Poly::one(field);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |max_factors: usize, rng: &mut ChaCha8Rng| {
        let mut acc = one.clone();
        for _ in 0..rng.gen_range(0..=max_factors) {
            acc = &acc * &primes[rng.gen_range(0..primes.len())];
        }
        acc
    };
    let mut res = SuiteResult::default();
    let mut attempts = 0;
    while (res.checked as usize) < samples && attempts < 1000 * samples.max(1) {
        attempts += 1;
        let sides = SplittingSides {
            v13: pick(2, &mut rng),
            v23: pick(2, &mut rng),
            v31: pick(2, &mut rng),
            v32: pick(2, &mut rng),
        };
        let v = pick(4, &mut rng);
        if !sides.admissible(&v)? {
            continue;
        }
        let closed = count_coprime_splittings(&v, &sides)?;
        let brute = count_coprime_splittings_brute(&v, &sides)?;
        res.record(closed == brute, || {
            format!(
                "V={} V13={} V23={} V31={} V32={}: closed {closed}, enumerated {brute}",
                v.to_text(),
                sides.v13.to_text(),
                sides.v23.to_text(),
                sides.v31.to_text(),
                sides.v32.to_text()
            )
        });
    }
    Ok(res)
}

/// The gamma-weight divisor identity for every monic `B` of degree `<= max_deg`.
pub fn gamma_identity(field: &FiniteField, max_deg: usize) -> Result<SuiteResult> {
    let mut res = SuiteResult::default();
    for b in monic_up_to(field, max_deg) {
        let (lhs, rhs) = gamma_identity_check(&b)?;
        res.record(lhs == rhs, || format!("{}: {lhs} != {rhs}", b.to_text()));
    }
    Ok(res)
}
