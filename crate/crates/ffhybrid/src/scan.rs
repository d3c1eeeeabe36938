//! Moment scans over families of moduli.

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Result};
use ffhybrid_core::chargroup::{phi_star, UnitGroup};
use ffhybrid_core::moments::{character_values_of, moment_report, primorial, CharacterValues, MomentKind, MomentReport};
use ffhybrid_core::polyring::{monic_polys, primes_of_degree, primes_up_to_degree, FiniteField, Poly};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{cache, fast};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModuliSet {
    /// Every monic modulus of each degree.
    All,
    /// Monic primes of each degree.
    Primes,
    /// Products of the first n monic primes in degree order.
    Primorials,
    /// Moduli given explicitly with `--list`.
    List,
}

/// Moduli with `deg_min <= deg R <= deg_max` from the chosen family, skipping
/// those without primitive characters.
pub fn select_moduli(
    field: &FiniteField,
    deg_min: usize,
    deg_max: usize,
    set: ModuliSet,
    list: &[Poly],
) -> Result<Vec<Poly>> {
    let degs = deg_min..=deg_max;
    let mut out: Vec<Poly> = match set {
        ModuliSet::All => degs.flat_map(|d| monic_polys(field, d).collect::<Vec<_>>()).collect(),
        ModuliSet::Primes => {
            let mut v = Vec::new();
            for d in degs {
                v.extend(primes_of_degree(field, d)?);
            }
            v
        }
        ModuliSet::Primorials => {
            let mut v = Vec::new();
            for n in 1.. {
                let rec = primorial(field, n)?;
                if rec.r_n.deg() > deg_max {
                    break;
                }
                if rec.r_n.deg() >= deg_min {
                    v.push(rec.r_n);
                }
            }
            v
        }
        ModuliSet::List => list.iter().filter(|r| degs.contains(&r.deg())).cloned().collect(),
    };
    let before = out.len();
    out.retain(|r| phi_star(r).map_or(false, |n| n > 0));
    if out.len() < before {
        log::info!("skipped {} moduli without primitive characters", before - out.len());
    }
    Ok(out)
}

/// `|L(1/2)|` and `log |P_X(1/2)|` for every primitive character, in index
/// order, using the transform for the L-polynomials.
pub fn primitive_values(group: &Arc<UnitGroup>, x: u32) -> Result<Vec<CharacterValues>> {
    let primes = primes_up_to_degree(group.field(), x as usize);
    let lps = fast::primitive_l_polynomials(group);
    let values = lps
        .par_iter()
        .map(|(chi, lp)| character_values_of(lp, chi, x, &primes))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(values)
}

/// One report per `(k, kind)` for modulus `r`.
pub fn scan_modulus(
    r: &Poly,
    ks: &[u32],
    kinds: &[MomentKind],
    x: u32,
    cache_dir: Option<&Path>,
) -> Result<Vec<MomentReport>> {
    let start = Instant::now();
    let group = cache::unit_group(r, cache_dir)?;
    let values = primitive_values(&group, x)?;
    if values.is_empty() {
        bail!("{} has no primitive characters", r.to_text());
    }
    let mut out = Vec::with_capacity(ks.len() * kinds.len());
    for &k in ks {
        for &kind in kinds {
            out.push(moment_report(r, k, kind, x, &values)?);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    for rep in &mut out {
        rep.wall_time_secs = secs;
    }
    Ok(out)
}

pub const CSV_COLUMNS: [&str; 11] = [
    "q", "R", "degR", "k", "X", "kind", "empirical", "predicted", "ratio", "phi_star", "regime_flag",
];

pub fn csv_row(rep: &MomentReport) -> Vec<String> {
    vec![
        rep.q.to_string(),
        rep.modulus.clone(),
        rep.deg_r.to_string(),
        rep.k.to_string(),
        rep.x.to_string(),
        rep.kind.label().to_string(),
        format!("{:e}", rep.empirical),
        format!("{:e}", rep.predicted),
        format!("{:e}", rep.ratio),
        rep.phi_star.to_string(),
        rep.regime_flag().to_string(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use ffhybrid_core::moments::primitive_values as direct_values;

    #[test]
    fn matches_direct_computation() {
        let r = Poly::parse("q=3:[2,1,0,1]").unwrap();
        let g = cache::unit_group(&r, None).unwrap();
        for x in [1, 2] {
            let a = primitive_values(&g, x).unwrap();
            let b = direct_values(&r, x).unwrap();
            assert_eq!(a.len(), b.len());
            for (u, v) in a.iter().zip(&b) {
                assert!((u.l_abs - v.l_abs).abs() < 1e-9);
                assert_eq!(u.log_p_abs, v.log_p_abs);
            }
        }
    }

    #[test]
    fn selections() {
        let f = FiniteField::new(2).unwrap();
        let all = select_moduli(&f, 2, 2, ModuliSet::All, &[]).unwrap();
        // T(T+1) has no primitive characters over F_2
        assert_eq!(all.len(), 3);
        // the degree-one primes have phi(P) = 1, hence no primitive characters
        assert_eq!(select_moduli(&f, 1, 4, ModuliSet::Primes, &[]).unwrap().len(), 1 + 2 + 3);
        let prim = select_moduli(&f, 1, 6, ModuliSet::Primorials, &[]).unwrap();
        assert!(prim.iter().all(|r| r.deg() <= 6));
        assert!(select_moduli(&f, 3, 2, ModuliSet::Primes, &[]).unwrap().is_empty());
    }
}
