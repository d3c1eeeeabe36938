//! Unit groups of `F_q[T]/R` and their Dirichlet characters.

mod character;
mod group;

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use character::{root_of_unity, roots_of_unity, CharValue, DirichletCharacter, ZERO_VALUE};
pub use group::{UnitGroup, UnitGroupData, NOT_A_UNIT};

use crate::polyring::{factorize, phi_of, Factorization, Poly};
use crate::{Error, Result};

/// Build `(F_q[T]/R)^*` behind a shared handle.
pub fn unit_group(r: &Poly) -> Result<Arc<UnitGroup>> {
    UnitGroup::new(r).map(Arc::new)
}

/// All `phi(R)` characters, in mixed-radix order of exponent vectors; index 0 is trivial.
pub fn all_characters(group: &Arc<UnitGroup>) -> Vec<DirichletCharacter> {
    (0..group.order())
        .map(|i| DirichletCharacter::from_index(group, i))
        .collect()
}

/// Primitive characters modulo `R`.
pub fn primitive_characters(group: &Arc<UnitGroup>) -> Vec<DirichletCharacter> {
    all_characters(group)
        .into_iter()
        .filter(|c| c.is_primitive())
        .collect()
}

/// Number of primitive characters, `sum_{EF=R} mu(E) phi(F)`.
pub fn phi_star(r: &Poly) -> Result<u128> {
    check_modulus(r)?;
    let fac = factorize(r)?;
    let q = r.q() as u128;
    Ok(fac
        .primes
        .iter()
        .map(|(p, e)| {
            let n = q.pow(p.deg() as u32);
            // phi(P^e) - phi(P^{e-1})
            let top = n.pow(*e) - n.pow(*e - 1);
            let below = if *e == 1 { 1 } else { n.pow(*e - 1) - n.pow(*e - 2) };
            top - below
        })
        .product())
}

fn check_modulus(r: &Poly) -> Result<()> {
    if r.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !r.is_monic() {
        return Err(Error::NotMonic);
    }
    if r.deg() == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(())
}

/// Both sides of the primitive orthogonality relation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalitySum {
    /// `sum* chi(A) conj(chi(B))`, summed character by character.
    pub direct: Complex64,
    /// The divisor-sum evaluation.
    pub closed_form: f64,
}

/// `sum_{EF=R, F | D} mu(E) phi(F)` over squarefree `E`.
fn divisor_sum(r: &Poly, fac: &Factorization, d: &Poly) -> Result<i128> {
    let q = r.q();
    let k = fac.primes.len();
    let mut total = 0i128;
    for mask in 0u32..(1 << k) {
        let mut f_fac = fac.clone();
        let mut f = r.clone();
        for (i, (p, _)) in fac.primes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                f = f.div_exact(p)?;
                f_fac.primes[i].1 -= 1;
            }
        }
        if !f.divides(d)? {
            continue;
        }
        f_fac.primes.retain(|&(_, e)| e > 0);
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        total += sign * phi_of(q, &f_fac) as i128;
    }
    Ok(total)
}

/// Direct and closed-form values of `sum* chi(A) conj(chi(B))`, over primitive
/// characters, or over primitive even characters when `even_only`.
pub fn orthogonality_sum(
    group: &Arc<UnitGroup>,
    a: &Poly,
    b: &Poly,
    even_only: bool,
) -> Result<OrthogonalitySum> {
    let r = group.modulus();
    let ra = group.residue_index(a)?;
    let rb = group.residue_index(b)?;
    let n = group.exponent();
    let mut hist = alloc::vec![0u64; n as usize];
    for chi in all_characters(group) {
        if !chi.is_primitive() || (even_only && !chi.is_even()) {
            continue;
        }
        if let (Some(ka), Some(kb)) = (chi.rotation_at(ra), chi.rotation_at(rb)) {
            hist[((ka + n - kb) % n) as usize] += 1;
        }
    }
    let direct = hist
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| root_of_unity(k as u64, n) * c as f64)
        .fold(Complex64::new(0.0, 0.0), |acc, z| acc + z);

    let units = group.log_index(ra).is_some() && group.log_index(rb).is_some();
    let closed_form = if !units {
        0.0
    } else {
        let fac = factorize(r)?;
        if even_only {
            let field = group.field();
            let mut total = 0i128;
            for c in 1..field.q() {
                let d = a.sub(&b.scale(c))?;
                total += divisor_sum(r, &fac, &d)?;
            }
            total as f64 / (field.q() - 1) as f64
        } else {
            divisor_sum(r, &fac, &a.sub(b)?)? as f64
        }
    };
    Ok(OrthogonalitySum {
        direct,
        closed_form,
    })
}
