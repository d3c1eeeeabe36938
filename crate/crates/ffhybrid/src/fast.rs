//! L-polynomials for every character of a modulus at once.
//!
//! `sum_{deg A = n} chi_a(A)` is, as a function of the character index `a`,
//! the Fourier transform over the unit group of the histogram of exponent
//! vectors of monic `A` of degree `n`. The group is a product of cyclic
//! factors, so the transform is a multi-dimensional DFT.

use std::sync::Arc;

use ffhybrid_core::chargroup::{DirichletCharacter, UnitGroup};
use ffhybrid_core::lfunc::LPolynomial;
use ffhybrid_core::Complex64;
use rustfft::{FftDirection, FftPlanner};

/// Per-degree character sums for all `phi(R)` characters, indexed
/// `[n][character index]`.
pub fn character_sums(group: &UnitGroup) -> Vec<Vec<Complex64>> {
    let q = group.field().q() as usize;
    let d = group.modulus().deg();
    let orders: Vec<usize> = group.orders().iter().map(|&o| o as usize).collect();
    let size = group.order() as usize;
    let mut strides = Vec::with_capacity(orders.len());
    let mut s = 1;
    for &o in &orders {
        strides.push(s);
        s *= o;
    }
    let mut planner = FftPlanner::new();
    let plans: Vec<_> = orders
        .iter()
        .map(|&o| planner.plan_fft(o, FftDirection::Inverse))
        .collect();

    let mut out = Vec::with_capacity(d);
    let mut start = 1usize;
    for _ in 0..d {
        let mut grid = vec![Complex64::new(0.0, 0.0); size];
        for r in start..2 * start {
            if let Some(logs) = group.log_index(r) {
                let idx: usize = logs.iter().zip(&strides).map(|(&e, &s)| e as usize * s).sum();
                grid[idx] += 1.0;
            }
        }
        for ((&o, &stride), plan) in orders.iter().zip(&strides).zip(&plans) {
            if o == 1 {
                continue;
            }
            let mut line = vec![Complex64::new(0.0, 0.0); o];
            let block = stride * o;
            for base in (0..size).step_by(block) {
                for off in 0..stride {
                    for (j, v) in line.iter_mut().enumerate() {
                        *v = grid[base + off + j * stride];
                    }
                    plan.process(&mut line);
                    for (j, v) in line.iter().enumerate() {
                        grid[base + off + j * stride] = *v;
                    }
                }
            }
        }
        out.push(grid);
        start *= q;
    }
    out
}

/// L-polynomials of the primitive characters, in character-index order.
pub fn primitive_l_polynomials(group: &Arc<UnitGroup>) -> Vec<(DirichletCharacter, LPolynomial)> {
    let sums = character_sums(group);
    (1..group.order())
        .map(|i| DirichletCharacter::from_index(group, i))
        .filter(|chi| chi.is_primitive())
        .map(|chi| {
            let i = chi.index() as usize;
            let lp = LPolynomial {
                q: group.field().q(),
                modulus: group.modulus().clone(),
                exponents: chi.exponents().to_vec(),
                coeffs: sums.iter().map(|row| row[i]).collect(),
            };
            (chi, lp)
        })
        .collect()
}
