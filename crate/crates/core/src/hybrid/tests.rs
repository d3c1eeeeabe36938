use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::*;
use crate::chargroup::{all_characters, primitive_characters, unit_group};
use crate::lfunc::{l_coeffs, l_eval};
use crate::polyring::{divisor_k, is_irreducible, monic_polys, primes_up_to_degree, FiniteField, Poly};

fn p(s: &str) -> Poly {
    Poly::parse(s).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn bump_normalisation() {
    for (q, x) in [(2, 1), (3, 1), (3, 2), (5, 3)] {
        for shape in [BumpShape::Standard, BumpShape::Skewed] {
            let b = BumpProfile::with_shape(q, x, shape, 32);
            assert!((b.total_mass() - 1.0).abs() < 1e-12, "{q} {x} {shape:?}");
            assert!((b.refined().total_mass() - 1.0).abs() < 1e-12);
            let (lo, hi) = b.support();
            assert_eq!(b.density(lo), 0.0);
            assert_eq!(b.density(hi + 1e-9), 0.0);
            assert!(b.density(0.5 * (lo + hi)) > 0.0);
        }
    }
}

#[test]
fn u_cap_forms_agree_and_converge() {
    let b = BumpProfile::new(3, 1);
    for z in [c(1.0, 1.0), c(0.3, -7.0), c(2.0, 40.0), c(0.0, 150.0), c(-0.5, 3.0)] {
        let direct = b.u_cap(z).unwrap();
        let parts = b.u_cap_by_parts(z).unwrap();
        assert!((direct - parts).norm() < 1e-10 * direct.norm() + 1e-15, "{z}: {direct} {parts}");
    }
    let z = c(1.0, 1.0);
    let coarse = b.u_cap(z).unwrap();
    let fine = b.refined().u_cap(z).unwrap();
    assert!((coarse - fine).norm() < 1e-8);
    for x in [5.0, 20.0, 60.0] {
        let z = c(x, 0.0);
        assert!(b.u_cap(z).unwrap().norm() <= e1(z).unwrap().re);
    }
}

#[test]
fn mellin_transform() {
    let b = BumpProfile::new(3, 1);
    assert!((b.u_mellin(c(1.0, 0.0)) - 1.0).norm() < 1e-12);
    let s = c(0.4, 7.0);
    assert!((b.u_mellin(s.conj()) - b.u_mellin(s).conj()).norm() < 1e-13);
    let mags: Vec<f64> = [10.0, 50.0, 250.0]
        .iter()
        .map(|&t| b.u_mellin(c(1.0, t)).norm())
        .collect();
    assert!(mags[0] > mags[1] && mags[1] > mags[2], "{mags:?}");
}

#[test]
fn partial_euler_product() {
    let r = p("q=3:[0,0,1]");
    let g = unit_group(&r).unwrap();
    let field = r.field().clone();
    let primes = primes_up_to_degree(&field, 4);
    let half = c(0.5, 0.0);
    for chi in all_characters(&g).iter().skip(1) {
        let a = chi.evaluate_complex(&p("q=3:[1,1]")).unwrap();
        let b = chi.evaluate_complex(&p("q=3:[2,1]")).unwrap();
        let expect = ((a + b) / libm::sqrt(3.0)).exp();
        let got = p_x_eval(chi, half, 1, &primes).unwrap();
        assert!((got - expect).norm() < 1e-14);
        let s = c(0.7, 2.1);
        let lhs = p_x_eval(&chi.conj(), s, 3, &primes).unwrap();
        let rhs = p_x_eval(chi, s.conj(), 3, &primes).unwrap().conj();
        assert!((lhs - rhs).norm() < 1e-12);
    }
    // every degree-1 prime divides R: empty sum at X = 1
    let r = p("q=2:[0,1,1]");
    let g = unit_group(&r).unwrap();
    let primes = primes_up_to_degree(r.field(), 2);
    for chi in all_characters(&g) {
        assert_eq!(p_x_eval(&chi, half, 1, &primes).unwrap(), c(1.0, 0.0));
    }
}

#[test]
fn coefficient_examples() {
    let a2 = CoefficientSystem::new(CoeffKind::AlphaK(2), 4);
    let a1 = CoefficientSystem::new(CoeffKind::AlphaK(1), 4);
    let beta = CoefficientSystem::new(CoeffKind::Beta, 4);
    let am1 = CoefficientSystem::new(CoeffKind::AlphaMinus1, 4);
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    assert_eq!(a2.local(1, 1), r(2, 1));
    assert_eq!(a2.local(4, 1), r(2, 1));
    assert_eq!(a1.local(3, 2), r(1, 2));
    assert_eq!(a1.local(5, 1), r(0, 1));
    assert_eq!(beta.local(2, 1), r(-2, 1));
    assert_eq!(beta.local(2, 2), r(1, 1));
    assert_eq!(beta.local(3, 2), r(2, 1));
    assert_eq!(beta.local(1, 3), r(0, 1));
    assert_eq!(
        (1..=4).map(|k| am1.local(3, k)).collect::<Vec<_>>(),
        vec![r(-1, 1), r(1, 2), r(-1, 2), r(0, 1)]
    );
    assert_eq!(am1.local(2, 2), r(0, 1));
    // (2/3)(1 - (-1/2)^{floor(r/2) + 1})
    for k in 0..12u32 {
        let e = r(2, 3) * (BigRational::one() - r(-1, 2).pow((k / 2 + 1) as i32));
        assert_eq!(a1.local(3, k), e);
    }
    // non-smooth
    let t5 = p("q=2:[1,0,1,0,0,1]");
    assert!(is_irreducible(&t5).unwrap());
    assert!(a1.coeff(&t5).unwrap().is_zero());
}

/// Power series with rational coefficients, truncated at `n` terms.
fn series_mul(a: &[BigRational], b: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_inv(a: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n];
    out[0] = a[0].recip();
    for m in 1..n {
        let mut acc = BigRational::zero();
        for i in 1..=m.min(a.len() - 1) {
            acc += &a[i] * &out[m - i];
        }
        out[m] = -acc * &out[0];
    }
    out
}

fn series_pow(a: &[BigRational], k: u32, n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n];
    out[0] = BigRational::one();
    for _ in 0..k {
        out = series_mul(&out, a, n);
    }
    out
}

#[test]
fn coefficients_match_euler_product_expansion() {
    let field = FiniteField::new(2).unwrap();
    let max_deg = 6;
    let n = max_deg + 1;
    let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let one_minus_x = vec![r(1, 1), r(-1, 1)];
    let one_plus_half_x2 = vec![r(1, 1), r(0, 1), r(1, 2)];
    let primes = primes_up_to_degree(&field, max_deg);
    for x in 1..=8u32 {
        for k in 1..=3u32 {
            let small = series_pow(&series_inv(&one_minus_x, n), k, n);
            let mid = series_mul(&small, &series_pow(&series_inv(&one_plus_half_x2, n), k, n), n);
            // Dirichlet convolution over monic polynomials of degree <= max_deg
            let mut coeffs: BTreeMap<u64, BigRational> = BTreeMap::new();
            coeffs.insert(1, BigRational::one());
            for (di, ps) in primes.iter().enumerate() {
                let d = di + 1;
                if d > x as usize {
                    break;
                }
                let local = if 2 * d <= x as usize { &small } else { &mid };
                for pr in ps {
                    let mut next = BTreeMap::new();
                    for (&idx, val) in &coeffs {
                        let a = Poly::from_index(&field, idx);
                        let mut pa = a.clone();
                        let mut e = 0;
                        while pa.deg() <= max_deg {
                            let v = val * &local[e];
                            *next.entry(pa.to_index()).or_insert_with(BigRational::zero) += v;
                            pa = &pa * pr;
                            e += 1;
                        }
                    }
                    coeffs = next;
                }
            }
            let sys = CoefficientSystem::new(CoeffKind::AlphaK(k), x);
            for d in 0..=max_deg {
                for a in monic_polys(&field, d) {
                    let got = sys.coeff(&a).unwrap();
                    let expect = coeffs.get(&a.to_index()).cloned().unwrap_or_else(BigRational::zero);
                    assert_eq!(got, expect, "X={x} k={k} A={a:?}");
                    let dk = BigRational::from_integer(BigInt::from(divisor_k(&a, k).unwrap()));
                    assert!(got >= BigRational::zero() && got <= dk);
                    let fac = crate::polyring::factorize(&a).unwrap();
                    let half_smooth = fac.primes.iter().all(|(p, _)| 2 * p.deg() <= x as usize);
                    let prime = fac.primes.len() == 1 && fac.primes[0].1 == 1 && a.deg() <= x as usize;
                    if half_smooth || prime {
                        assert_eq!(got, dk);
                    }
                }
            }
        }
    }
}

#[test]
fn smooth_series_truncation() {
    let r = p("q=2:[1,1,0,1]");
    let g = unit_group(&r).unwrap();
    let primes = primes_up_to_degree(r.field(), 2);
    let chi = primitive_characters(&g).remove(0);
    let half = c(0.5, 0.0);
    let sys = CoefficientSystem::new(CoeffKind::AlphaK(1), 2);
    let only_one = SmoothSeries::new(sys.clone(), &primes, 0);
    assert_eq!(only_one.eval(&chi, half).unwrap(), c(1.0, 0.0));
    let full = euler_product_eval(&sys, &chi, half, &primes).unwrap();
    let mut gaps = Vec::new();
    for max_deg in [4, 8, 16, 24] {
        let v = SmoothSeries::new(sys.clone(), &primes, max_deg).eval(&chi, half).unwrap();
        gaps.push((v - full).norm());
    }
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    assert!(gaps[3] < 1e-3);
    // finite systems are reproduced exactly once max_deg covers every term
    for kind in [CoeffKind::Beta, CoeffKind::AlphaMinus1] {
        let sys = CoefficientSystem::new(kind, 2);
        let v = SmoothSeries::new(sys.clone(), &primes, 40).eval(&chi, half).unwrap();
        let e = euler_product_eval(&sys, &chi, half, &primes).unwrap();
        assert!((v - e).norm() < 1e-12);
    }
    // p_star against the alpha_1 Euler product
    let ps = p_star_eval(&chi, half, 2, &primes).unwrap();
    assert!((ps - full).norm() < 1e-14);
}

#[test]
fn beta_series_tracks_inverse_square() {
    let field = FiniteField::new(2).unwrap();
    let primes = primes_up_to_degree(&field, 12);
    let r = p("q=2:[1,0,0,1,0,1,1,0,1]");
    let g = unit_group(&r).unwrap();
    let chars: Vec<_> = primitive_characters(&g).into_iter().step_by(9).collect();
    let half = c(0.5, 0.0);
    let gap = |x: u32| -> f64 {
        let sys = CoefficientSystem::new(CoeffKind::Beta, x);
        chars
            .iter()
            .map(|chi| {
                let pm2 = p_x_eval(chi, half, x, &primes).unwrap().powi(-2);
                let pss = euler_product_eval(&sys, chi, half, &primes).unwrap();
                rel(pm2, pss)
            })
            .sum::<f64>()
            / chars.len() as f64
    };
    let gaps: Vec<f64> = (4..=12).map(gap).collect();
    assert!(gaps[8] < gaps[0], "{gaps:?}");
}

#[test]
fn factorisation_is_exact() {
    let field = FiniteField::new(3).unwrap();
    let primes = primes_up_to_degree(&field, 2);
    let s_list = [c(0.5, 0.0), c(0.2, 3.1), c(1.7, -0.4)];
    for n in 1..=4 {
        for r in monic_polys(&field, n).step_by(3) {
            let g = unit_group(&r).unwrap();
            for chi in primitive_characters(&g) {
                for &s in &s_list {
                    for x in [1, 2] {
                        let l = l_eval(&chi, s).unwrap();
                        let prod = p_x_eval(&chi, s, x, &primes).unwrap()
                            * z_x_quotient(&chi, s, x, &primes).unwrap();
                        assert!((l - prod).norm() <= 1e-12 * l.norm().max(1e-300));
                    }
                }
            }
        }
    }
}

#[test]
fn zero_sum_matches_quotient() {
    let r = p("q=3:[0,0,1]");
    let g = unit_group(&r).unwrap();
    let primes = primes_up_to_degree(r.field(), 1);
    let bump = BumpProfile::new(3, 1);
    let half = c(0.5, 0.0);
    for chi in primitive_characters(&g) {
        let quotient = z_x_quotient(&chi, half, 1, &primes).unwrap();
        let mut errs = Vec::new();
        for m in [25, 50, 100, 200] {
            let zs = z_x_from_zeros(&chi, half, &bump, m).unwrap();
            assert!(!zs.perturbed);
            errs.push(rel(zs.value, quotient));
        }
        assert!(errs[3] < 1e-3, "{errs:?}");
        assert!(errs[3] <= errs[0], "{errs:?}");
    }
}

#[test]
fn zero_sum_with_two_bumps() {
    let r = p("q=3:[1,2,0,1]");
    let g = unit_group(&r).unwrap();
    let a = BumpProfile::new(3, 2);
    let b = BumpProfile::with_shape(3, 2, BumpShape::Skewed, 32);
    let s = c(0.5, 0.3);
    for chi in primitive_characters(&g).into_iter().take(6) {
        let za = z_x_from_zeros(&chi, s, &a, 200).unwrap().value;
        let zb = z_x_from_zeros(&chi, s, &b, 200).unwrap().value;
        assert!(rel(za, zb) < 1e-3, "{za} {zb}");
    }
}

#[test]
fn constant_l_function_hybrid() {
    let r = p("q=3:[0,1]");
    let g = unit_group(&r).unwrap();
    let chi = &all_characters(&g)[1];
    let primes = primes_up_to_degree(r.field(), 2);
    let bump = BumpProfile::new(3, 1);
    let s = c(0.5, 0.0);
    assert_eq!(z_x_from_zeros(chi, s, &bump, 10).unwrap().value, c(1.0, 0.0));
    let zq = z_x_quotient(chi, s, 2, &primes).unwrap();
    assert!((zq - p_x_eval(chi, s, 2, &primes).unwrap().inv()).norm() < 1e-15);
    let sides = explicit_formula_sides(chi, c(0.9, 0.2), &bump, 10, &primes).unwrap();
    assert_eq!(sides.lhs, c(0.0, 0.0));
    assert!(sides.rhs.norm() < 1e-15);
}

#[test]
fn explicit_formula() {
    let r = p("q=3:[0,0,0,1]");
    let g = unit_group(&r).unwrap();
    let primes = primes_up_to_degree(r.field(), 2);
    let bump = BumpProfile::new(3, 2);
    let s = c(2.0, 0.0);
    for chi in primitive_characters(&g).into_iter().take(4) {
        let sides = explicit_formula_sides(&chi, s, &bump, 400, &primes).unwrap();
        assert!(rel(sides.rhs, sides.lhs) < 1e-4, "{sides:?}");
    }
}

#[test]
fn branch_cut_and_zero_handling() {
    let r = p("q=3:[0,0,1]");
    let g = unit_group(&r).unwrap();
    let chi = primitive_characters(&g).into_iter().find(|c| !c.is_even()).unwrap();
    let lp = l_coeffs(&chi).unwrap();
    let rho = crate::lfunc::zeros_of(&lp).unwrap().s_zeros()[0];
    let bump = BumpProfile::new(3, 1);
    assert_eq!(z_x_from_zeros(&chi, rho, &bump, 5), Err(crate::Error::AtZero));
    // directly left of a zero: s - rho is negative real
    let s = rho - c(0.3, 0.0);
    let zs = z_x_from_zeros(&chi, s, &bump, 200).unwrap();
    assert!(zs.perturbed);
    let primes = primes_up_to_degree(r.field(), 1);
    let q = z_x_quotient(&chi, s, 1, &primes).unwrap();
    assert!(rel(zs.value, q) < 1e-3, "{} {q}", zs.value);
    let period = 2.0 * PI / libm::log(3.0);
    let zs2 = z_x_from_zeros(&chi, s + c(0.0, period), &bump, 200).unwrap();
    assert!(zs2.perturbed);
}
