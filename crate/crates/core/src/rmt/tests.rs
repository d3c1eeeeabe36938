use alloc::vec::Vec;
use core::f64::consts::PI;

use super::*;
use crate::hybrid::BumpShape;

/// `E|Z|^{2k} = prod_{j<N} j! (j+2k)! / (j+k)!^2` over `U(N)`.
fn keating_snaith(n: usize, k: u32) -> f64 {
    let fact = |m: usize| (1..=m).map(|i| i as f64).product::<f64>();
    let k = k as usize;
    (0..n)
        .map(|j| fact(j) * fact(j + 2 * k) / (fact(j + k) * fact(j + k)))
        .product()
}

#[test]
fn samples_are_unitary_and_sorted() {
    for n in [1, 2, 5, 20] {
        for stream in 0..5 {
            let s = sample_haar_unitary(n, 9, stream).unwrap();
            assert!(s.residual < UNITARITY_TOL);
            assert_eq!(s.phases.len(), n);
            assert!(s.phases.windows(2).all(|w| w[0] <= w[1]));
            assert!(s.phases.iter().all(|&t| t > -PI && t <= PI));
        }
    }
    assert!(sample_haar_unitary(0, 1, 0).is_err());
}

#[test]
fn sampling_is_deterministic_per_stream() {
    let a = sample_haar_unitary(6, 42, 17).unwrap();
    let b = sample_haar_unitary(6, 42, 17).unwrap();
    assert_eq!(a, b);
    let c = sample_haar_unitary(6, 42, 18).unwrap();
    assert_ne!(a.phases, c.phases);
    let x = char_poly_moment(4, 1, 0.3, 200, 5).unwrap();
    let y = char_poly_moment(4, 1, 0.3, 200, 5).unwrap();
    assert_eq!(x.mean.to_bits(), y.mean.to_bits());
}

#[test]
fn one_by_one_phase_is_uniform() {
    let n = 10_000;
    let mut xs: Vec<f64> = (0..n)
        .map(|j| sample_haar_unitary(1, 2, j).unwrap().phases[0])
        .collect();
    xs.sort_by(f64::total_cmp);
    // Kolmogorov–Smirnov distance against the uniform CDF
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = (x + PI) / (2.0 * PI);
        d = d.max((f - i as f64 / n as f64).abs()).max(((i + 1) as f64 / n as f64 - f).abs());
    }
    assert!(d < 1.628 / libm::sqrt(n as f64), "KS distance {d}");
}

#[test]
fn lowest_phase_of_two_by_two_matches_density() {
    // P(theta_1 <= a) = (2 pi^2 - t^2/2 + 1 - cos t) / (2 pi^2), t = pi - a
    let cdf = |a: f64| {
        let t = PI - a;
        (2.0 * PI * PI - 0.5 * t * t + 1.0 - libm::cos(t)) / (2.0 * PI * PI)
    };
    let n = 10_000;
    let bins = 20;
    let mut counts = alloc::vec![0usize; bins];
    for j in 0..n {
        let t = sample_haar_unitary(2, 4, j).unwrap().phases[0];
        let b = (((t + PI) / (2.0 * PI)) * bins as f64) as usize;
        counts[b.min(bins - 1)] += 1;
    }
    let mut chi2 = 0.0;
    for (b, &c) in counts.iter().enumerate() {
        let lo = -PI + 2.0 * PI * b as f64 / bins as f64;
        let hi = lo + 2.0 * PI / bins as f64;
        let expect = n as f64 * (cdf(hi) - cdf(lo));
        if expect > 0.0 {
            chi2 += (c as f64 - expect).powi(2) / expect;
        }
    }
    // 99th percentile of chi^2 with 19 degrees of freedom
    assert!(chi2 < 36.19, "chi2 = {chi2}");
}

#[test]
fn trace_has_mean_zero() {
    let n = 10_000;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let s = sample_haar_unitary(5, 6, j).unwrap();
        sum += s.phases.iter().map(|&t| Complex64::from_polar(1.0, t)).sum::<Complex64>();
    }
    let mean = sum / n as f64;
    // E|tr U|^2 = 1, so each component has variance 1/2
    let sigma = libm::sqrt(0.5 / n as f64);
    assert!(mean.re.abs() < 3.0 * sigma && mean.im.abs() < 3.0 * sigma, "{mean}");
}

#[test]
fn exact_small_n_moments() {
    for n in 1..=3 {
        for k in 0..=3 {
            let e = cue_moment_exact(n, k).unwrap();
            let ks = keating_snaith(n, k);
            assert!((e - ks).abs() < 1e-10 * ks, "N={n} k={k}: {e} vs {ks}");
        }
    }
    assert!((cue_moment_exact(1, 1).unwrap() - 2.0).abs() < 1e-12);
    assert!(cue_moment_exact(4, 1).is_err());
}

#[test]
fn monte_carlo_matches_small_n_oracle() {
    for n in 1..=3 {
        let exact = cue_moment_exact(n, 1).unwrap();
        let est = char_poly_moment(n, 1, 0.0, 20_000, 8).unwrap();
        assert!((est.mean - exact).abs() < 4.0 * est.std_err, "N={n}: {est:?} vs {exact}");
    }
    let zero = char_poly_moment(7, 0, 1.0, 3, 1).unwrap();
    assert_eq!(zero.mean, 1.0);
    assert_eq!(zero.std_err, 0.0);
}

#[test]
fn moment_does_not_depend_on_theta() {
    let a = char_poly_moment(6, 1, 0.0, 4000, 21).unwrap();
    let b = char_poly_moment(6, 1, 2.0, 4000, 21).unwrap();
    let se = libm::sqrt(a.std_err.powi(2) + b.std_err.powi(2));
    assert!((a.mean - b.mean).abs() < 3.0 * se, "{a:?} {b:?}");
}

#[test]
fn cosine_integrals() {
    assert!((ci(1.0).unwrap() - 0.337_403_922_9).abs() < 1e-10);
    assert!(ci(50.0).unwrap().abs() < 0.03);
    for y in [0.5, 1.0, 2.0] {
        let re = crate::special::e1(Complex64::new(0.0, y)).unwrap().re;
        assert!((re + ci(y).unwrap()).abs() < 1e-8);
    }
}

#[test]
fn phase_kernel_matches_direct_sum() {
    for (q, x, shape) in [(3, 1, BumpShape::Standard), (2, 2, BumpShape::Skewed), (5, 1, BumpShape::Standard)] {
        let bump = BumpProfile::with_shape(q, x, shape, 32);
        let kernel = PhaseKernel::new(&bump, 6);
        for theta in [0.01, 0.4, -1.3, 3.0] {
            let fast = kernel.periodic_ci_integral(theta).unwrap();
            let mut slow = 0.0;
            for m in -6i64..=6 {
                let c = (theta + 2.0 * PI * m as f64).abs() * kernel.scale;
                slow += ci_integral_direct(&bump, c).unwrap();
            }
            assert!((fast - slow).abs() < 1e-9 * (1.0 + slow.abs()), "{q} {x} {theta}: {fast} {slow}");
        }
    }
}

#[test]
fn hadamard_average_basics() {
    let bump = BumpProfile::new(3, 1);
    let r = hadamard_rmt_average(8, &bump, 0, 5, 10, 1).unwrap();
    assert_eq!(r.estimate.mean, 1.0);
    assert_eq!(r.surrogate, 1.0);
    let s = hadamard_surrogate(20, 3, 1, 1);
    assert!((s - 20.0 / (libm::log(3.0) * crate::EXP_EULER_GAMMA)).abs() < 1e-12);
}
