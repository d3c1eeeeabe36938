//! Acceptance suite: every criterion runs in one test, in order, and prints a
//! single PASS/FAIL line. The summary is also written to
//! `$CARGO_TARGET_TMPDIR/acceptance-summary.txt`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use ffhybrid::{scan, suites};
use ffhybrid_core::chargroup::{orthogonality_sum, phi_star, primitive_characters, unit_group};
use ffhybrid_core::hybrid::{explicit_formula_sides, z_x_from_zeros_of, z_x_quotient, BumpProfile, CoeffKind, CoefficientSystem};
use ffhybrid_core::lfunc::{l_coeffs, rh_report_of, short_sum_sides, zeros_of};
use ffhybrid_core::moments::{
    divisor_correction, local_moment_sum, mertens_product, moment_report, MomentKind,
};
use ffhybrid_core::polyring::{is_irreducible, monic_polys, phi, prime_count, primes_of_degree, FiniteField, Poly};
use ffhybrid_core::rmt::{char_poly_moment, cue_moment_exact, hadamard_rmt_average};
use ffhybrid_core::{Complex64, EXP_EULER_GAMMA};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    /// Not gated; reported only.
    report_only: bool,
    detail: String,
}

fn gate(passed: bool, detail: String) -> Outcome {
    Outcome { passed, report_only: false, detail }
}

fn field(q: u32) -> FiniteField {
    FiniteField::new(q as u64).unwrap()
}

fn monic_up_to(f: &FiniteField, lo: usize, hi: usize) -> Vec<Poly> {
    (lo..=hi).flat_map(|d| monic_polys(f, d).collect::<Vec<_>>()).collect()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm()
}

fn exact_counting() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for q in [2, 3, 5] {
        for r in monic_up_to(&field(q), 1, 4) {
            let g = unit_group(&r).unwrap();
            let enumerated = primitive_characters(&g).len() as u128;
            if enumerated != phi_star(&r).unwrap() {
                bad.push(r.to_text());
            }
            checked += 1;
        }
    }
    gate(bad.is_empty(), format!("{checked} moduli, mismatches {bad:?}"))
}

fn orthogonality() -> Outcome {
    let f = field(3);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    let mut pairs = 0;
    for r in monic_up_to(&f, 1, 5) {
        let g = unit_group(&r).unwrap();
        let tol = 1e-9 * phi(&r).unwrap() as f64;
        for _ in 0..100 {
            let mut rand_poly = || {
                let n = rng.gen_range(0..r.deg() + 3);
                Poly::new(&f, (0..n).map(|_| rng.gen_range(0..3)).collect())
            };
            let (a, b) = (rand_poly(), rand_poly());
            for even in [false, true] {
                let o = orthogonality_sum(&g, &a, &b, even).unwrap();
                let err = (o.direct - Complex64::new(o.closed_form, 0.0)).norm();
                worst = worst.max(err / tol);
                pairs += 1;
            }
        }
    }
    gate(worst <= 1.0, format!("{pairs} sums, worst error {worst:.2e} x tolerance"))
}

fn prime_counting() -> Outcome {
    let mut bad = Vec::new();
    let mut rows = Vec::new();
    for q in [2u32, 3] {
        let f = field(q);
        for n in 1..=6usize {
            // reducible monic polynomials are exactly the products of two of lower degree
            let mut reducible = BTreeSet::new();
            for i in 1..=n / 2 {
                let lo: Vec<Poly> = monic_polys(&f, i).collect();
                let hi: Vec<Poly> = monic_polys(&f, n - i).collect();
                for a in &lo {
                    for b in &hi {
                        reducible.insert((a * b).to_index());
                    }
                }
            }
            let sieve = (q as u128).pow(n as u32) - reducible.len() as u128;
            let tested = monic_polys(&f, n).filter(|p| is_irreducible(p).unwrap()).count() as u128;
            let formula = prime_count(q, n).unwrap();
            if formula != sieve || tested != sieve {
                bad.push((q, n, formula, sieve, tested));
            }
            rows.push(format!("{q}:{n}={formula}"));
        }
    }
    gate(bad.is_empty(), format!("{} cases, mismatches {bad:?}", rows.len()))
}

const NEAR_ZERO: f64 = 1e-6;

fn short_sums() -> Outcome {
    let mut worst = 0.0f64;
    let (mut even, mut odd, mut near_zero) = (0, 0, 0);
    for r in monic_up_to(&field(3), 1, 5) {
        let g = unit_group(&r).unwrap();
        for chi in primitive_characters(&g) {
            let s = short_sum_sides(&chi).unwrap();
            // at a central zero both sides vanish and only the absolute error means anything
            if s.lhs.abs() < NEAR_ZERO {
                near_zero += 1;
            }
            let err = (s.lhs - s.rhs).abs() / s.lhs.abs().max(NEAR_ZERO);
            worst = worst.max(err);
            if chi.is_even() {
                even += 1;
            } else {
                odd += 1;
            }
        }
    }
    gate(
        worst < 1e-8 && even > 0 && odd > 0,
        format!("{even} even + {odd} odd characters ({near_zero} with |L(1/2)|^2 < {NEAR_ZERO:.0e}), worst relative error {worst:.2e}"),
    )
}

const DOUBLED_EVERY: usize = 8;

fn hybrid_identity() -> Outcome {
    let half = Complex64::new(0.5, 0.0);
    let f = field(3);
    let mut worst = [0.0f64; 2];
    let mut not_decreasing = Vec::new();
    let mut checked = 0;
    let mut at_zero = 0;
    let mut doubled = 0;
    for x in [1u32, 2] {
        let bump = BumpProfile::new(3, x);
        let primes = ffhybrid_core::polyring::primes_up_to_degree(&f, x as usize);
        for r in monic_up_to(&f, 1, 4) {
            let g = unit_group(&r).unwrap();
            for chi in primitive_characters(&g) {
                let lp = l_coeffs(&chi).unwrap();
                if lp.eval(half).norm() < suites::ZERO_CUTOFF {
                    at_zero += 1;
                    continue;
                }
                let quotient = z_x_quotient(&chi, half, x, &primes).unwrap();
                let err = |m| rel(quotient, z_x_from_zeros_of(&lp, half, &bump, m).unwrap().value);
                let e0 = err(200);
                worst[0] = worst[0].max(e0);
                checked += 1;
                // the doubled truncation on every DOUBLED_EVERY-th character
                if checked % DOUBLED_EVERY != 0 {
                    continue;
                }
                let e = [e0, err(400)];
                worst[1] = worst[1].max(e[1]);
                doubled += 1;
                // below 1e-12 both truncations sit at rounding level
                if e[1] > e[0] && e[0] > 1e-12 {
                    not_decreasing.push(format!("{} {:?} X={x}: {:.2e} -> {:.2e}", r.to_text(), chi.exponents(), e[0], e[1]));
                }
            }
        }
    }
    gate(
        worst[0] < 1e-3 && not_decreasing.is_empty(),
        format!(
            "{checked} characters ({at_zero} with L(1/2)=0 skipped), max error {:.2e} at M=200, {:.2e} at M=400 ({doubled} characters), non-decreasing {not_decreasing:?}",
            worst[0], worst[1]
        ),
    )
}

fn explicit_formula() -> Outcome {
    let f = field(3);
    let bump = BumpProfile::new(3, 2);
    let primes = ffhybrid_core::polyring::primes_up_to_degree(&f, 2);
    let all: Vec<_> = monic_polys(&f, 3)
        .flat_map(|r| primitive_characters(&unit_group(&r).unwrap()))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let s = Complex64::new(2.0, 0.0);
    for _ in 0..10 {
        let chi = &all[rng.gen_range(0..all.len())];
        let e = explicit_formula_sides(chi, s, &bump, 400, &primes).unwrap();
        worst = worst.max(rel(e.lhs, e.rhs));
    }
    gate(worst < 1e-4, format!("10 of {} characters, worst relative error {worst:.2e}", all.len()))
}

fn critical_line() -> Outcome {
    let mut other = 0;
    let mut unit = 0;
    let mut roots = 0;
    let mut dev = 0.0f64;
    for q in [2, 3] {
        for r in monic_up_to(&field(q), 2, 5) {
            let g = unit_group(&r).unwrap();
            for chi in primitive_characters(&g) {
                let rh = rh_report_of(&zeros_of(&l_coeffs(&chi).unwrap()).unwrap(), 1e-6);
                other += rh.other;
                unit += rh.unit;
                roots += rh.critical + rh.unit + rh.other;
                dev = dev.max(rh.max_critical_deviation);
            }
        }
    }
    gate(
        other == 0,
        format!("{roots} roots: {unit} on |u| = 1, {other} elsewhere, max ||u| - q^(-1/2)| = {dev:.1e}"),
    )
}

/// Truncated power series with rational coefficients.
fn series_mul(a: &[BigRational], b: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `1 / (1 + c1 x + c2 x^2)` to `n` terms.
fn series_inv2(c1: BigRational, c2: BigRational, n: usize) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = vec![BigRational::zero(); n];
    out[0] = BigRational::one();
    for m in 1..n {
        let mut v = -&c1 * &out[m - 1];
        if m >= 2 {
            v -= &c2 * &out[m - 2];
        }
        out[m] = v;
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

/// `d_k(A)` by counting ordered factorisations into monic divisors.
fn d_k(a: &Poly, k: u32, divisors: &[Poly]) -> u64 {
    if k == 1 {
        return 1;
    }
    divisors
        .iter()
        .filter(|d| d.deg() <= a.deg() && d.divides(a).unwrap())
        .map(|d| d_k(&a.div_exact(d).unwrap(), k - 1, divisors))
        .sum()
}

fn alpha_oracle() -> Outcome {
    let f = field(2);
    let max_deg = 6;
    let n = max_deg + 1;
    let primes: Vec<Vec<Poly>> = (1..=max_deg).map(|d| primes_of_degree(&f, d).unwrap()).collect();
    let monic = monic_up_to(&f, 0, max_deg);
    let mut checked = 0;
    let mut bad = Vec::new();
    for x in 1..=8u32 {
        for k in 1..=3u32 {
            // Euler factors (1 - y)^{-k} and, for X/2 < deg P <= X, also (1 + y^2/2)^{-k}
            let small = series_pow(&series_inv2(rat(-1, 1), rat(0, 1), n), k, n);
            let large = series_mul(&small, &series_pow(&series_inv2(rat(0, 1), rat(1, 2), n), k, n), n);
            let mut coeffs: BTreeMap<u64, BigRational> = BTreeMap::from([(1, BigRational::one())]);
            for (di, ps) in primes.iter().enumerate().take(x as usize) {
                let local = if 2 * (di + 1) <= x as usize { &small } else { &large };
                for p in ps {
                    let mut next = BTreeMap::new();
                    for (&idx, v) in &coeffs {
                        let mut pa = Poly::from_index(&f, idx);
                        let mut e = 0;
                        while pa.deg() <= max_deg {
                            *next.entry(pa.to_index()).or_insert_with(BigRational::zero) += v * &local[e];
                            pa = &pa * p;
                            e += 1;
                        }
                    }
                    coeffs = next;
                }
            }
            let sys = CoefficientSystem::new(CoeffKind::AlphaK(k), x);
            for a in &monic {
                let got = sys.coeff(a).unwrap();
                let expect = coeffs.get(&a.to_index()).cloned().unwrap_or_else(BigRational::zero);
                let fac = ffhybrid_core::polyring::factorize(a).unwrap();
                let smooth = fac.primes.iter().all(|(p, _)| p.deg() <= x as usize);
                let half_smooth = fac.primes.iter().all(|(p, _)| 2 * p.deg() <= x as usize);
                let prime = fac.primes.len() == 1 && fac.primes[0].1 == 1;
                let dk = BigRational::from_integer(BigInt::from(d_k(a, k, &monic)));
                let mut ok = got == expect;
                if smooth {
                    ok &= got >= BigRational::zero() && got <= dk;
                    if half_smooth || prime {
                        ok &= got == dk;
                    }
                }
                if !ok && bad.len() < 5 {
                    bad.push(format!("X={x} k={k} A={}: {got} vs {expect}", a.to_text()));
                }
                checked += 1;
            }
        }
    }
    gate(bad.is_empty(), format!("{checked} coefficients, failures {bad:?}"))
}

fn local_identities() -> Outcome {
    let mut bad = Vec::new();
    let mut primes_checked = 0;
    let one = BigRational::one();
    for q in [2u32, 3] {
        let f = field(q);
        for d in 1..=6usize {
            let x = BigRational::new(BigInt::one(), BigInt::from(q).pow(d as u32));
            let k1 = &one - &x;
            let k2 = (&one - &x).pow(3) / (&one + &x);
            for p in primes_of_degree(&f, d).unwrap() {
                let c1 = divisor_correction(&p, 1, |_| true).unwrap();
                let c2 = divisor_correction(&p, 2, |_| true).unwrap();
                if c1 != k1 || c2 != k2 {
                    bad.push(p.to_text());
                }
                primes_checked += 1;
            }
            if local_moment_sum(1, &x).recip() != k1 || local_moment_sum(2, &x).recip() != k2 {
                bad.push(format!("q={q} degree {d}"));
            }
        }
    }
    // (1 - x) sum x^m = 1 and (1 - x)^3 sum (m + 1)^2 x^m = 1 + x as formal series
    let n = 40;
    let s1: Vec<BigRational> = (0..n).map(|_| one.clone()).collect();
    let s2: Vec<BigRational> = (0..n as i64).map(|m| rat((m + 1) * (m + 1), 1)).collect();
    let lhs1 = series_mul(&[one.clone(), -one.clone()], &s1, n);
    let cube = series_pow(&[one.clone(), -one.clone()], 3, n);
    let lhs2 = series_mul(&cube, &s2, n);
    let series_ok = lhs1.iter().enumerate().all(|(i, c)| *c == if i == 0 { one.clone() } else { BigRational::zero() })
        && lhs2.iter().enumerate().all(|(i, c)| *c == if i <= 1 { one.clone() } else { BigRational::zero() });
    gate(bad.is_empty() && series_ok, format!("{primes_checked} primes, series identities {series_ok}, failures {bad:?}"))
}

fn mertens() -> Outcome {
    let ratios: Vec<f64> = (5..=15).map(|n| mertens_product(2, n).unwrap().ratio).collect();
    // independent float product from enumerated prime counts
    let f = field(2);
    let mut prod = 1.0f64;
    for d in 1..=15 {
        let c = primes_of_degree(&f, d).unwrap().len() as f64;
        prod *= (1.0 - 0.5f64.powi(d as i32)).powf(-c);
    }
    let oracle = prod / (EXP_EULER_GAMMA * 15.0);
    let last = *ratios.last().unwrap();
    let monotone = ratios.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs());
    gate(
        (last - 1.0).abs() < 0.05 && monotone && (last - oracle).abs() < 1e-12,
        format!("ratio {last:.4} at n=15 (enumeration {oracle:.4}), n=5..15: {}", fmt_list(&ratios)),
    )
}

fn fmt_list(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(", ")
}

/// Moment reports for the first few primes of each degree, q = 3, X = 1.
struct Family {
    /// `[degree][modulus]` reports for (k, kind).
    reports: BTreeMap<usize, Vec<Vec<ffhybrid_core::moments::MomentReport>>>,
    elapsed: Duration,
}

const FAMILY_PER_DEGREE: usize = 3;

fn family() -> Family {
    let start = Instant::now();
    let f = field(3);
    let mut reports = BTreeMap::new();
    for d in 4..=8usize {
        let mut per = Vec::new();
        for r in primes_of_degree(&f, d).unwrap().into_iter().take(FAMILY_PER_DEGREE) {
            let g = unit_group(&r).unwrap();
            let values = scan::primitive_values(&g, 1).unwrap();
            let mut reps = Vec::new();
            for k in [1, 2] {
                for kind in [MomentKind::L, MomentKind::Z, MomentKind::Split] {
                    reps.push(moment_report(&r, k, kind, 1, &values).unwrap());
                }
            }
            per.push(reps);
        }
        reports.insert(d, per);
    }
    Family { reports, elapsed: start.elapsed() }
}

impl Family {
    /// Mean ratio per degree, and every ratio at degree 8.
    fn ratios(&self, k: u32, kind: MomentKind) -> (Vec<f64>, Vec<f64>) {
        let pick = |reps: &Vec<ffhybrid_core::moments::MomentReport>| {
            reps.iter().find(|r| r.k == k && r.kind == kind).unwrap().ratio
        };
        let means = self
            .reports
            .values()
            .map(|per| per.iter().map(pick).sum::<f64>() / per.len() as f64)
            .collect();
        let top = self.reports[&8].iter().map(pick).collect();
        (means, top)
    }
}

fn toward_one(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs())
}

fn second_moment(fam: &Family) -> Outcome {
    let (means, top) = fam.ratios(1, MomentKind::L);
    gate(
        top.iter().all(|r| (r - 1.0).abs() < 0.25) && toward_one(&means),
        format!(
            "deg R = 8 ratios {} ; mean ratio over deg R = 4..8: {} ({:.1}s for both scans)",
            fmt_list(&top),
            fmt_list(&means),
            fam.elapsed.as_secs_f64()
        ),
    )
}

fn hadamard_second_moment(fam: &Family) -> Outcome {
    let (means, top) = fam.ratios(1, MomentKind::Z);
    // the same main term with prod_{deg P <= X} (1 - 1/|P|)^{-1} kept finite instead of e^gamma X
    let finite: f64 = (1..=1)
        .map(|d| (1.0 - 3f64.powi(-d)).powf(prime_count(3, d as usize).unwrap() as f64))
        .product();
    let diag: Vec<f64> = means.iter().map(|r| r / (EXP_EULER_GAMMA * finite)).collect();
    gate(
        top.iter().all(|r| (r - 1.0).abs() < 0.30) && toward_one(&means),
        format!(
            "deg R = 8 ratios {} ; mean ratio over deg R = 4..8: {} ; against the finite-product main term: {}",
            fmt_list(&top),
            fmt_list(&means),
            fmt_list(&diag)
        ),
    )
}

fn combinatorics() -> Outcome {
    let f2 = field(2);
    let round = suites::triple_round_trip(&f2, 2).unwrap();
    let split2 = suites::splitting_counts(&f2, 200, 1).unwrap();
    let split3 = suites::splitting_counts(&field(3), 200, 1).unwrap();
    let gamma = suites::gamma_identity(&f2, 4).unwrap();
    let ok = round.passed() && split2.passed() && split3.passed() && gamma.passed();
    gate(
        ok && split2.checked == 200 && split3.checked == 200,
        format!(
            "round trip {} pairs ({} failures), splittings {}+{} instances ({} failures), gamma identity {} moduli ({} failures)",
            round.checked,
            round.failure_count,
            split2.checked,
            split3.checked,
            split2.failure_count + split3.failure_count,
            gamma.checked,
            gamma.failure_count
        ),
    )
}

fn cue() -> Outcome {
    let mc = char_poly_moment(20, 1, 0.0, 10_000, 1).unwrap();
    let big = mc.mean / 20.0;
    // the grid integration against the closed product for E|Z|^{2k}
    let ks = |n: usize, k: u32| -> f64 {
        (0..n)
            .map(|j| {
                let fact = |m: usize| (1..=m).map(|i| i as f64).product::<f64>();
                fact(j) * fact(j + 2 * k as usize) / (fact(j + k as usize) * fact(j + k as usize))
            })
            .product()
    };
    let mut small = Vec::new();
    let mut ok = true;
    for (n, k) in [(1usize, 1u32), (2, 1), (3, 1), (1, 2), (2, 2)] {
        let exact = cue_moment_exact(n, k).unwrap();
        let est = char_poly_moment(n, k, 0.3, 100_000, 11).unwrap();
        let r = est.mean / exact;
        ok &= (exact - ks(n, k)).abs() < 1e-9 * exact && (r - 1.0).abs() < 0.02;
        small.push(format!("N={n},k={k}: {r:.4}"));
    }
    let bump = BumpProfile::new(3, 1);
    let a = hadamard_rmt_average(20, &bump, 1, 50, 1000, 1).unwrap();
    let b = hadamard_rmt_average(20, &bump, 1, 100, 1000, 1).unwrap();
    let stability = (a.estimate.mean - b.estimate.mean).abs() / b.estimate.mean;
    gate(
        (big - 1.0).abs() < 0.10 && ok && stability < 0.05,
        format!(
            "N=20: E|Z|^2 / N = {big:.4} (+- {:.4}); small N Monte Carlo / exact: {}; Hadamard model M=50 vs 100 change {stability:.1e}",
            mc.std_err / 20.0,
            small.join(", ")
        ),
    )
}

fn regime_reports(fam: &Family) -> Outcome {
    let (split1, _) = fam.ratios(1, MomentKind::Split);
    let (split2, _) = fam.ratios(2, MomentKind::Split);
    let (z4, _) = fam.ratios(2, MomentKind::Z);
    let flags: Vec<&str> = fam
        .reports
        .values()
        .map(|per| per[0].iter().find(|r| r.k == 2 && r.kind == MomentKind::Z).unwrap().regime_flag())
        .collect();
    let trend = |xs: &[f64]| if toward_one(xs) { "toward 1" } else { "not monotone toward 1" };
    Outcome {
        passed: true,
        report_only: true,
        detail: format!(
            "splitting ratio k=1: {} ({}); k=2: {} ({}); fourth Hadamard moment ratio: {} flags {flags:?}",
            fmt_list(&split1),
            trend(&split1),
            fmt_list(&split2),
            trend(&split2),
            fmt_list(&z4)
        ),
    }
}

#[test]
fn acceptance() {
    let mut lines = Vec::new();
    let mut failed = Vec::new();
    let mut record = |id: u32, name: &str, budget_secs: u64, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        let in_time = secs <= budget_secs as f64;
        let status = match (o.report_only, o.passed && in_time) {
            (true, _) => "REPORT",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        if status == "FAIL" {
            failed.push(id);
        }
        let timing = if in_time { format!("{secs:.1}s") } else { format!("{secs:.1}s, over the {budget_secs}s budget") };
        let line = format!("criterion {id:>2} {status:<6} {name}: {} [{timing}]", o.detail);
        println!("{line}");
        lines.push(line);
    };

    record(1, "primitive character count", 60, &mut exact_counting);
    record(2, "primitive orthogonality", 120, &mut orthogonality);
    record(3, "prime polynomial count", 30, &mut prime_counting);
    record(4, "short-sum identity", 300, &mut short_sums);
    record(5, "hybrid product from zeros", 600, &mut hybrid_identity);
    record(6, "explicit formula", 300, &mut explicit_formula);
    record(7, "zeros on the critical line", 300, &mut critical_line);
    record(8, "alpha_k coefficients", 120, &mut alpha_oracle);
    record(9, "local Euler factor identities", 30, &mut local_identities);
    record(10, "Mertens product", 60, &mut mertens);
    let mut fam = None;
    record(11, "second moment of L", 1800, &mut || {
        let f = family();
        let o = second_moment(&f);
        fam = Some(f);
        o
    });
    let fam = fam.unwrap();
    record(12, "second moment of the Hadamard product", 1800, &mut || hadamard_second_moment(&fam));
    record(13, "triple products, splittings, gamma identity", 300, &mut combinatorics);
    record(14, "CUE moments", 600, &mut cue);
    record(15, "regime reports", 60, &mut || regime_reports(&fam));

    if let Some(dir) = option_env!("CARGO_TARGET_TMPDIR") {
        let _ = std::fs::write(std::path::Path::new(dir).join("acceptance-summary.txt"), lines.join("\n") + "\n");
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}\n{}", lines.join("\n"));
}
