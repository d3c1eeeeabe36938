//! Subcommand execution and exit statuses.

use std::time::Instant;

use anyhow::{Context, Result};
use clap::CommandFactory;
use ffhybrid_core::chargroup::{all_characters, phi_star, UnitGroup};
use ffhybrid_core::hybrid::BumpProfile;
use ffhybrid_core::lfunc::{l_coeffs, rh_report_of, zeros_of};
use ffhybrid_core::moments::{f_k, ratio_to_f64};
use ffhybrid_core::polyring::{is_irreducible, monic_polys, phi, prime_count, primes_of_degree};
use ffhybrid_core::rmt::{cue_moment_exact, char_poly_power, hadamard_surrogate, sample_haar_unitary, MonteCarloEstimate, PhaseKernel};
use ffhybrid_core::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{self, Cli, Command, ConfigError, Format, RunConfig};
use crate::output::{self, Check, Report, Table};
use crate::{cache, fast, scan, suites};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID_CONFIG: i32 = 2;

#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Failed(anyhow::Error),
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<anyhow::Error> for RunError {
    fn from(e: anyhow::Error) -> Self {
        RunError::Failed(e)
    }
}

impl From<ffhybrid_core::Error> for RunError {
    fn from(e: ffhybrid_core::Error) -> Self {
        RunError::Failed(e.into())
    }
}

/// Parse, run, write, and return the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::from_args(args) {
        Ok(config) => run(config),
        Err(e) => {
            let _ = e.print();
            e.exit_code()
        }
    }
}

pub fn run(config: RunConfig) -> i32 {
    let outcome = execute(&config).and_then(|(effective, report)| {
        let dest = effective.out().cloned().expect("every runnable command has an output");
        let text = output::render(&effective, &report, dest.format)?;
        output::write(&dest, &text)?;
        Ok(report)
    });
    match outcome {
        Ok(report) if report.passed() => EXIT_OK,
        Ok(report) => {
            for c in report.checks.iter().filter(|c| !c.passed) {
                eprintln!("FAILED {}: {}", c.name, c.detail);
            }
            EXIT_CHECK_FAILED
        }
        Err(RunError::Config(e)) => {
            eprintln!("error: {e}\n\n{}", Cli::command().render_usage());
            EXIT_INVALID_CONFIG
        }
        Err(RunError::Failed(e)) => {
            eprintln!("error: {e:#}");
            EXIT_CHECK_FAILED
        }
    }
}

/// Validate and run; returns the configuration actually executed (which
/// differs from `config` only for `rerun`) and its report.
pub fn execute(config: &RunConfig) -> Result<(RunConfig, Report), RunError> {
    config.validate()?;
    if let Command::Rerun(a) = &config.command {
        let (mut inner, format) = output::read_config(&a.file).map_err(|e| ConfigError(format!("{e:#}")))?;
        if matches!(inner.command, Command::Rerun(_)) {
            return Err(ConfigError("refusing to rerun a rerun".into()).into());
        }
        let dest = a.out.clone().unwrap_or(config::Destination { format, path: None });
        inner.set_out(dest);
        if config.threads.is_some() {
            inner.threads = config.threads;
        }
        return execute(&inner);
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = config.threads {
        pool = pool.num_threads(t);
    }
    let pool = pool.build().context("starting worker threads")?;
    let report = pool.install(|| dispatch(config))?;
    if let Some(dest) = config.out() {
        if dest.format == Format::Csv && report.table.is_none() {
            return Err(ConfigError("this subcommand writes JSON only".into()).into());
        }
    }
    Ok((config.clone(), report))
}

fn dispatch(config: &RunConfig) -> Result<Report, RunError> {
    let cache_dir = config.cache_dir.as_deref();
    match &config.command {
        Command::Primes(a) => primes(a),
        Command::CharTable(a) => char_table(a, cache_dir),
        Command::Lfunc(a) => lfunc(a, cache_dir),
        Command::VerifyIdentity(a) => verify_identity(a, cache_dir),
        Command::MomentScan(a) => moment_scan(a, cache_dir),
        Command::RmtCompare(a) => rmt_compare(a),
        Command::CombinatoricsCheck(a) => combinatorics(a),
        Command::Rerun(_) => unreachable!("handled in execute"),
    }
}

fn primes(a: &config::PrimesArgs) -> Result<Report, RunError> {
    let field = config::field(a.q)?;
    let mut rows = Vec::new();
    let mut results = Vec::new();
    let mut bad = Vec::new();
    for n in 1..=a.max_degree {
        let formula = prime_count(a.q, n)?;
        let mut enumerated = 0u128;
        for f in monic_polys(&field, n) {
            if is_irreducible(&f)? {
                enumerated += 1;
            }
        }
        if formula != enumerated {
            bad.push(json!({"degree": n, "formula": formula.to_string(), "enumerated": enumerated.to_string()}));
        }
        rows.push(vec![a.q.to_string(), n.to_string(), formula.to_string(), enumerated.to_string()]);
        let mut entry = json!({"degree": n, "formula": formula.to_string(), "enumerated": enumerated.to_string()});
        if a.list {
            let list: Vec<String> = primes_of_degree(&field, n)?.iter().map(|p| p.to_text()).collect();
            entry["primes"] = json!(list);
        }
        results.push(entry);
    }
    Ok(Report {
        results: json!({"q": a.q, "degrees": results}),
        table: Some(Table {
            header: ["q", "degree", "formula", "enumerated"].map(String::from).to_vec(),
            rows,
        }),
        checks: vec![Check::new("prime counts", bad.is_empty(), json!(bad))],
    })
}

fn group_of(q: u32, text: &str, cache_dir: Option<&std::path::Path>) -> Result<std::sync::Arc<UnitGroup>, RunError> {
    let r = config::modulus(q, text)?;
    Ok(cache::unit_group(&r, cache_dir)?)
}

fn char_table(a: &config::CharTableArgs, cache_dir: Option<&std::path::Path>) -> Result<Report, RunError> {
    let g = group_of(a.q, &a.modulus, cache_dir)?;
    let r = g.modulus();
    let chars = all_characters(&g);
    let expected = phi_star(r)?;
    let primitive = chars.iter().filter(|c| c.is_primitive()).count() as u128;
    let phi_r = phi(r)?;
    let list: Vec<Value> = chars
        .iter()
        .map(|c| {
            let mut v = json!({
                "index": c.index(),
                "exponents": c.exponents(),
                "order": c.order(),
                "primitive": c.is_primitive(),
                "even": c.is_even(),
            });
            if a.values {
                let t: Vec<Option<u32>> = c
                    .rotation_table()
                    .into_iter()
                    .map(|k| (k != ffhybrid_core::chargroup::ZERO_VALUE).then_some(k))
                    .collect();
                v["rotations"] = json!(t);
            }
            v
        })
        .collect();
    Ok(Report {
        results: json!({
            "modulus": r.to_text(),
            "phi": phi_r.to_string(),
            "phi_star": expected.to_string(),
            "exponent": g.exponent(),
            "generators": g.generators().iter().map(|p| p.to_text()).collect::<Vec<_>>(),
            "orders": g.orders(),
            "characters": list,
        }),
        table: None,
        checks: vec![
            Check::new(
                "primitive count equals phi_star",
                primitive == expected,
                json!({"enumerated": primitive.to_string(), "formula": expected.to_string()}),
            ),
            Check::new(
                "group order equals phi",
                g.order() as u128 == phi_r,
                json!({"order": g.order(), "phi": phi_r.to_string()}),
            ),
        ],
    })
}

fn lfunc(a: &config::LfuncArgs, cache_dir: Option<&std::path::Path>) -> Result<Report, RunError> {
    let g = group_of(a.q, &a.modulus, cache_dir)?;
    let chars: Vec<_> = all_characters(&g)
        .into_iter()
        .filter(|c| !c.is_trivial() && (!a.all_primitive || c.is_primitive()))
        .collect();
    let sums = a.fast.then(|| fast::character_sums(&g));
    let rows = chars
        .par_iter()
        .map(|chi| -> Result<(Value, usize, f64)> {
            let lp = l_coeffs(chi)?;
            let mut v = json!({
                "modulus": g.modulus().to_text(),
                "index": chi.index(),
                "exponents": chi.exponents(),
                "primitive": chi.is_primitive(),
                "even": chi.is_even(),
                "coeffs": lp.coeffs,
            });
            let mut other = 0;
            if a.zeros {
                let zs = zeros_of(&lp)?;
                let rh = rh_report_of(&zs, a.rh_tol);
                if chi.is_primitive() {
                    other = rh.other;
                }
                v["zeros"] = json!(zs);
                v["rh"] = json!(rh);
            }
            let mut dev = 0.0f64;
            if let Some(s) = &sums {
                for (n, c) in lp.coeffs.iter().enumerate() {
                    dev = dev.max((s[n][chi.index() as usize] - c).norm());
                }
            }
            Ok((v, other, dev))
        })
        .collect::<Result<Vec<_>>>()?;
    let other: usize = rows.iter().map(|r| r.1).sum();
    let dev = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    let mut checks = Vec::new();
    if a.zeros {
        let off: Vec<&Value> = rows.iter().filter(|r| r.1 > 0).map(|r| &r.0["exponents"]).collect();
        checks.push(Check::new("zeros of primitive characters on the critical line or unit circle", other == 0, json!(off)));
    }
    if a.fast {
        checks.push(Check::new("transform coefficients match direct sums", dev < 1e-9, json!({"max_deviation": dev})));
    }
    Ok(Report {
        results: json!({"characters": rows.into_iter().map(|r| r.0).collect::<Vec<_>>()}),
        table: None,
        checks,
    })
}

fn verify_identity(a: &config::VerifyArgs, cache_dir: Option<&std::path::Path>) -> Result<Report, RunError> {
    let g = group_of(a.q, &a.modulus, cache_dir)?;
    let bump = BumpProfile::with_shape(a.q, a.x, a.bump_shape.into(), a.bump_nodes);
    let s = Complex64::new(a.s.re, a.s.im);
    let ids = suites::character_identities(&g, s, &bump, a.m)?;
    let fails = |f: &dyn Fn(&suites::CharacterIdentities) -> bool| -> Vec<Value> {
        ids.iter().filter(|c| f(c)).map(|c| json!(c)).collect()
    };
    let hybrid_bad = fails(&|c| c.hybrid_delta.is_some_and(|d| !(d < a.hybrid_tol)));
    let explicit_bad = fails(&|c| c.explicit_delta.is_some_and(|d| !(d < a.explicit_tol)));
    let short_bad = fails(&|c| !(c.short_delta < a.short_tol));
    let max = |f: &dyn Fn(&suites::CharacterIdentities) -> Option<f64>| ids.iter().filter_map(f).fold(0.0, f64::max);
    let rows = ids
        .iter()
        .map(|c| {
            let opt = |d: Option<f64>| d.map_or(String::new(), |d| format!("{d:e}"));
            vec![
                c.index.to_string(),
                format!("{:?}", c.exponents),
                c.even.to_string(),
                opt(c.hybrid_delta),
                opt(c.explicit_delta),
                format!("{:e}", c.short_delta),
            ]
        })
        .collect();
    Ok(Report {
        results: json!({
            "modulus": g.modulus().to_text(),
            "s": [a.s.re, a.s.im],
            "max_hybrid_delta": max(&|c| c.hybrid_delta),
            "max_explicit_delta": max(&|c| c.explicit_delta),
            "max_short_delta": max(&|c| Some(c.short_delta)),
            "skipped_at_zero": ids.iter().filter(|c| c.hybrid_delta.is_none()).count(),
            "characters": ids,
        }),
        table: Some(Table {
            header: ["index", "exponents", "even", "hybrid_delta", "explicit_delta", "short_delta"]
                .map(String::from)
                .to_vec(),
            rows,
        }),
        checks: vec![
            Check::new("hybrid product from zeros", hybrid_bad.is_empty(), json!(hybrid_bad)),
            Check::new("explicit formula", explicit_bad.is_empty(), json!(explicit_bad)),
            Check::new("short-sum identity", short_bad.is_empty(), json!(short_bad)),
        ],
    })
}

fn moment_scan(a: &config::ScanArgs, cache_dir: Option<&std::path::Path>) -> Result<Report, RunError> {
    let field = config::field(a.q)?;
    let list: Vec<_> = match &a.list {
        Some(l) => l
            .split(';')
            .filter(|m| !m.trim().is_empty())
            .map(|m| config::modulus(a.q, m))
            .collect::<Result<_, _>>()?,
        None => Vec::new(),
    };
    let mut moduli = scan::select_moduli(&field, a.deg_r_min, a.deg_r_max, a.moduli, &list)?;
    if let Some(limit) = a.limit {
        let mut per_degree = std::collections::BTreeMap::<usize, usize>::new();
        moduli.retain(|r| {
            let n = per_degree.entry(r.deg()).or_default();
            *n += 1;
            *n <= limit
        });
    }
    if moduli.is_empty() {
        return Err(ConfigError("empty scan range: no moduli with primitive characters selected".into()).into());
    }
    let start = Instant::now();
    let mut reports = Vec::new();
    for r in &moduli {
        let reps = scan::scan_modulus(r, &a.k, &a.kinds, a.x, cache_dir)?;
        log::info!("{}: {} characters in {:.2}s", r.to_text(), reps[0].phi_star, reps[0].wall_time_secs);
        reports.extend(reps);
    }
    Ok(Report {
        table: Some(Table {
            header: scan::CSV_COLUMNS.map(String::from).to_vec(),
            rows: reports.iter().map(scan::csv_row).collect(),
        }),
        results: json!({
            "moduli": moduli.len(),
            "wall_time_secs": start.elapsed().as_secs_f64(),
            "reports": reports,
        }),
        checks: Vec::new(),
    })
}

/// Per-sample values in parallel; sample `j` always uses stream `j`.
fn sampled(n: usize, seed: u64, samples: usize, f: impl Fn(&[f64]) -> Result<f64> + Sync) -> Result<(MonteCarloEstimate, u32)> {
    let vals = (0..samples)
        .into_par_iter()
        .map(|j| -> Result<(f64, u32)> {
            let s = sample_haar_unitary(n, seed, j as u64)?;
            Ok((f(&s.phases)?, s.resampled))
        })
        .collect::<Result<Vec<_>>>()?;
    let resampled = vals.iter().map(|v| v.1).sum();
    let xs: Vec<f64> = vals.into_iter().map(|v| v.0).collect();
    Ok((MonteCarloEstimate::from_values(&xs), resampled))
}

fn rmt_compare(a: &config::RmtArgs) -> Result<Report, RunError> {
    let (est, resampled) = sampled(a.n, a.seed, a.samples, |ph| Ok(char_poly_power(ph, 0.0, a.k)))?;
    let asymptotic = ratio_to_f64(&f_k(a.k)) * (a.n as f64).powi((a.k * a.k) as i32);
    let exact = if a.n <= 3 { Some(cue_moment_exact(a.n, a.k)?) } else { None };

    let bump = BumpProfile::new(a.q, a.x);
    let hs = a.hadamard_samples.unwrap_or((a.samples / 10).max(2));
    let mut had = Vec::new();
    for m in [a.periods, 2 * a.periods] {
        let kernel = PhaseKernel::new(&bump, m);
        let (e, _) = sampled(a.n, a.seed, hs, |ph| Ok(kernel.exponent(ph, a.k)?.exp()))?;
        had.push(e);
    }
    let surrogate = hadamard_surrogate(a.n, a.q, a.x, a.k);
    let stability = (had[0].mean - had[1].mean).abs() / had[1].mean;
    if resampled > 0 {
        log::warn!("{resampled} Haar samples were redrawn after a failed eigen-decomposition");
    }
    let row = vec![
        a.n.to_string(),
        a.k.to_string(),
        a.samples.to_string(),
        a.seed.to_string(),
        format!("{:e}", est.mean),
        format!("{:e}", est.std_err),
        format!("{asymptotic:e}"),
        format!("{:e}", est.mean / asymptotic),
        exact.map_or(String::new(), |e| format!("{e:e}")),
        format!("{:e}", had[0].mean),
        format!("{:e}", had[1].mean),
        format!("{surrogate:e}"),
        format!("{:e}", had[1].mean / surrogate),
        format!("{stability:e}"),
    ];
    Ok(Report {
        results: json!({
            "char_poly": {
                "estimate": est,
                "asymptotic": asymptotic,
                "ratio": est.mean / asymptotic,
                "exact": exact,
                "resampled": resampled,
            },
            "hadamard": {
                "q": a.q,
                "x": a.x,
                "samples": hs,
                "periods": [a.periods, 2 * a.periods],
                "estimates": had,
                "surrogate": surrogate,
                "ratio": had[1].mean / surrogate,
                "stability": stability,
            },
        }),
        table: Some(Table {
            header: [
                "N", "k", "samples", "seed", "mean", "std_err", "asymptotic", "ratio", "exact", "hadamard_M",
                "hadamard_2M", "surrogate", "hadamard_ratio", "stability",
            ]
            .map(String::from)
            .to_vec(),
            rows: vec![row],
        }),
        checks: vec![Check::new(
            "Hadamard model stable under doubling the periods",
            stability < a.stability_tol,
            json!({"relative_change": stability}),
        )],
    })
}

fn combinatorics(a: &config::CombArgs) -> Result<Report, RunError> {
    let field = config::field(a.q)?;
    let round = suites::triple_round_trip(&field, a.max_deg)?;
    let split = suites::splitting_counts(&field, a.samples, a.seed)?;
    let gamma = suites::gamma_identity(&field, a.gamma_max_deg)?;
    let check = |name: &str, s: &suites::SuiteResult| Check::new(name, s.passed(), json!(s));
    Ok(Report {
        checks: vec![
            check("triple decomposition round trip", &round),
            check("coprime splitting count", &split),
            check("gamma identity", &gamma),
        ],
        results: json!({"round_trip": round, "splitting": split, "gamma": gamma}),
        table: None,
    })
}
