//! `verify`: every oracle and identity check in one seeded run.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use circdet::binomial::{
    binomial_eigenvalue, conjugation_check, family_det, float_row, pair_product, relative_close,
};
use circdet::{
    build_dense, closed_form_det, det_bareiss, det_exact_direct, eigenvalues_dft, exchange_factor,
    BinomialFamilyParams, CirculantSpec, ClosedFormResult, ComplexF, GaussInt, Method, Orientation,
    Scalar, UnitZ,
};

use crate::args::{Format, VerifyArgs};
use crate::{resolve_rtol, usage, CliResult, EXIT_FAILURE, EXIT_OK};

/// Source of closed-form values; tests substitute a tampered one.
pub type ClosedFormProvider<'a> =
    dyn Fn(&BinomialFamilyParams) -> circdet::Result<ClosedFormResult> + Sync + 'a;

pub fn library_closed_form(p: &BinomialFamilyParams) -> circdet::Result<ClosedFormResult> {
    closed_form_det(p)
}

/// Numeric sweeps stop at these sizes whatever `max_n` is.
pub const SPECTRAL_MAX_N: usize = 24;
pub const EIGEN_MAX_N: usize = 32;
pub const SPECIAL_ODD_MAX_N: usize = 33;
pub const RANDOM_MAX_N: usize = 12;
pub const RANDOM_ROWS: usize = 100;
pub const RANDOM_PART: i64 = 10;
pub const TRIG_MAX_K: u32 = 50;
pub const EIGEN_RTOL: f64 = 1e-8;
pub const LEMMA_RTOL: f64 = 1e-9;

const MAX_LISTED_FAILURES: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSummary {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    /// The first few failing cases.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySummary {
    pub max_n: usize,
    pub seed: u64,
    pub rtol: f64,
    pub checks: Vec<CheckSummary>,
    pub passed: usize,
    pub failed: usize,
    pub ok: bool,
}

impl VerifySummary {
    pub fn exit_code(&self) -> i32 {
        if self.ok {
            EXIT_OK
        } else {
            EXIT_FAILURE
        }
    }
}

fn summarize(name: &str, results: Vec<Result<(), String>>) -> CheckSummary {
    let mut s = CheckSummary {
        name: name.to_string(),
        passed: 0,
        failed: 0,
        failures: Vec::new(),
    };
    for r in results {
        match r {
            Ok(()) => s.passed += 1,
            Err(msg) => {
                s.failed += 1;
                if s.failures.len() < MAX_LISTED_FAILURES {
                    s.failures.push(msg);
                }
            }
        }
    }
    s
}

fn unit_cells(n_lo: usize, n_hi: usize) -> Vec<(usize, UnitZ, Orientation)> {
    (n_lo..=n_hi)
        .flat_map(|n| {
            UnitZ::ALL.into_iter().flat_map(move |z| {
                [Orientation::Right, Orientation::Left]
                    .into_iter()
                    .map(move |o| (n, z, o))
            })
        })
        .collect()
}

fn params(n: usize, z: UnitZ, o: Orientation) -> BinomialFamilyParams {
    BinomialFamilyParams::new(n, z.to_gauss(), o)
}

fn closed(
    provider: &ClosedFormProvider<'_>,
    n: usize,
    z: UnitZ,
    o: Orientation,
) -> Result<GaussInt, String> {
    provider(&params(n, z, o))
        .map(|r| r.value)
        .map_err(|e| format!("n={n} z={z} {o}: closed form: {e}"))
}

fn oracle_equivalence(provider: &ClosedFormProvider<'_>, max_n: usize) -> Vec<Result<(), String>> {
    unit_cells(2, max_n)
        .into_par_iter()
        .map(|(n, z, o)| {
            let c = closed(provider, n, z, o)?;
            let spec =
                circdet::binomial::exact_spec(&params(n, z, o)).map_err(|e| e.to_string())?;
            let b = det_bareiss(&build_dense(&spec)).map_err(|e| e.to_string())?;
            if c == b {
                Ok(())
            } else {
                Err(format!("n={n} z={z} {o}: closed {c} != bareiss {b}"))
            }
        })
        .collect()
}

fn spectral_consistency(max_n: usize, rtol: f64) -> Vec<Result<(), String>> {
    unit_cells(2, max_n.min(SPECTRAL_MAX_N))
        .into_par_iter()
        .map(|(n, z, o)| {
            let p = params(n, z, o);
            let fail = |e: circdet::Error| format!("n={n} z={z} {o}: {e}");
            let s = family_det(&p, Method::Spectral).map_err(fail)?.to_complex();
            let e = family_det(&p, Method::Exact).map_err(fail)?.to_complex();
            if relative_close(s, e, rtol) {
                Ok(())
            } else {
                Err(format!("n={n} z={z} {o}: spectral {s} vs exact {e}"))
            }
        })
        .collect()
}

fn trig_identities() -> Vec<Result<(), String>> {
    circdet::trig::check_all(TRIG_MAX_K)
        .into_iter()
        .map(|(name, r)| {
            if r.passed {
                Ok(())
            } else {
                Err(format!(
                    "{name} k={}: error {:e} > {:e}",
                    r.k, r.abs_error, r.tolerance
                ))
            }
        })
        .collect()
}

fn eigen_zs() -> Vec<(String, Scalar)> {
    let mut zs: Vec<(String, Scalar)> = UnitZ::ALL
        .into_iter()
        .map(|u| (u.to_string(), Scalar::Exact(u.to_gauss())))
        .collect();
    zs.push(("0.6+0.8i".into(), Scalar::float(ComplexF::new(0.6, 0.8))));
    zs
}

// Errors are measured against the largest eigenvalue: an inexact row
// perturbs every eigenvalue by about eps times the row's l1 norm.
fn eigenvalue_closed_form(max_n: usize) -> Vec<Result<(), String>> {
    let cells: Vec<(usize, (String, Scalar))> = (1..=max_n.min(EIGEN_MAX_N))
        .flat_map(|n| eigen_zs().into_iter().map(move |z| (n, z)))
        .collect();
    cells
        .into_par_iter()
        .map(|(n, (label, z))| {
            let row = float_row(n, &z).map_err(|e| e.to_string())?;
            let spectrum = eigenvalues_dft(&row).map_err(|e| format!("n={n} z={label}: {e}"))?;
            let scale = spectrum.values.iter().map(|v| v.norm()).fold(1.0, f64::max);
            for (m, dft) in spectrum.values.iter().enumerate() {
                let formula =
                    binomial_eigenvalue(n, z.to_complex(), m).map_err(|e| e.to_string())?;
                if (formula - dft).norm() > EIGEN_RTOL * scale {
                    return Err(format!(
                        "n={n} z={label} m={m}: formula {formula} vs dft {dft}"
                    ));
                }
            }
            Ok(())
        })
        .collect()
}

fn i_spectrum(n: usize) -> Result<Vec<ComplexF>, String> {
    let row = float_row(n, &Scalar::Exact(GaussInt::i())).map_err(|e| e.to_string())?;
    Ok(eigenvalues_dft(&row)
        .map_err(|e| format!("n={n}: {e}"))?
        .values)
}

fn pair_products(max_n: usize) -> Vec<Result<(), String>> {
    (2..=max_n.min(EIGEN_MAX_N))
        .into_par_iter()
        .flat_map_iter(|n| {
            let spectrum = i_spectrum(n);
            (1..n)
                .map(|m| {
                    let l = spectrum.as_ref().map_err(Clone::clone)?;
                    let numeric = l[m] * l[n - m];
                    let lemma = pair_product(n, m).map_err(|e| e.to_string())?;
                    if relative_close(numeric, lemma, LEMMA_RTOL) {
                        Ok(())
                    } else {
                        Err(format!("n={n} m={m}: {numeric} vs {lemma}"))
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

fn special_eigenvalues(max_n: usize) -> Vec<Result<(), String>> {
    (2..=max_n.min(SPECIAL_ODD_MAX_N))
        .filter(|n| n % 2 == 1 || *n <= EIGEN_MAX_N)
        .collect::<Vec<_>>()
        .into_par_iter()
        .flat_map_iter(|n| {
            let mut out = Vec::new();
            let l = match i_spectrum(n) {
                Ok(l) => l,
                Err(e) => return vec![Err(e)],
            };
            let top = 2f64.powi(n as i32 - 1);
            if n % 2 == 1 {
                let expect = GaussInt::new(0, 2).pow(((n - 1) / 2) as u64).to_complex();
                out.push(if relative_close(l[0], expect, LEMMA_RTOL) {
                    Ok(())
                } else {
                    Err(format!("n={n}: lambda_0 = {} vs {expect}", l[0]))
                });
            } else {
                let prod = l[0] * l[n / 2];
                out.push(
                    if relative_close(prod, ComplexF::new(top, 0.0), LEMMA_RTOL) {
                        Ok(())
                    } else {
                        Err(format!(
                            "n={n}: lambda_0 lambda_n/2 = {prod} vs 2^{}",
                            n - 1
                        ))
                    },
                );
            }
            if n % 4 == 0 {
                let v = l[n / 4].norm();
                out.push(if v <= LEMMA_RTOL * top {
                    Ok(())
                } else {
                    Err(format!("n={n}: |lambda_n/4| = {v:e}"))
                });
            }
            out
        })
        .collect()
}

fn random_rows(max_n: usize, seed: u64) -> Vec<Vec<GaussInt>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hi = max_n.min(RANDOM_MAX_N);
    (0..RANDOM_ROWS)
        .map(|_| {
            let n = rng.gen_range(1..=hi);
            (0..n)
                .map(|_| {
                    GaussInt::new(
                        rng.gen_range(-RANDOM_PART..=RANDOM_PART),
                        rng.gen_range(-RANDOM_PART..=RANDOM_PART),
                    )
                })
                .collect()
        })
        .collect()
}

fn left_right_relation(max_n: usize, seed: u64) -> Vec<Result<(), String>> {
    random_rows(max_n, seed)
        .into_par_iter()
        .enumerate()
        .map(|(idx, row)| {
            let n = row.len();
            let right = CirculantSpec::right(row.clone()).map_err(|e| e.to_string())?;
            let left = CirculantSpec::left(row).map_err(|e| e.to_string())?;
            let r = det_exact_direct(&right).map_err(|e| e.to_string())?;
            let l = det_exact_direct(&left).map_err(|e| e.to_string())?;
            let expect = r.scale(&exchange_factor(n).into());
            if l == expect {
                Ok(())
            } else {
                Err(format!("row {idx} (n={n}): left {l} vs {expect}"))
            }
        })
        .collect()
}

fn conjugation_exact(provider: &ClosedFormProvider<'_>, max_n: usize) -> Vec<Result<(), String>> {
    unit_cells(2, max_n)
        .into_par_iter()
        .map(|(n, z, o)| {
            let direct = closed(provider, n, z, o)?;
            let conj = closed(provider, n, z.conj(), o)?;
            if conj == direct.conj() {
                Ok(())
            } else {
                Err(format!(
                    "n={n} z={z} {o}: det at conj z is {conj}, conj of det is {}",
                    direct.conj()
                ))
            }
        })
        .collect()
}

fn conjugation_numeric(max_n: usize) -> Vec<Result<(), String>> {
    let cells: Vec<(usize, (String, Scalar))> = (2..=max_n.min(SPECTRAL_MAX_N))
        .flat_map(|n| eigen_zs().into_iter().map(move |z| (n, z)))
        .collect();
    cells
        .into_par_iter()
        .map(
            |(n, (label, z))| match conjugation_check(n, z.to_complex()) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("n={n} z={label}: conjugation fails")),
                Err(e) => Err(format!("n={n} z={label}: {e}")),
            },
        )
        .collect()
}

fn cross_identities(provider: &ClosedFormProvider<'_>, max_n: usize) -> Vec<Result<(), String>> {
    (2..=max_n)
        .into_par_iter()
        .map(|n| {
            let cf = |z, o| closed(provider, n, z, o);
            let (r_mi, l_i) = (
                cf(UnitZ::MinusI, Orientation::Right)?,
                cf(UnitZ::I, Orientation::Left)?,
            );
            let (r_i, l_mi) = (
                cf(UnitZ::I, Orientation::Right)?,
                cf(UnitZ::MinusI, Orientation::Left)?,
            );
            if r_mi != l_i {
                Err(format!("n={n}: right(-i) {r_mi} != left(i) {l_i}"))
            } else if r_i != l_mi {
                Err(format!("n={n}: right(i) {r_i} != left(-i) {l_mi}"))
            } else {
                Ok(())
            }
        })
        .collect()
}

fn left_exchange(provider: &ClosedFormProvider<'_>, max_n: usize) -> Vec<Result<(), String>> {
    (2..=max_n)
        .flat_map(|n| UnitZ::ALL.into_iter().map(move |z| (n, z)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(n, z)| {
            let right = closed(provider, n, z, Orientation::Right)?;
            let left = closed(provider, n, z, Orientation::Left)?;
            let expect = right.scale(&exchange_factor(n).into());
            if left == expect {
                Ok(())
            } else {
                Err(format!(
                    "n={n} z={z}: left {left} vs exchange of right {expect}"
                ))
            }
        })
        .collect()
}

/// Runs the whole suite. Exact sweeps cover `2..=max_n`; numeric sweeps are
/// capped at the sizes where double-precision rows are exact.
pub fn run_suite(
    max_n: usize,
    seed: u64,
    rtol: f64,
    provider: &ClosedFormProvider<'_>,
) -> VerifySummary {
    let checks = vec![
        summarize("oracle_equivalence", oracle_equivalence(provider, max_n)),
        summarize("left_exchange", left_exchange(provider, max_n)),
        summarize("spectral_consistency", spectral_consistency(max_n, rtol)),
        summarize("trig_identities", trig_identities()),
        summarize("eigenvalue_closed_form", eigenvalue_closed_form(max_n)),
        summarize("pair_product", pair_products(max_n)),
        summarize("special_eigenvalues", special_eigenvalues(max_n)),
        summarize("left_right_relation", left_right_relation(max_n, seed)),
        summarize("conjugation_exact", conjugation_exact(provider, max_n)),
        summarize("conjugation_numeric", conjugation_numeric(max_n)),
        summarize("cross_identities", cross_identities(provider, max_n)),
    ];
    let passed = checks.iter().map(|c| c.passed).sum();
    let failed: usize = checks.iter().map(|c| c.failed).sum();
    VerifySummary {
        max_n,
        seed,
        rtol,
        checks,
        passed,
        failed,
        ok: failed == 0,
    }
}

fn write_text(s: &VerifySummary, out: &mut dyn Write) -> CliResult<()> {
    writeln!(
        out,
        "verify: max_n={} seed={} rtol={:e}",
        s.max_n, s.seed, s.rtol
    )?;
    writeln!(out, "{:<24}{:>8}{:>8}", "check", "passed", "failed")?;
    for c in &s.checks {
        writeln!(out, "{:<24}{:>8}{:>8}", c.name, c.passed, c.failed)?;
    }
    writeln!(out, "{:<24}{:>8}{:>8}", "total", s.passed, s.failed)?;
    for c in &s.checks {
        for f in &c.failures {
            writeln!(out, "FAIL {}: {f}", c.name)?;
        }
    }
    writeln!(out, "{}", if s.ok { "PASS" } else { "FAIL" })?;
    Ok(())
}

fn write_csv(s: &VerifySummary, out: &mut dyn Write) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["check", "passed", "failed"])?;
    for c in &s.checks {
        w.write_record([c.name.clone(), c.passed.to_string(), c.failed.to_string()])?;
    }
    w.write_record([
        "total".to_string(),
        s.passed.to_string(),
        s.failed.to_string(),
    ])?;
    w.flush()?;
    Ok(())
}

pub fn cmd_verify(
    args: &VerifyArgs,
    provider: &ClosedFormProvider<'_>,
    out: &mut dyn Write,
) -> CliResult<i32> {
    if args.max_n < 2 {
        return Err(usage(format!(
            "--max-n must be at least 2, got {}",
            args.max_n
        )));
    }
    let rtol = resolve_rtol(args.rtol)?;
    let summary = run_suite(args.max_n, args.seed, rtol, provider);
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &summary)?;
            writeln!(out)?;
        }
        Format::Csv => write_csv(&summary, out)?,
        Format::Text => write_text(&summary, out)?,
    }
    Ok(summary.exit_code())
}
