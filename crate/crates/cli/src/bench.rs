//! `bench`: median wall time per (n, method) on the `z = i` family.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use circdet::binomial::{exact_spec, float_row};
use circdet::{
    build_dense, closed_form_det, det_bareiss, det_via_eigen, BinomialFamilyParams, GaussInt,
    Orientation, Scalar,
};

use crate::args::{BenchArgs, Format, MethodArg};
use crate::{usage, CliResult, EXIT_OK};

pub const DFT_MAX_N: usize = 4096;
pub const EXACT_MAX_N: usize = 256;
/// Allowed growth of the spectral time per doubling of n.
pub const DOUBLING_FACTOR: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchMethod {
    Closed,
    Dft,
    Exact,
}

impl BenchMethod {
    fn name(self) -> &'static str {
        match self {
            BenchMethod::Closed => "closed",
            BenchMethod::Dft => "dft",
            BenchMethod::Exact => "exact",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchRow {
    pub n: usize,
    pub method: BenchMethod,
    pub median_us: f64,
    /// Set when the method fails on this input.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchReport {
    pub runs: usize,
    pub rows: Vec<BenchRow>,
    pub warnings: Vec<String>,
}

/// Powers of two from 2 up to `max_n`, then `max_n` itself.
pub fn sizes(max_n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = std::iter::successors(Some(2usize), |&n| n.checked_mul(2))
        .take_while(|&n| n <= max_n)
        .collect();
    if out.last() != Some(&max_n) && max_n >= 1 {
        out.push(max_n);
    }
    out
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    }
}

/// Wall time of one evaluation, and the error if it failed; a failure in the
/// final product still costs the full spectrum.
fn time_one(n: usize, method: BenchMethod) -> (f64, Option<String>) {
    let params = BinomialFamilyParams::new(n, GaussInt::i(), Orientation::Right);
    let start = Instant::now();
    let outcome = match method {
        BenchMethod::Closed => closed_form_det(&params).map(|r| {
            std::hint::black_box(r);
        }),
        BenchMethod::Dft => float_row(n, &Scalar::Exact(GaussInt::i()))
            .and_then(|row| det_via_eigen(&row))
            .map(|d| {
                std::hint::black_box(d);
            }),
        BenchMethod::Exact => exact_spec(&params)
            .and_then(|spec| det_bareiss(&build_dense(&spec)))
            .map(|d| {
                std::hint::black_box(d);
            }),
    };
    (
        start.elapsed().as_secs_f64() * 1e6,
        outcome.err().map(|e| e.to_string()),
    )
}

fn doubling_warnings(rows: &[BenchRow]) -> Vec<String> {
    let dft: Vec<(usize, f64)> = rows
        .iter()
        .filter(|r| r.method == BenchMethod::Dft)
        .map(|r| (r.n, r.median_us))
        .collect();
    let mut out = Vec::new();
    for &(n, t) in &dft {
        if let Some(&(_, t2)) = dft.iter().find(|(m, _)| *m == 2 * n) {
            if t2 > DOUBLING_FACTOR * t {
                out.push(format!(
                    "dft: time({}) = {t2:.1} us exceeds {DOUBLING_FACTOR} x time({n}) = {t:.1} us",
                    2 * n
                ));
            }
        }
    }
    out
}

pub fn run_bench(max_n: usize, methods: &[BenchMethod], runs: usize) -> BenchReport {
    let mut rows = Vec::new();
    for n in sizes(max_n) {
        for &method in methods {
            if method == BenchMethod::Exact && n > EXACT_MAX_N {
                continue;
            }
            let mut times = Vec::with_capacity(runs);
            let mut error = None;
            for _ in 0..runs {
                let (t, e) = time_one(n, method);
                times.push(t);
                error = error.or(e);
            }
            rows.push(BenchRow {
                n,
                method,
                median_us: median(times),
                error,
            });
        }
    }
    let warnings = doubling_warnings(&rows);
    BenchReport {
        runs,
        rows,
        warnings,
    }
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    if args.runs == 0 {
        return Err(usage("--runs must be at least 1"));
    }
    if args.max_n < 1 {
        return Err(usage("--max-n must be at least 1"));
    }
    let all = args.methods.contains(&MethodArg::All);
    let mut methods = Vec::new();
    for (arg, m) in [
        (MethodArg::Closed, BenchMethod::Closed),
        (MethodArg::Dft, BenchMethod::Dft),
        (MethodArg::Exact, BenchMethod::Exact),
    ] {
        if all || args.methods.contains(&arg) {
            methods.push(m);
        }
    }
    let explicit = |m| args.methods.contains(&m);
    if args.max_n > DFT_MAX_N {
        return Err(usage(format!("--max-n is at most {DFT_MAX_N}")));
    }
    if explicit(MethodArg::Exact) && args.max_n > EXACT_MAX_N {
        return Err(usage(format!(
            "the exact method is benchmarked up to n = {EXACT_MAX_N}"
        )));
    }
    let report = run_bench(args.max_n, &methods, args.runs);
    for w in &report.warnings {
        writeln!(err, "warning: {w}")?;
    }
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["n", "method", "median_us", "error"])?;
            for r in &report.rows {
                w.write_record([
                    r.n.to_string(),
                    r.method.name().to_string(),
                    format!("{:.1}", r.median_us),
                    r.error.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "{:>6}  {:<7}{:>14}", "n", "method", "median_us")?;
            for r in &report.rows {
                write!(
                    out,
                    "{:>6}  {:<7}{:>14.1}",
                    r.n,
                    r.method.name(),
                    r.median_us
                )?;
                match &r.error {
                    Some(e) => writeln!(out, "  error: {e}")?,
                    None => writeln!(out)?,
                }
            }
        }
    }
    Ok(EXIT_OK)
}
