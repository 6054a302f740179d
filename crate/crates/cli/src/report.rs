//! `det` and `table`: per-(n, z, orientation) reports comparing the closed
//! form, the spectral product and exact elimination.

use std::fmt::Write as _;
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use circdet::binomial::{family_det, relative_close};
use circdet::circulant::FloatScalar;
use circdet::{
    closed_form_det, BinomialFamilyParams, CaseTag, ComplexF, Error, GaussInt, Method, Orientation,
    Scalar,
};

use crate::args::{DetArgs, Format, MethodArg, TableArgs};
use crate::zlit::{format_z, parse_z};
use crate::{resolve_rtol, usage, CliResult, EXIT_FAILURE, EXIT_OK};

pub const MAX_TABLE_N: usize = 4096;

/// A pair of methods whose results were compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pair {
    ClosedExact,
    ClosedSpectral,
    SpectralExact,
}

impl Pair {
    fn label(self) -> &'static str {
        match self {
            Pair::ClosedExact => "closed = exact",
            Pair::ClosedSpectral => "closed ~ spectral",
            Pair::SpectralExact => "spectral ~ exact",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Agreement {
    pub pair: Pair,
    pub agree: bool,
    /// Relative tolerance applied; 0 means exact equality.
    pub tolerance: f64,
}

/// Wall time per method, in microseconds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Elapsed {
    pub closed: Option<u64>,
    pub spectral: Option<u64>,
    pub exact: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetReport {
    pub n: usize,
    pub z: Scalar,
    pub orientation: Orientation,
    pub closed_form: Option<GaussInt>,
    pub case_tag: Option<CaseTag>,
    pub spectral: Option<FloatScalar>,
    pub exact: Option<GaussInt>,
    /// One verdict per pair of methods that both produced a value.
    pub agreement: Vec<Agreement>,
    /// Every verdict in `agreement` holds.
    pub agree: bool,
    /// Why a method has no value.
    pub notes: Vec<String>,
    pub elapsed_us: Elapsed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Want {
    Skip,
    /// Run when the method applies to this z and n; otherwise note why not.
    IfApplicable,
    /// Run; an inapplicable z is a usage error and a failure is reported.
    Required,
}

#[derive(Debug, Clone, Copy)]
pub struct Plan {
    pub closed: Want,
    pub spectral: Want,
    pub exact: Want,
    /// Largest n for which an `IfApplicable` exact method runs.
    pub exact_max_n: usize,
    pub rtol: f64,
}

impl Plan {
    pub fn from_methods(methods: &[MethodArg], exact_max_n: usize, rtol: f64) -> Plan {
        let want = |m: MethodArg| {
            if methods.contains(&m) {
                Want::Required
            } else if methods.contains(&MethodArg::All) {
                Want::IfApplicable
            } else {
                Want::Skip
            }
        };
        Plan {
            closed: want(MethodArg::Closed),
            spectral: want(MethodArg::Dft),
            exact: want(MethodArg::Exact),
            exact_max_n,
            rtol,
        }
    }
}

/// A report plus whether a required method failed at run time.
pub struct Outcome {
    pub report: DetReport,
    pub failed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.failed || !self.report.agree {
            EXIT_FAILURE
        } else {
            EXIT_OK
        }
    }
}

fn micros(start: Instant) -> u64 {
    start.elapsed().as_micros().min(u128::from(u64::MAX)) as u64
}

/// Runs the planned methods on `c_n(z)` and compares what they return.
pub fn compute(n: usize, z: &Scalar, orientation: Orientation, plan: &Plan) -> CliResult<Outcome> {
    if n == 0 {
        return Err(usage("n must be at least 1"));
    }
    if z.is_zero() {
        return Err(usage("z must be nonzero"));
    }
    let params = BinomialFamilyParams::new(n, z.clone(), orientation);
    let zs = format_z(z);
    let mut notes = Vec::new();
    let mut elapsed = Elapsed::default();
    let mut failed = false;

    let mut closed = None;
    let mut case_tag = None;
    if plan.closed != Want::Skip {
        let start = Instant::now();
        match closed_form_det(&params) {
            Ok(r) => {
                elapsed.closed = Some(micros(start));
                closed = Some(r.value);
                case_tag = Some(r.case_tag);
            }
            Err(Error::UnsupportedZ(_)) if plan.closed == Want::IfApplicable => {
                notes.push(format!("closed: no closed form for z = {zs}"));
            }
            Err(Error::UnsupportedZ(_)) => {
                return Err(usage(format!(
                    "the closed form needs z in {{1, -1, i, -i}}, got z = {zs}"
                )));
            }
            Err(e) => return Err(usage(format!("closed: {e}"))),
        }
    }

    let mut spectral = None;
    if plan.spectral != Want::Skip {
        let start = Instant::now();
        match family_det(&params, Method::Spectral) {
            Ok(v) => {
                elapsed.spectral = Some(micros(start));
                spectral = Some(FloatScalar::from(v.to_complex()));
            }
            Err(e) => {
                notes.push(format!("spectral: {e}"));
                failed |= plan.spectral == Want::Required;
            }
        }
    }

    let mut exact = None;
    if plan.exact != Want::Skip {
        let applicable = z.as_exact().is_some();
        if !applicable && plan.exact == Want::Required {
            return Err(usage(format!(
                "the exact method needs a Gaussian-integer z, got z = {zs}"
            )));
        }
        if !applicable {
            notes.push(format!("exact: z = {zs} is not a Gaussian integer"));
        } else if plan.exact == Want::IfApplicable && n > plan.exact_max_n {
            notes.push(format!("exact: skipped for n > {}", plan.exact_max_n));
        } else {
            let start = Instant::now();
            match family_det(&params, Method::Exact) {
                Ok(Scalar::Exact(g)) => {
                    elapsed.exact = Some(micros(start));
                    exact = Some(g);
                }
                Ok(other) => notes.push(format!("exact: unexpected value {other}")),
                Err(e) => {
                    notes.push(format!("exact: {e}"));
                    failed |= plan.exact == Want::Required;
                }
            }
        }
    }

    let spectral_c = spectral.map(ComplexF::from);
    let mut agreement = Vec::new();
    if let (Some(c), Some(e)) = (&closed, &exact) {
        agreement.push(Agreement {
            pair: Pair::ClosedExact,
            agree: c == e,
            tolerance: 0.0,
        });
    }
    if let (Some(c), Some(s)) = (&closed, spectral_c) {
        agreement.push(Agreement {
            pair: Pair::ClosedSpectral,
            agree: relative_close(s, c.to_complex(), plan.rtol),
            tolerance: plan.rtol,
        });
    }
    if let (Some(s), Some(e)) = (spectral_c, &exact) {
        agreement.push(Agreement {
            pair: Pair::SpectralExact,
            agree: relative_close(s, e.to_complex(), plan.rtol),
            tolerance: plan.rtol,
        });
    }
    let agree = agreement.iter().all(|a| a.agree);
    Ok(Outcome {
        report: DetReport {
            n,
            z: z.clone(),
            orientation,
            closed_form: closed,
            case_tag,
            spectral,
            exact,
            agreement,
            agree,
            notes,
            elapsed_us: elapsed,
        },
        failed,
    })
}

/// Shortest round-trip decimal, switching to exponent form for very large or
/// very small magnitudes.
pub fn format_f64(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn format_complex(c: FloatScalar) -> String {
    let im = format_f64(c.im.abs());
    if c.im.is_sign_negative() {
        format!("{}-{}i", format_f64(c.re), im)
    } else {
        format!("{}+{}i", format_f64(c.re), im)
    }
}

#[derive(Serialize)]
struct CsvRow {
    n: usize,
    z: String,
    orientation: String,
    closed_form: String,
    spectral_re: String,
    spectral_im: String,
    exact: String,
    agree: String,
}

impl From<&DetReport> for CsvRow {
    fn from(r: &DetReport) -> Self {
        let opt = |g: &Option<GaussInt>| g.as_ref().map(ToString::to_string).unwrap_or_default();
        CsvRow {
            n: r.n,
            z: format_z(&r.z),
            orientation: r.orientation.to_string(),
            closed_form: opt(&r.closed_form),
            spectral_re: r.spectral.map(|s| format_f64(s.re)).unwrap_or_default(),
            spectral_im: r.spectral.map(|s| format_f64(s.im)).unwrap_or_default(),
            exact: opt(&r.exact),
            agree: if r.agreement.is_empty() {
                String::new()
            } else {
                r.agree.to_string()
            },
        }
    }
}

fn write_csv(reports: &[DetReport], out: &mut dyn Write) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(CsvRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}

fn det_text(r: &DetReport) -> String {
    let mut s = String::new();
    let dash = || "-".to_string();
    let _ = writeln!(s, "n            {}", r.n);
    let _ = writeln!(s, "z            {}", format_z(&r.z));
    let _ = writeln!(s, "orientation  {}", r.orientation);
    let closed = match (&r.closed_form, r.case_tag) {
        (Some(v), Some(t)) => format!("{v}  [{t}]"),
        (Some(v), None) => v.to_string(),
        _ => dash(),
    };
    let _ = writeln!(s, "closed form  {closed}");
    let _ = writeln!(
        s,
        "spectral     {}",
        r.spectral.map(format_complex).unwrap_or_else(dash)
    );
    let _ = writeln!(
        s,
        "exact        {}",
        r.exact
            .as_ref()
            .map(ToString::to_string)
            .unwrap_or_else(dash)
    );
    for a in &r.agreement {
        let verdict = if a.agree { "agree" } else { "DISAGREE" };
        if a.tolerance == 0.0 {
            let _ = writeln!(s, "{:<19}  {verdict} (exact)", a.pair.label());
        } else {
            let _ = writeln!(
                s,
                "{:<19}  {verdict} (rtol {:e})",
                a.pair.label(),
                a.tolerance
            );
        }
    }
    for note in &r.notes {
        let _ = writeln!(s, "note: {note}");
    }
    s
}

pub fn cmd_det(args: &DetArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let z = parse_z(&args.z).map_err(|e| usage(format!("--z: {e}")))?;
    let rtol = resolve_rtol(args.rtol)?;
    let plan = Plan::from_methods(&args.methods, args.exact_max_n, rtol);
    let outcome = compute(args.n, &z, args.orientation.into(), &plan)?;
    let r = &outcome.report;
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, r)?;
            writeln!(out)?;
        }
        Format::Csv => write_csv(std::slice::from_ref(r), out)?,
        Format::Text => out.write_all(det_text(r).as_bytes())?,
    }
    if outcome.failed {
        for note in &r.notes {
            writeln!(err, "warning: {note}")?;
        }
    }
    Ok(outcome.exit_code())
}

fn table_text(reports: &[DetReport]) -> String {
    let header = [
        "n",
        "z",
        "orientation",
        "closed_form",
        "spectral",
        "exact",
        "agree",
    ];
    let rows: Vec<[String; 7]> = reports
        .iter()
        .map(|r| {
            let c = CsvRow::from(r);
            [
                c.n.to_string(),
                c.z,
                c.orientation,
                c.closed_form,
                r.spectral.map(format_complex).unwrap_or_default(),
                c.exact,
                c.agree,
            ]
        })
        .collect();
    let mut width = header.map(str::len);
    for row in &rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut s = String::new();
    let mut line = |cells: &[&str]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(s, "{}", parts.join("  ").trim_end());
    };
    line(&header);
    for row in &rows {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        line(&cells);
    }
    s
}

/// Computes every `(n, z, orientation)` cell, in parallel, in sorted order.
pub fn table_reports(
    n_min: usize,
    n_max: usize,
    zs: &[Scalar],
    orientations: &[Orientation],
    plan: &Plan,
) -> CliResult<Vec<DetReport>> {
    let cells: Vec<(usize, &Scalar, Orientation)> = (n_min..=n_max)
        .flat_map(|n| {
            zs.iter()
                .flat_map(move |z| orientations.iter().map(move |&o| (n, z, o)))
        })
        .collect();
    cells
        .into_par_iter()
        .map(|(n, z, o)| compute(n, z, o, plan).map(|out| out.report))
        .collect()
}

pub fn cmd_table(args: &TableArgs, out: &mut dyn Write) -> CliResult<i32> {
    if args.n_min < 1 || args.n_min > args.n_max || args.n_max > MAX_TABLE_N {
        return Err(usage(format!(
            "need 1 <= n-min <= n-max <= {MAX_TABLE_N}, got {}..{}",
            args.n_min, args.n_max
        )));
    }
    let zs = args
        .z_list
        .iter()
        .map(|t| parse_z(t).map_err(|e| usage(format!("--z '{t}': {e}"))))
        .collect::<CliResult<Vec<_>>>()?;
    if zs.is_empty() || args.orientations.is_empty() {
        return Err(usage("need at least one z and one orientation"));
    }
    let orientations: Vec<Orientation> = args.orientations.iter().map(|&o| o.into()).collect();
    let plan = Plan {
        closed: Want::IfApplicable,
        spectral: Want::IfApplicable,
        exact: Want::IfApplicable,
        exact_max_n: args.exact_max_n,
        rtol: resolve_rtol(args.rtol)?,
    };
    let reports = table_reports(args.n_min, args.n_max, &zs, &orientations, &plan)?;
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &reports)?;
            writeln!(out)?;
        }
        Format::Csv => write_csv(&reports, out)?,
        Format::Text => out.write_all(table_text(&reports).as_bytes())?,
    }
    Ok(if reports.iter().all(|r| r.agree) {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}
