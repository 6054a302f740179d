//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p circdet-cli --test acceptance`.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use circdet::binomial::{exact_spec, float_row, pair_product, relative_close};
use circdet::{
    build_dense, closed_form_det, det_bareiss, det_exact_direct, eigenvalues_dft, exchange_factor,
    BinomialFamilyParams, CirculantSpec, ClosedFormResult, ComplexF, GaussInt, Method, Orientation,
    Scalar, UnitZ,
};
use circdet_cli::args::{Format, VerifyArgs};
use circdet_cli::verify::cmd_verify;

type Outcome = Result<String, String>;

/// Label, check, and runtime budget.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

const ORIENTATIONS: [Orientation; 2] = [Orientation::Right, Orientation::Left];

fn params(n: usize, z: UnitZ, o: Orientation) -> BinomialFamilyParams {
    BinomialFamilyParams::new(n, z.to_gauss(), o)
}

fn closed(n: usize, z: UnitZ, o: Orientation) -> GaussInt {
    closed_form_det(&params(n, z, o))
        .expect("closed form")
        .value
}

fn bareiss(n: usize, z: UnitZ, o: Orientation) -> GaussInt {
    det_bareiss(&build_dense(&exact_spec(&params(n, z, o)).unwrap())).unwrap()
}

fn g(re: i64, im: i64) -> GaussInt {
    GaussInt::new(re, im)
}

// n = 1 is included: [1, 64] gives the 512 cases, [2, 64] only 504
fn oracle_sweep() -> Outcome {
    let mut cases = 0;
    for n in 1..=64 {
        for z in UnitZ::ALL {
            for o in ORIENTATIONS {
                let (c, b) = (closed(n, z, o), bareiss(n, z, o));
                if c != b {
                    return Err(format!("n={n} z={z} {o}: closed {c} vs bareiss {b}"));
                }
                cases += 1;
            }
        }
    }
    if cases != 512 {
        return Err(format!("{cases} cases, expected 512"));
    }
    Ok(format!("{cases} cases equal"))
}

fn z_one_row() -> Outcome {
    for (n, v) in [(3, 4), (5, 16)] {
        let (c, b) = (
            closed(n, UnitZ::One, Orientation::Right),
            bareiss(n, UnitZ::One, Orientation::Right),
        );
        if c != g(v, 0) || b != g(v, 0) {
            return Err(format!("n={n}: closed {c}, bareiss {b}, expected {v}"));
        }
    }
    for n in 2..=64usize {
        let expect = if n % 2 == 1 {
            GaussInt::real(BigInt::from(1) << (n - 1))
        } else {
            GaussInt::zero()
        };
        let c = closed(n, UnitZ::One, Orientation::Right);
        if c != expect {
            return Err(format!("n={n}: closed {c}, expected {expect}"));
        }
    }
    Ok("n=3 -> 4, n=5 -> 16; 2^(n-1) / 0 pattern for n <= 64".into())
}

fn z_i_table() -> Outcome {
    let table = [
        (4, g(0, 0)),
        (5, g(-4, 0)),
        (6, g(32, 0)),
        (7, g(0, 8)),
        (8, g(0, 0)),
        (9, g(16, 0)),
        (10, g(512, 0)),
        (11, g(0, -32)),
    ];
    for (n, v) in &table {
        let (c, b) = (
            closed(*n, UnitZ::I, Orientation::Right),
            bareiss(*n, UnitZ::I, Orientation::Right),
        );
        if &c != v || &b != v {
            return Err(format!("n={n}: closed {c}, bareiss {b}, expected {v}"));
        }
    }
    Ok(format!("{} rows exact", table.len()))
}

fn spectral_consistency() -> Outcome {
    let mut worst = 0.0f64;
    for n in 2..=24 {
        for z in UnitZ::ALL {
            for o in ORIENTATIONS {
                let spec =
                    CirculantSpec::new(float_row(n, &Scalar::Exact(z.to_gauss())).unwrap(), o)
                        .unwrap();
                let s = circdet::det(&spec, Method::Spectral)
                    .map_err(|e| e.to_string())?
                    .to_complex();
                let e = bareiss(n, z, o).to_complex();
                let err = (s - e).norm() / e.norm().max(1.0);
                worst = worst.max(err);
                if err > 1e-6 {
                    return Err(format!("n={n} z={z} {o}: relative error {err:e}"));
                }
            }
        }
    }
    Ok(format!("worst relative error {worst:e}"))
}

fn trig_suite() -> Outcome {
    let reports = circdet::trig::check_all(50);
    if let Some((name, r)) = reports.iter().find(|(_, r)| !r.passed) {
        return Err(format!(
            "{name} k={}: error {:e} > {:e}",
            r.k, r.abs_error, r.tolerance
        ));
    }
    Ok(format!("{} identity instances", reports.len()))
}

fn lemmas() -> Outcome {
    let rtol = 1e-9;
    let mut count = 0;
    for n in 2..=33usize {
        let row = float_row(n, &Scalar::Exact(GaussInt::i())).unwrap();
        let l = eigenvalues_dft(&row).map_err(|e| e.to_string())?.values;
        let top = 2f64.powi(n as i32 - 1);
        if n <= 32 {
            for m in 1..n {
                let (num, lemma) = (l[m] * l[n - m], pair_product(n, m).unwrap());
                if !relative_close(num, lemma, rtol) {
                    return Err(format!("pair n={n} m={m}: {num} vs {lemma}"));
                }
                count += 1;
            }
        }
        if n % 2 == 1 {
            let expect = GaussInt::new(0, 2).pow(((n - 1) / 2) as u64).to_complex();
            if !relative_close(l[0], expect, rtol) {
                return Err(format!("lambda_0 n={n}: {} vs {expect}", l[0]));
            }
            count += 1;
        } else if n <= 32 {
            let prod = l[0] * l[n / 2];
            if !relative_close(prod, ComplexF::new(top, 0.0), rtol) {
                return Err(format!("lambda_0 lambda_n/2 n={n}: {prod}"));
            }
            count += 1;
        }
        if n % 4 == 0 && n <= 32 {
            if l[n / 4].norm() > rtol * top {
                return Err(format!("lambda_n/4 n={n}: {:e}", l[n / 4].norm()));
            }
            count += 1;
        }
    }
    Ok(format!("{count} lemma instances"))
}

fn left_right_random() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for idx in 0..100 {
        let n = rng.gen_range(1..=12usize);
        let row: Vec<GaussInt> = (0..n)
            .map(|_| GaussInt::new(rng.gen_range(-10..=10i64), rng.gen_range(-10..=10i64)))
            .collect();
        let r = det_exact_direct(&CirculantSpec::right(row.clone()).unwrap()).unwrap();
        let l = det_exact_direct(&CirculantSpec::left(row).unwrap()).unwrap();
        let expect = r.scale(&BigInt::from(exchange_factor(n)));
        if l != expect {
            return Err(format!("row {idx} (n={n}): left {l} vs {expect}"));
        }
    }
    Ok("100 seeded rows".into())
}

fn conjugation_and_cross() -> Outcome {
    for n in 2..=64 {
        for z in UnitZ::ALL {
            for o in ORIENTATIONS {
                let (d, dc) = (closed(n, z, o), closed(n, z.conj(), o));
                if dc != d.conj() {
                    return Err(format!("conjugation n={n} z={z} {o}: {dc} vs {}", d.conj()));
                }
            }
        }
        if closed(n, UnitZ::MinusI, Orientation::Right) != closed(n, UnitZ::I, Orientation::Left)
            || closed(n, UnitZ::I, Orientation::Right)
                != closed(n, UnitZ::MinusI, Orientation::Left)
        {
            return Err(format!("cross identity fails at n={n}"));
        }
    }
    Ok("n in [2, 64]".into())
}

fn negative_control() -> Outcome {
    let max_n = 24;
    let mut table: HashMap<(usize, UnitZ, Orientation), ClosedFormResult> = HashMap::new();
    for n in 1..=max_n {
        for z in UnitZ::ALL {
            for o in ORIENTATIONS {
                table.insert((n, z, o), closed_form_det(&params(n, z, o)).unwrap());
            }
        }
    }
    let args = VerifyArgs {
        max_n,
        seed: 42,
        rtol: Some(1e-6),
        format: Format::Text,
    };
    let run = |table: &HashMap<(usize, UnitZ, Orientation), ClosedFormResult>| {
        let provider = |p: &BinomialFamilyParams| {
            let z = UnitZ::from_scalar(&p.z)?;
            Ok(table[&(p.n, z, p.orientation)].clone())
        };
        let mut sink = Vec::new();
        cmd_verify(&args, &provider, &mut sink).map_err(|e| e.to_string())
    };
    let clean = run(&table)?;
    if clean != 0 {
        return Err(format!("untampered table exits {clean}"));
    }
    table
        .get_mut(&(7, UnitZ::I, Orientation::Right))
        .unwrap()
        .value = g(0, 9);
    let tampered = run(&table)?;
    if tampered != 2 {
        return Err(format!("tampered table exits {tampered}"));
    }
    Ok("untampered exits 0, tampered exits 2".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "1 oracle equivalence sweep",
            oracle_sweep,
            Some(Duration::from_secs(60)),
        ),
        ("2 z = 1 spot values", z_one_row, None),
        ("3 z = i case table", z_i_table, None),
        (
            "4 spectral consistency",
            spectral_consistency,
            Some(Duration::from_secs(5)),
        ),
        (
            "5 trig identity suite",
            trig_suite,
            Some(Duration::from_secs(1)),
        ),
        (
            "6 pair-product and special eigenvalues",
            lemmas,
            Some(Duration::from_secs(2)),
        ),
        (
            "7 left/right exchange on random rows",
            left_right_random,
            None,
        ),
        (
            "8 conjugation and cross identities",
            conjugation_and_cross,
            None,
        ),
        ("9 negative control", negative_control, None),
    ];
    let mut failures = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if took > b => Err(format!("over the {:.0?} budget", b)),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} ({:.2?})", took),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {name}: {detail} ({:.2?})", took);
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
