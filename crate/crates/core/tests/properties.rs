//! Invariants of the arithmetic, the circulant machinery and the binomial
//! family, as property tests and exhaustive sweeps.

mod common;

use circdet::binomial::{binomial_eigenvalue, pair_product, relative_close};
use circdet::circulant::complex_powu;
use circdet::{
    build_dense, closed_form_det, coeff_vector, det_bareiss, det_exact_direct, det_via_eigen,
    eigenvalues_dft, exchange_factor, BinomialFamilyParams, CirculantSpec, ComplexF, GaussInt,
    Orientation, UnitZ,
};
use common::rel_err;
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

fn gauss(bound: i64) -> impl Strategy<Value = GaussInt> {
    (-bound..=bound, -bound..=bound).prop_map(|(a, b)| GaussInt::new(a, b))
}

fn gauss_row(bound: i64, max_n: usize) -> impl Strategy<Value = Vec<GaussInt>> {
    prop::collection::vec(gauss(bound), 1..=max_n)
}

fn to_complex(row: &[GaussInt]) -> Vec<ComplexF> {
    row.iter().map(GaussInt::to_complex).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in gauss(1_000_000), b in gauss(1_000_000), c in gauss(1_000_000)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn conj_is_ring_homomorphism(a in gauss(1_000_000), b in gauss(1_000_000)) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
    }

    #[test]
    fn pow_is_additive_in_exponent(a in gauss(50), e1 in 0u64..=64, e2 in 0u64..=64) {
        prop_assert_eq!(a.pow(e1 + e2), &a.pow(e1) * &a.pow(e2));
    }

    #[test]
    fn exact_div_inverts_mul(a in gauss(1_000_000), b in gauss(1_000_000)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rotation_permutes_rows(row in gauss_row(9, 12), shift in 0usize..12) {
        let n = row.len();
        let s = shift % n;
        let base = build_dense(&CirculantSpec::right(row.clone()).unwrap());
        // the first row of the shifted spec is row s of the base matrix
        let shifted_row = base.row(s).to_vec();
        let shifted = build_dense(&CirculantSpec::right(shifted_row).unwrap());
        for r in 0..n {
            prop_assert_eq!(shifted.row(r), base.row((r + s) % n));
        }
        // a cyclic shift of n rows by s has sign (-1)^{s(n-1)}
        let d = det_bareiss(&base).unwrap();
        let ds = det_bareiss(&shifted).unwrap();
        prop_assert_eq!(ds, if (s * (n - 1)) % 2 == 0 { d } else { -d });
    }

    #[test]
    fn spectral_agrees_with_exact(row in gauss_row(5, 16)) {
        let exact = det_bareiss(&build_dense(&CirculantSpec::right(row.clone()).unwrap())).unwrap();
        let spectral = det_via_eigen(&to_complex(&row)).unwrap();
        prop_assert!(rel_err(spectral, exact.to_complex()) <= 1e-8,
            "spectral {} exact {}", spectral, exact);
    }

    #[test]
    fn left_right_relation_is_exact(row in gauss_row(20, 12)) {
        let n = row.len();
        let right = det_exact_direct(&CirculantSpec::right(row.clone()).unwrap()).unwrap();
        let left = det_exact_direct(&CirculantSpec::left(row).unwrap()).unwrap();
        prop_assert_eq!(left, if exchange_factor(n) == 1 { right } else { -right });
    }

    #[test]
    fn lambda_zero_is_row_sum(row in prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 1..64)) {
        let row: Vec<ComplexF> = row.into_iter().map(|(a, b)| ComplexF::new(a, b)).collect();
        let sum: ComplexF = row.iter().sum();
        let l0 = eigenvalues_dft(&row).unwrap().values[0];
        prop_assert!((l0 - sum).norm() <= 1e-12 * sum.norm().max(f64::MIN_POSITIVE));
    }
}

#[test]
fn zero_row_has_zero_determinant() {
    for n in 1..=40 {
        let d = det_via_eigen(&vec![ComplexF::new(0.0, 0.0); n]).unwrap();
        assert_eq!(d, ComplexF::new(0.0, 0.0));
    }
}

fn unit_params(n: usize, z: UnitZ, o: Orientation) -> BinomialFamilyParams {
    BinomialFamilyParams::new(n, z.to_gauss(), o)
}

#[test]
fn closed_forms_match_bareiss_up_to_64() {
    for n in 2..=64 {
        for z in UnitZ::ALL {
            let row = coeff_vector(n, &z.to_gauss()).unwrap();
            for o in [Orientation::Right, Orientation::Left] {
                let exact = det_bareiss(&build_dense(&CirculantSpec::new(row.clone(), o).unwrap()))
                    .unwrap();
                let cf = closed_form_det(&unit_params(n, z, o)).unwrap();
                assert_eq!(cf.value, exact, "n={n} z={z} {o}");
            }
        }
    }
}

#[test]
fn left_closed_forms_rederived_from_right() {
    for n in 1..=200 {
        for z in UnitZ::ALL {
            let right = closed_form_det(&unit_params(n, z, Orientation::Right))
                .unwrap()
                .value;
            let left = closed_form_det(&unit_params(n, z, Orientation::Left))
                .unwrap()
                .value;
            let derived = if exchange_factor(n) == 1 {
                right
            } else {
                -right
            };
            assert_eq!(left, derived, "n={n} z={z}");
        }
    }
}

#[test]
fn spectral_matches_closed_forms_to_24() {
    for n in 2..=24 {
        for z in UnitZ::ALL {
            let row = to_complex(&coeff_vector(n, &z.to_gauss()).unwrap());
            let right = det_via_eigen(&row).unwrap();
            let cf = closed_form_det(&unit_params(n, z, Orientation::Right))
                .unwrap()
                .value;
            assert!(
                rel_err(right, cf.to_complex()) <= 1e-6,
                "n={n} z={z}: {right} vs {cf}"
            );
        }
    }
}

#[test]
fn eigenvalue_closed_form_matches_dft() {
    let zs = [
        ComplexF::new(1.0, 0.0),
        ComplexF::new(-1.0, 0.0),
        ComplexF::new(0.0, 1.0),
        ComplexF::new(0.0, -1.0),
        ComplexF::new(0.6, 0.8),
    ];
    for n in 2..=32 {
        for z in zs {
            let spectrum = eigenvalues_dft(&coeff_vector(n, &z).unwrap()).unwrap();
            for (m, dft) in spectrum.values.iter().enumerate() {
                let closed = binomial_eigenvalue(n, z, m).unwrap();
                // entries reach C(n-1, k) ~ 2^{n-1}; the DFT sum carries that absolute error
                let scale = 2f64.powi(n as i32 - 1).max(closed.norm());
                assert!(
                    (closed - dft).norm() <= 1e-8 * scale.max(1.0),
                    "n={n} z={z} m={m}"
                );
            }
        }
    }
}

#[test]
fn pair_products_match_eigenvalues() {
    let i = ComplexF::new(0.0, 1.0);
    for n in 2..=32 {
        for m in 1..n {
            let lm = binomial_eigenvalue(n, i, m).unwrap();
            let lnm = binomial_eigenvalue(n, i, n - m).unwrap();
            let pp = pair_product(n, m).unwrap();
            assert!(rel_err(lm * lnm, pp) <= 1e-9, "n={n} m={m}");
        }
    }
}

#[test]
fn special_eigenvalues() {
    let i = ComplexF::new(0.0, 1.0);
    for n in (3..=33).step_by(2) {
        let l0 = binomial_eigenvalue(n, i, 0).unwrap();
        let expected = GaussInt::new(0, 2).pow(((n - 1) / 2) as u64).to_complex();
        assert!(rel_err(l0, expected) <= 1e-9, "n={n}");
    }
    for n in (2..=32).step_by(2) {
        let prod =
            binomial_eigenvalue(n, i, 0).unwrap() * binomial_eigenvalue(n, i, n / 2).unwrap();
        assert!(
            rel_err(prod, ComplexF::new(2f64.powi(n as i32 - 1), 0.0)) <= 1e-9,
            "n={n}"
        );
    }
    for n in (4..=32).step_by(4) {
        let l = binomial_eigenvalue(n, i, n / 4).unwrap();
        assert!(l.norm() <= 1e-9 * 2f64.powi(n as i32 - 1), "n={n}");
    }
}

#[test]
fn coefficient_vector_shape() {
    for n in 1..=80 {
        let plus = coeff_vector(n, &GaussInt::one()).unwrap();
        let minus = coeff_vector(n, &GaussInt::new(-1, 0)).unwrap();
        let sum = plus.iter().fold(GaussInt::zero(), |acc, x| &acc + x);
        assert_eq!(sum, GaussInt::real(BigInt::one() << (n - 1)));
        for k in 0..n {
            assert_eq!(plus[k], plus[n - 1 - k]);
            let alt = if k % 2 == 0 {
                plus[k].clone()
            } else {
                -&plus[k]
            };
            assert_eq!(minus[k], alt);
        }
    }
}

#[test]
fn complex_pow_matches_repeated_multiplication() {
    let base = ComplexF::new(0.3, -1.1);
    let mut acc = ComplexF::new(1.0, 0.0);
    for e in 0..40u64 {
        assert!(relative_close(complex_powu(base, e), acc, 1e-13));
        acc *= base;
    }
}
