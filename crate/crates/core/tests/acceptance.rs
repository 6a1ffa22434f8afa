//! Acceptance gate: one test per criterion, each printing a single
//! `criterion-N: PASS` line (visible with `--nocapture`) when it holds.

use std::time::Instant;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kextremal::algebra::{Rational, Scalar};
use kextremal::identities::{
    ddvv_check, ddvv_equality_witness, lili_check, okumura_check, random_exact_form,
    run_identity_suites, run_lemma_suites, TrialConfig,
};
use kextremal::isoparametric::{
    enumerate_tori, extremality_residual, solve_g3, solve_g4, solve_g6, Classification, G4Kind,
};
use kextremal::pinching::{
    c1_prime, epsilon, sobolev_constants, verdict, EpsilonInputs, EpsilonVariant, Verdict,
};
use kextremal::tensors::catalog;

fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn scalar(text: &str) -> Scalar {
    text.parse().unwrap()
}

/// Half-integer exponents 1, 3/2, ..., 10.
fn k_grid() -> Vec<Rational> {
    (2..=20).map(|twice| rational(twice, 2)).collect()
}

#[test]
fn criterion_1_torus_identity() {
    let start = Instant::now();
    let mut seen = 0usize;
    for n in 2u32..=20 {
        let n_s = Scalar::from_int(n as i64);
        for k in k_grid() {
            let slope = Scalar::from_rational(
                Rational::new(BigInt::from(n), BigInt::from(2)) / &k
                    - Rational::from_integer(BigInt::from(1)),
            );
            for torus in enumerate_tori(n, &k) {
                // rho^2 = n + n(n/2k - 1) H^2, exactly.
                let expected = &n_s + &n_s * &slope * &torus.h_sq;
                assert_eq!(torus.rho_sq, expected, "n={n} m={} k={:?}", torus.m, k);
                let residual = extremality_residual(&torus.spectrum, &k).unwrap();
                assert!(residual.is_zero(), "n={n} m={} k={:?}", torus.m, k);
                seen += 1;
            }
        }
    }
    assert!(seen > 100, "enumeration grid unexpectedly sparse");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("criterion-1: PASS ({seen} tori, {elapsed:?})");
}

#[test]
fn criterion_2_closed_form_classifiers() {
    for m in [1u32, 2, 4, 8] {
        for k in k_grid() {
            match solve_g3(m, &k).unwrap() {
                Classification::AllExtremal { n } => {
                    assert_eq!(&k * rational(2, 1), rational(m as i64, 1));
                    assert_eq!(n, 3 * m);
                }
                Classification::Unique(iso) => {
                    let lambdas: Vec<Scalar> =
                        iso.spectrum.entries.iter().map(|(l, _)| l.clone()).collect();
                    assert_eq!(
                        lambdas,
                        vec![scalar("1*sqrt(3)"), Scalar::zero(), scalar("-1*sqrt(3)")]
                    );
                    assert!(lambdas.iter().all(Scalar::is_exact));
                }
            }
        }
    }
    for m in 1u32..=6 {
        for k in k_grid() {
            if &k * rational(2, 1) == rational(m as i64, 1) {
                continue;
            }
            match solve_g4(m, m, &k).unwrap().kind {
                G4Kind::Roots(roots) => {
                    assert_eq!(roots.len(), 1, "m={m} k={k:?}");
                    assert_eq!(roots[0].x, Scalar::from_int(4));
                    assert_eq!(roots[0].spectrum.lambda1, scalar("1+1*sqrt(2)"));
                    assert!(roots[0].spectrum.lambda1.is_exact());
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }
    for m in [1u32, 2] {
        for k in k_grid() {
            match solve_g6(m, &k).unwrap() {
                Classification::AllExtremal { .. } => {
                    assert_eq!(&k * rational(2, 1), rational(m as i64, 1));
                }
                Classification::Unique(iso) => {
                    assert_eq!(iso.lambda1, scalar("2+1*sqrt(3)"));
                    assert!(iso.lambda1.is_exact());
                }
            }
        }
    }
    println!("criterion-2: PASS");
}

#[test]
fn criterion_3_g4_generic_case() {
    match solve_g4(4, 5, &rational(1, 1)).unwrap().kind {
        G4Kind::Roots(roots) => {
            assert_eq!(roots.len(), 1);
            assert_eq!(roots[0].x, scalar("5/14+1/14*sqrt(5485)"));
            let residual =
                extremality_residual(&roots[0].spectrum.spectrum, &rational(1, 1)).unwrap();
            assert!(residual.to_f64().abs() < 1e-10);
        }
        other => panic!("unexpected {other:?}"),
    }
    match solve_g4(4, 5, &rational(2, 1)).unwrap().kind {
        G4Kind::Roots(roots) => assert!(roots.is_empty()),
        other => panic!("unexpected {other:?}"),
    }
    // Trichotomy: for m1 < m2, zero positive roots exactly when the window
    // m1 <= 2k <= m2 holds (sign analysis of the quadratic's coefficients).
    for m1 in 1u32..10 {
        for m2 in (m1 + 1)..=10 {
            for k_int in 1i64..=8 {
                let k = rational(k_int, 1);
                let expected = if 2 * k_int >= m1 as i64 && 2 * k_int <= m2 as i64 {
                    0
                } else {
                    1
                };
                match solve_g4(m1, m2, &k).unwrap().kind {
                    G4Kind::Roots(roots) => {
                        assert_eq!(roots.len(), expected, "m1={m1} m2={m2} k={k_int}")
                    }
                    G4Kind::AllExtremal { .. } => panic!("degenerate case needs m1=m2"),
                }
            }
        }
    }
    println!("criterion-3: PASS");
}

#[test]
fn criterion_4_saturation_suite() {
    for m in 1u32..=6 {
        let model = catalog::clifford(m, m).unwrap();
        let report = verdict(&model, &rational(1, 1)).unwrap();
        let n = 2 * m;
        assert_eq!(report.rho_sq, Scalar::from_int(n as i64));
        assert_eq!(report.c3, Scalar::from_int(n as i64));
        assert_eq!(report.scal_verdict, Verdict::Saturated);
        assert!(report.k_min.is_zero() && report.k_min.is_exact());
        assert!(report.c1.is_zero());
        assert_eq!(report.sec_verdict, Verdict::Saturated);
    }

    let veronese = catalog::veronese_surface();
    let summary = veronese.curvature_summary();
    assert_eq!(summary.s, scalar("4/3")); // = n/(2 - 1/p) at n = p = 2
    assert_eq!(summary.k_min_exact, Some(scalar("1/3")));
    assert_eq!(
        c1_prime(2, &Scalar::zero(), &Scalar::zero(), &rational(1, 1)).unwrap(),
        scalar("1/3")
    );
    let report = verdict(&veronese, &rational(1, 1)).unwrap();
    assert_eq!(report.c3, scalar("4/3"));
    assert_eq!(report.scal_verdict, Verdict::Saturated);
    let form = veronese.form();
    for (num, den) in [(1i64, 1i64), (3, 2), (2, 1)] {
        let residuals = form.reduced_el_residual(&rational(num, den)).unwrap();
        assert!(residuals.iter().all(Scalar::is_zero));
    }
    println!("criterion-4: PASS");
}

#[test]
fn criterion_5_lemma_suites() {
    let start = Instant::now();
    let config = TrialConfig {
        trials: 10_000,
        n_max: 6,
        p_max: 4,
        seed: 0xC0FFEE,
        entry_bound: 1.0,
        tolerance: 1e-9,
    };
    let reports = run_lemma_suites(&config);
    assert_eq!(reports.len(), 6);
    for report in &reports {
        assert!(
            report.pass,
            "{} violated by {} at {}",
            report.lemma, report.max_violation, report.worst_witness
        );
    }

    // Equality witnesses.
    let okumura = okumura_check(&[2.0, -1.0, -1.0], 0.0);
    assert!((okumura.lhs - okumura.rhs).abs() < 1e-12);
    let witness = ddvv_equality_witness(4, 3, 1.25, 42);
    let ddvv = ddvv_check(&witness, 0.0);
    assert!((ddvv.lhs - ddvv.rhs).abs() < 1e-12);
    let lili = lili_check(&witness, 0.0);
    assert!((lili.lhs - lili.rhs).abs() < 1e-12);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!("criterion-5: PASS ({elapsed:?})");
}

#[test]
fn criterion_6_tensor_identity_suites() {
    let config = TrialConfig {
        trials: 1_000,
        n_max: 5,
        p_max: 3,
        seed: 0xBEEF,
        entry_bound: 1.0,
        tolerance: 1e-10,
    };
    let reports = run_identity_suites(&config);
    assert_eq!(reports.len(), 7);
    for report in &reports {
        assert!(
            report.max_violation < 1e-10,
            "{}: {}",
            report.lemma,
            report.max_violation
        );
    }
    println!("criterion-6: PASS");
}

#[test]
fn criterion_7_epsilon_calculators() {
    // Worked example: n = 4, k = 1, H0 = 0, delta0 = 1 gives t2 = 1/24 and
    // eps2 = (1/4)(3/2) A(4, 1/24); re-derive A from first principles.
    let report = epsilon(&EpsilonInputs {
        variant: EpsilonVariant::Ricci,
        n: 4,
        p: 1,
        k: rational(1, 1),
        h0_sq: 0.0,
        delta0: 1.0,
    })
    .unwrap();
    let t2 = 1.0 / 24.0;
    assert!((report.t - t2).abs() < 1e-12 * t2);
    let pi = std::f64::consts::PI;
    let omega4 = pi * pi / 2.0;
    let c4 = 2f64.powi(4) * 5f64.powf(1.25) / (3.0 * omega4.powf(0.25));
    let a4 = 4.0 / (36.0 * (1.0 + t2) * c4 * c4);
    let expected = 0.25 * 1.5 * a4;
    assert!((report.value - expected).abs() < 1e-12 * expected);
    assert!((sobolev_constants(4, t2).unwrap().a - a4).abs() < 1e-12 * a4);

    // Monotonicity on a 10x10 grid: non-increasing in H0^2, non-decreasing in
    // delta0, for all five variants; strict where the variant depends on H0.
    let h0_grid: Vec<f64> = (0..10).map(|i| i as f64 * 0.5).collect();
    let d0_grid: Vec<f64> = (1..=10).map(|i| i as f64 * 0.3).collect();
    for variant in [
        EpsilonVariant::Sec,
        EpsilonVariant::SecN,
        EpsilonVariant::Ricci,
        EpsilonVariant::Scal,
        EpsilonVariant::ScalLowk,
    ] {
        let strict_h0 = variant != EpsilonVariant::ScalLowk;
        let eval = |h0_sq: f64, delta0: f64| {
            epsilon(&EpsilonInputs {
                variant,
                n: 6,
                p: 2,
                k: rational(2, 1),
                h0_sq,
                delta0,
            })
            .unwrap()
            .value
        };
        for &d0 in &d0_grid {
            for pair in h0_grid.windows(2) {
                let (lo, hi) = (eval(pair[0], d0), eval(pair[1], d0));
                if strict_h0 {
                    assert!(lo > hi, "{variant:?} H0 grid at d0={d0}");
                } else {
                    assert!(lo >= hi, "{variant:?} H0 grid at d0={d0}");
                }
            }
        }
        for &h0 in &h0_grid {
            for pair in d0_grid.windows(2) {
                let (lo, hi) = (eval(h0, pair[0]), eval(h0, pair[1]));
                assert!(lo <= hi, "{variant:?} d0 grid at h0^2={h0}");
            }
        }
    }
    println!("criterion-7: PASS");
}

#[test]
fn criterion_8_determinism() {
    let config = TrialConfig {
        trials: 500,
        n_max: 5,
        p_max: 3,
        seed: 7,
        entry_bound: 1.0,
        tolerance: 1e-9,
    };
    let first = serde_json::to_string(&run_lemma_suites(&config)).unwrap();
    let second = serde_json::to_string(&run_lemma_suites(&config)).unwrap();
    assert_eq!(first, second);

    // Seeded exact-form generation is stable too.
    let draw = |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let form = random_exact_form(&mut rng, 5, 3);
        serde_json::to_string(&form.invariants().rho_sq).unwrap()
    };
    assert_eq!(draw(3), draw(3));
    println!("criterion-8: PASS");
}
