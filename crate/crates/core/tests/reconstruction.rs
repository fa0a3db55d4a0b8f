//! Corpus-level checks for the reconstruction stage: residual quality,
//! uniqueness up to permutation and scaling, and spectrum health.

mod common;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use waring_core::decide::FieldMode;
use waring_core::oracle::Oracle;
use waring_core::reconstruct::{reconstruct, ReconstructOutcome, RES_TOL};
use waring_core::sampling::SampleConfig;

/// Ground truth normalized the same way the implementation normalizes:
/// first significant coordinate scaled to one, coefficient absorbing c^d.
fn normalize_truth(truth: &[(i64, Vec<i64>)], d: u32) -> Vec<(f64, Vec<f64>)> {
    let mut out: Vec<(f64, Vec<f64>)> = truth
        .iter()
        .map(|(alpha, form)| {
            let c = *form
                .iter()
                .find(|&&x| x != 0)
                .expect("independent forms are nonzero") as f64;
            let scaled: Vec<f64> = form.iter().map(|&x| x as f64 / c).collect();
            (*alpha as f64 * libm::pow(c, d as f64), scaled)
        })
        .collect();
    out.sort_by(|a, b| {
        for (x, y) in a.1.iter().zip(&b.1) {
            let ord = x.total_cmp(y);
            if ord != std::cmp::Ordering::Equal {
                return ord;
            }
        }
        std::cmp::Ordering::Equal
    });
    out
}

#[test]
fn residual_and_uniqueness_on_full_rank_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let mut total = 0u32;
    let mut good_residual = 0u32;
    let mut degenerate = 0u32;
    for case in 0..40u64 {
        let n = 2 + (case % 4) as usize; // 2..=5
        let d = 3 + (case % 3) as u32; // 3..=5
        let (p, truth) = common::power_combination(&mut rng, n, n, d, (-4, 4), (-5, 5));
        let o = Oracle::from_poly_with_degree(&p, d).unwrap();
        let cfg = SampleConfig::with_seed(1000 + case);
        let out = reconstruct(&o, FieldMode::Real, &cfg).unwrap();
        let ReconstructOutcome::Decomposition(dec) = out else {
            panic!("positive instance rejected (case {case})");
        };
        total += 1;
        if dec.residual < RES_TOL {
            good_residual += 1;
        }
        degenerate += dec.degenerate_retries;

        // uniqueness up to permutation and scaling: match each ground-truth
        // term to its nearest recovered term (order among nearly-equal
        // leading coordinates is not stable under float sorting)
        let want = normalize_truth(&truth, d);
        assert_eq!(dec.terms.len(), want.len());
        let mut used = vec![false; dec.terms.len()];
        for (alpha, form) in &want {
            let ascale = 1.0f64.max(alpha.abs());
            let (best, dist) = dec
                .terms
                .iter()
                .enumerate()
                .filter(|(i, _)| !used[*i])
                .map(|(i, term)| {
                    let mut dist = (term.coefficient - Complex64::new(*alpha, 0.0)).norm() / ascale;
                    for (got, want) in term.form.iter().zip(form) {
                        dist = dist.max((got - Complex64::new(*want, 0.0)).norm());
                    }
                    (i, dist)
                })
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("term available");
            assert!(
                dist < 1e-6,
                "case {case}: no recovered term within 1e-6 of ({alpha}, {form:?}), best {dist}"
            );
            used[best] = true;
        }
    }
    // residual < 1e-6 in at least 95% of seeded runs
    assert!(
        good_residual * 100 >= total * 95,
        "only {good_residual}/{total} runs met the residual target"
    );
    // eigenvalue collisions are vanishingly rare at the default set size
    assert_eq!(degenerate, 0, "unexpected degenerate spectra");
}

#[test]
fn rejects_are_reported_not_fabricated() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for case in 0..10u64 {
        let p = common::random_homogeneous(&mut rng, 3, 3);
        if p.is_zero() {
            continue;
        }
        let o = Oracle::from_poly_with_degree(&p, 3).unwrap();
        let cfg = SampleConfig::with_seed(case);
        match reconstruct(&o, FieldMode::Complex, &cfg).unwrap() {
            ReconstructOutcome::Decomposition(dec) => {
                assert!(
                    dec.residual < RES_TOL,
                    "accepted decomposition must be verified"
                );
            }
            ReconstructOutcome::Rejected(report) => {
                assert!(!report.accepted());
            }
        }
    }
}
