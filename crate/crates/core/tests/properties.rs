//! Randomized invariants across the exact layers.

mod common;

use proptest::prelude::*;

use waring_core::decide::{decide_equiv, decide_full_slices, FieldMode};
use waring_core::expr::{parse, serialize};
use waring_core::linalg::{eval_poly_at_matrix, squarefree_part, sturm_count, Matrix};
use waring_core::oracle::Oracle;
use waring_core::poly::Poly;
use waring_core::sampling::SampleConfig;
use waring_core::scalar::{rat, ratio, Rational};
use waring_core::slices::{all_slices, transform_slices};
use waring_core::unipoly::UniPoly;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

fn arb_poly(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, n), arb_rational()),
        0..=max_terms,
    )
    .prop_map(move |raw| {
        let terms = raw
            .into_iter()
            .filter(|(exps, _)| exps.iter().sum::<u32>() <= max_deg);
        Poly::from_terms(n, terms).unwrap()
    })
}

fn arb_matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-6i64..=6, n * n)
        .prop_map(move |entries| Matrix::from_fn(n, n, |i, j| rat(entries[i * n + j])))
}

/// Rebuilds the polynomial over exactly the variables it uses, so that
/// parsing its serialization reproduces it identically.
fn trim_vars(p: &Poly) -> Poly {
    let used = p
        .terms()
        .flat_map(|(m, _)| {
            m.exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, _)| i + 1)
        })
        .max()
        .unwrap_or(0);
    Poly::from_terms(
        used,
        p.terms()
            .map(|(m, c)| (m.exponents()[..used].to_vec(), c.clone())),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(p in arb_poly(3, 3, 4), q in arb_poly(3, 3, 4), r in arb_poly(3, 3, 4)) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        p in arb_poly(3, 4, 5),
        a in arb_matrix(3),
        v in prop::collection::vec(arb_rational(), 3),
    ) {
        let av = a.mat_vec(&v);
        prop_assert_eq!(
            p.substitute_linear(&a).unwrap().eval(&v).unwrap(),
            p.eval(&av).unwrap()
        );
    }

    #[test]
    fn parse_serialize_roundtrip(p in arb_poly(4, 5, 6)) {
        let trimmed = trim_vars(&p);
        prop_assert_eq!(parse(&serialize(&trimmed)).unwrap(), trimmed);
    }

    #[test]
    fn cayley_hamilton(m in arb_matrix(4)) {
        let chi = m.charpoly().unwrap();
        prop_assert!(eval_poly_at_matrix(&chi, &m).is_zero());
    }

    #[test]
    fn squarefree_is_coprime_with_derivative(
        roots in prop::collection::vec((-5i64..=5, 1u32..=3), 1..=3),
    ) {
        let mut p = UniPoly::constant(rat(1));
        for (r, mult) in &roots {
            let lin = UniPoly::from_coeffs(vec![rat(-r), rat(1)]);
            for _ in 0..*mult {
                p = &p * &lin;
            }
        }
        let sf = squarefree_part(&p).unwrap();
        let g = sf.gcd(&sf.derivative());
        prop_assert_eq!(g.degree(), Some(0));
        // distinct roots survive exactly once
        let distinct: std::collections::BTreeSet<i64> = roots.iter().map(|(r, _)| *r).collect();
        prop_assert_eq!(sf.degree(), Some(distinct.len()));
    }

    #[test]
    fn sturm_counts_real_roots_of_factored_polys(
        real_roots in prop::collection::btree_set(-6i64..=6, 0..=4),
        complex_pairs in prop::collection::vec(1i64..=5, 0..=2),
    ) {
        let mut p = UniPoly::constant(rat(1));
        for r in &real_roots {
            p = &p * &UniPoly::from_coeffs(vec![rat(-r), rat(1)]);
        }
        for c in &complex_pairs {
            p = &p * &UniPoly::from_coeffs(vec![rat(*c), rat(0), rat(1)]);
        }
        // p is square-free iff the quadratic factors are distinct; make them so
        prop_assume!({
            let mut sorted = complex_pairs.clone();
            sorted.sort_unstable();
            sorted.windows(2).all(|w| w[0] != w[1])
        });
        prop_assert_eq!(sturm_count(&p).unwrap(), real_roots.len());
    }

    #[test]
    fn oracle_composition_associates(
        a in arb_matrix(2),
        b in arb_matrix(2),
        v in prop::collection::vec(arb_rational(), 2),
    ) {
        let p = Poly::from_terms(2, [(vec![3, 0], rat(2)), (vec![1, 2], rat(12))]).unwrap();
        let o = Oracle::from_poly(&p).unwrap();
        let twice = o.compose_linear(&a).unwrap().compose_linear(&b).unwrap();
        let once = o.compose_linear(&(&a * &b)).unwrap();
        prop_assert_eq!(twice.eval(&v).unwrap(), once.eval(&v).unwrap());
    }

    #[test]
    fn slice_transform_matches_expansion(
        raw in prop::collection::vec((prop::collection::vec(0u32..=3, 3), -4i64..=4), 1..=5),
        a in arb_matrix(3),
    ) {
        let d = 3u32;
        let terms: Vec<(Vec<u32>, Rational)> = raw
            .into_iter()
            .filter(|(e, _)| e.iter().sum::<u32>() == d)
            .map(|(e, c)| (e, rat(c)))
            .collect();
        let p = Poly::from_terms(3, terms).unwrap();
        let direct = all_slices(&p.substitute_linear(&a).unwrap(), d).unwrap();
        let formula = transform_slices(&all_slices(&p, d).unwrap(), &a).unwrap();
        prop_assert_eq!(direct, formula);
    }

    #[test]
    fn blackbox_coefficient_reads_match_dense_reads(
        raw in prop::collection::vec((prop::collection::vec(0u32..=4, 3), (-6i64..=6, 1i64..=3)), 1..=6),
        d in 3u32..=5,
        i in 0usize..3,
        j in 0usize..3,
        k in 0usize..3,
    ) {
        let terms: Vec<(Vec<u32>, Rational)> = raw
            .into_iter()
            .filter(|(e, _)| e.iter().sum::<u32>() == d)
            .map(|(e, (num, den))| (e, ratio(num, den)))
            .collect();
        let p = Poly::from_terms(3, terms).unwrap();
        let o = Oracle::from_poly_with_degree(&p, d).unwrap();
        let mut exps = vec![0u32; 3];
        exps[i] += d - 2;
        exps[j] += 1;
        exps[k] += 1;
        prop_assert_eq!(
            waring_core::interp::coeff_xi_pow(&o, i, j, k).unwrap(),
            p.coeff(&exps)
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn decision_is_scale_invariant(
        seed in 0u64..=200,
        scale_num in 1i64..=9,
        negate in any::<bool>(),
    ) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand_core::SeedableRng>::seed_from_u64(seed);
        let p = common::random_homogeneous(&mut rng, 2, 3);
        prop_assume!(!p.is_zero());
        let c = if negate { rat(-scale_num) } else { ratio(scale_num, 5) };
        let cfg = SampleConfig::with_seed(seed);
        let base = decide_equiv(&Oracle::from_poly_with_degree(&p, 3).unwrap(), FieldMode::Complex, &cfg).unwrap();
        let scaled = decide_equiv(&Oracle::from_poly_with_degree(&p.scale(&c), 3).unwrap(), FieldMode::Complex, &cfg).unwrap();
        prop_assert_eq!(base.stage, scaled.stage);

        let full_base = decide_full_slices(&p, FieldMode::Complex).unwrap();
        let full_scaled = decide_full_slices(&p.scale(&c), FieldMode::Complex).unwrap();
        prop_assert_eq!(full_base.stage, full_scaled.stage);
    }
}
