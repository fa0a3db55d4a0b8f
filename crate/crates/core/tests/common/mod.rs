//! Shared corpus builders for the integration suites.
#![allow(dead_code)] // each test target compiles its own copy

use rand_chacha::ChaCha8Rng;
use rand_core::RngCore;

use waring_core::linalg::Matrix;
use waring_core::poly::Poly;
use waring_core::scalar::{rat, Rational};

pub fn int_in(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    let span = (hi - lo + 1) as u64;
    lo + (rng.next_u64() % span) as i64
}

/// Random integer matrix with entries in [lo, hi], resampled until invertible.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| rat(int_in(rng, lo, hi)));
        if !m.det().unwrap().eq(&rat(0)) {
            return m;
        }
    }
}

pub fn degree_monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for e in 0..=d {
        for mut rest in degree_monomials(n - 1, d - e) {
            let mut v = vec![e];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Dense homogeneous polynomial with random coefficients in [-4, 4].
pub fn random_homogeneous(rng: &mut ChaCha8Rng, n: usize, d: u32) -> Poly {
    let terms: Vec<(Vec<u32>, Rational)> = degree_monomials(n, d)
        .into_iter()
        .map(|m| (m, rat(int_in(rng, -4, 4))))
        .collect();
    Poly::from_terms(n, terms).unwrap()
}

/// `Σ α_i · l_i^d` with r independent integer forms over `n >= r` ambient
/// variables; returns the polynomial plus the ground-truth pairs.
pub fn power_combination(
    rng: &mut ChaCha8Rng,
    n: usize,
    r: usize,
    d: u32,
    coeff_range: (i64, i64),
    form_range: (i64, i64),
) -> (Poly, Vec<(i64, Vec<i64>)>) {
    loop {
        let forms: Vec<Vec<i64>> = (0..r)
            .map(|_| {
                (0..n)
                    .map(|_| int_in(rng, form_range.0, form_range.1))
                    .collect()
            })
            .collect();
        let rank_probe = Matrix::from_fn(r, n, |i, j| rat(forms[i][j]));
        if rank_probe.rank() != r {
            continue;
        }
        let alphas: Vec<i64> = (0..r)
            .map(|_| loop {
                let a = int_in(rng, coeff_range.0, coeff_range.1);
                if a != 0 {
                    break a;
                }
            })
            .collect();
        let mut p = Poly::zero(n);
        for (alpha, form) in alphas.iter().zip(&forms) {
            let mut linear = Poly::zero(n);
            for (j, &c) in form.iter().enumerate() {
                linear = &linear + &Poly::var(n, j).scale(&rat(c));
            }
            p = &p + &linear.pow(d).scale(&rat(*alpha));
        }
        let truth = alphas.into_iter().zip(forms).collect();
        return (p, truth);
    }
}
