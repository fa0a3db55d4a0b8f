//! Slice matrices of the symmetric coefficient tensor.
//!
//! For a homogeneous degree-d polynomial f the associated symmetric tensor is
//! `T = (1/d!)·∂^d f`, and a slice fixes d−2 indices. The decision pipeline
//! only ever needs the three distinguished slices T̄1, T̄2, T̄3 (all fixed
//! indices equal), which are exactly the ones readable from a blackbox with
//! O(n²d) evaluations. The full slice family is reserved for the brute-force
//! oracle on small dense instances.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::interp::{coeff_xi_pow, InterpError};
use crate::linalg::Matrix;
use crate::oracle::Oracle;
use crate::poly::{Poly, PolyError};
use crate::scalar::Rational;

/// Slices exceeding this count are refused by [`all_slices`]; use
/// [`all_slices_with_limit`] to override.
pub const DEFAULT_SLICE_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceError {
    DegreeTooSmall { degree: u32 },
    SizeGuardExceeded { slices: usize, limit: usize },
    NotHomogeneous,
    DimensionMismatch { expected: usize, got: usize },
    Interp(InterpError),
}

impl fmt::Display for SliceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceError::DegreeTooSmall { degree } => {
                write!(f, "slices need degree >= 3, got {degree}")
            }
            SliceError::SizeGuardExceeded { slices, limit } => {
                write!(f, "{slices} slices exceed the guard of {limit}")
            }
            SliceError::NotHomogeneous => {
                write!(f, "polynomial is not homogeneous of the declared degree")
            }
            SliceError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            SliceError::Interp(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SliceError {}

impl From<InterpError> for SliceError {
    fn from(e: InterpError) -> Self {
        SliceError::Interp(e)
    }
}

impl From<PolyError> for SliceError {
    fn from(_: PolyError) -> Self {
        SliceError::NotHomogeneous
    }
}

/// The three distinguished slices of a (possibly composed) polynomial.
/// For n = 2 the third repeats the first, for n = 1 both repeats do; the
/// downstream checks then degenerate gracefully.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceTriple {
    pub t1: Matrix,
    pub t2: Matrix,
    pub t3: Matrix,
}

/// All distinct slices of a dense polynomial, keyed by the nondecreasing
/// tuple of d−2 fixed indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceFamily {
    n: usize,
    d: u32,
    slices: BTreeMap<Vec<usize>, Matrix>,
}

/// d! / ∏ (multiplicity!) — the number of distinct orderings of a multiset.
pub(crate) fn orderings_count(indices: &[usize]) -> BigInt {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for &i in indices {
        *counts.entry(i).or_insert(0) += 1;
    }
    let mut num = BigInt::one();
    for m in 2..=indices.len() as u64 {
        num *= m;
    }
    let mut den = BigInt::one();
    for &c in counts.values() {
        for m in 2..=c {
            den *= m;
        }
    }
    num / den
}

/// Tensor entry `T_{i...i j k}` (d−2 copies of i): the coefficient of
/// `x_i^{d-2} x_j x_k` divided by the number of orderings of the index
/// multiset.
pub fn slice_entry(o: &Oracle, i: usize, j: usize, k: usize) -> Result<Rational, SliceError> {
    let d = o.degree();
    if d < 3 {
        return Err(SliceError::DegreeTooSmall { degree: d });
    }
    let coeff = coeff_xi_pow(o, i, j, k)?;
    let mut indices = vec![i; d as usize - 2];
    indices.push(j);
    indices.push(k);
    let mult = orderings_count(&indices);
    Ok(coeff / Rational::from_integer(mult))
}

/// Assembles T̄1, T̄2, T̄3 from `slice_entry` over the independent (j ≤ k)
/// entries. Consumes at most `10·n²·d` oracle calls.
pub fn slice_triple(o: &Oracle) -> Result<SliceTriple, SliceError> {
    let d = o.degree();
    if d < 3 {
        return Err(SliceError::DegreeTooSmall { degree: d });
    }
    let n = o.num_vars();
    let mut distinguished = Vec::with_capacity(3);
    for idx in 0..3usize {
        if idx < n {
            let mut m = Matrix::zero(n, n);
            for j in 0..n {
                for k in j..n {
                    let e = slice_entry(o, idx, j, k)?;
                    m.set(j, k, e.clone());
                    if j != k {
                        m.set(k, j, e);
                    }
                }
            }
            distinguished.push(m);
        } else {
            // missing distinguished slices repeat the first
            distinguished.push(distinguished[0].clone());
        }
    }
    let t3 = distinguished.pop().expect("three slices");
    let t2 = distinguished.pop().expect("two slices");
    let t1 = distinguished.pop().expect("one slice");
    Ok(SliceTriple { t1, t2, t3 })
}

fn nondecreasing_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; len];
    loop {
        out.push(current.clone());
        // next nondecreasing tuple
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if current[pos] + 1 < n {
                let v = current[pos] + 1;
                for slot in &mut current[pos..] {
                    *slot = v;
                }
                break;
            }
        }
    }
}

impl SliceFamily {
    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    /// Slice for an arbitrary index tuple (sorted internally).
    pub fn get(&self, indices: &[usize]) -> Option<&Matrix> {
        let mut key = indices.to_vec();
        key.sort_unstable();
        self.slices.get(&key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &Matrix)> {
        self.slices.iter()
    }

    /// Tensor entry for a full d-tuple of indices.
    pub fn tensor_entry(&self, indices: &[usize]) -> Option<Rational> {
        if indices.len() != self.d as usize {
            return None;
        }
        let mut key = indices.to_vec();
        key.sort_unstable();
        let (j, k) = (key[self.d as usize - 2], key[self.d as usize - 1]);
        key.truncate(self.d as usize - 2);
        let slice = self.slices.get(&key)?;
        Some(slice.get(j, k).clone())
    }
}

/// All `(n+d-3 choose d-2)` distinct slices of a dense polynomial, under the
/// default size guard.
pub fn all_slices(p: &Poly, d: u32) -> Result<SliceFamily, SliceError> {
    all_slices_with_limit(p, d, DEFAULT_SLICE_LIMIT)
}

/// Entry `(S_t)_{jk} = coeff(x^e) · ∏ e! / d!` where `e` is the exponent
/// vector of the monomial collecting `t, j, k`; this matches the `1/d!`
/// convention of the symmetric tensor literally.
pub fn all_slices_with_limit(p: &Poly, d: u32, limit: usize) -> Result<SliceFamily, SliceError> {
    if d < 3 {
        return Err(SliceError::DegreeTooSmall { degree: d });
    }
    p.check_homogeneous(d)?;
    let n = p.num_vars();
    let tuples = nondecreasing_tuples(n, d as usize - 2);
    if tuples.len() > limit {
        return Err(SliceError::SizeGuardExceeded {
            slices: tuples.len(),
            limit,
        });
    }
    let mut slices = BTreeMap::new();
    for t in tuples {
        let mut m = Matrix::zero(n, n);
        for j in 0..n {
            for k in j..n {
                let mut exps = vec![0u32; n];
                for &i in &t {
                    exps[i] += 1;
                }
                exps[j] += 1;
                exps[k] += 1;
                let coeff = p.coeff(&exps);
                let mut full = t.clone();
                full.push(j);
                full.push(k);
                let entry = coeff / Rational::from_integer(orderings_count(&full));
                m.set(j, k, entry.clone());
                if j != k {
                    m.set(k, j, entry);
                }
            }
        }
        slices.insert(t, m);
    }
    Ok(SliceFamily { n, d, slices })
}

fn all_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for i in 0..n {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// Slice family of `p(Ax)` computed from the transformation formula
/// `T_ī = Aᵀ·(Σ_j̄ ∏_m a[j_m][i_m] · S_j̄)·A`, never by expanding `p(Ax)`.
pub fn transform_slices(family: &SliceFamily, a: &Matrix) -> Result<SliceFamily, SliceError> {
    let n = family.n;
    if a.rows() != n || a.cols() != n {
        return Err(SliceError::DimensionMismatch {
            expected: n,
            got: a.rows(),
        });
    }
    let at = a.transpose();
    let len = family.d as usize - 2;
    let source_tuples = all_tuples(n, len);
    let mut slices = BTreeMap::new();
    for target in nondecreasing_tuples(n, len) {
        let mut d_mat = Matrix::zero(n, n);
        for j_tuple in &source_tuples {
            let mut weight = Rational::from_integer(BigInt::one());
            for (&jm, &im) in j_tuple.iter().zip(&target) {
                weight *= a.get(jm, im);
            }
            if num_traits::Zero::is_zero(&weight) {
                continue;
            }
            let mut key = j_tuple.clone();
            key.sort_unstable();
            let s = family.slices.get(&key).expect("source tuple present");
            d_mat = &d_mat + &s.scale(&weight);
        }
        slices.insert(target, &(&at * &d_mat) * a);
    }
    Ok(SliceFamily {
        n,
        d: family.d,
        slices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn paper_poly() -> Poly {
        Poly::from_terms(2, [(vec![3, 0], rat(2)), (vec![1, 2], rat(12))]).unwrap()
    }

    #[test]
    fn slice_entry_examples() {
        let cube =
            Oracle::from_poly(&Poly::homogeneous(2, 3, [(vec![3, 0], rat(1))]).unwrap()).unwrap();
        assert_eq!(slice_entry(&cube, 0, 0, 0).unwrap(), rat(1));

        let o = Oracle::from_poly(&paper_poly()).unwrap();
        assert_eq!(slice_entry(&o, 0, 1, 1).unwrap(), rat(4));

        let sym = Oracle::from_poly(&Poly::homogeneous(3, 3, [(vec![1, 1, 1], rat(6))]).unwrap())
            .unwrap();
        assert_eq!(slice_entry(&sym, 0, 1, 2).unwrap(), rat(1));
    }

    #[test]
    fn slice_triple_of_p3() {
        let o = Oracle::from_poly(&Poly::p_d(3, 3)).unwrap();
        let s = slice_triple(&o).unwrap();
        for i in 0..3 {
            let t = [&s.t1, &s.t2, &s.t3][i];
            for j in 0..3 {
                for k in 0..3 {
                    let want = if j == i && k == i { rat(1) } else { rat(0) };
                    assert_eq!(t.get(j, k), &want);
                }
            }
        }
    }

    #[test]
    fn slice_triple_of_single_cube_in_three_vars() {
        let p = Poly::homogeneous(3, 3, [(vec![3, 0, 0], rat(1))]).unwrap();
        let s = slice_triple(&Oracle::from_poly(&p).unwrap()).unwrap();
        assert_eq!(s.t1.get(0, 0), &rat(1));
        assert!(s.t2.is_zero());
        assert!(s.t3.is_zero());
    }

    #[test]
    fn slice_triple_duplication_rule_n2() {
        let o = Oracle::from_poly(&paper_poly()).unwrap();
        let s = slice_triple(&o).unwrap();
        assert_eq!(s.t1, Matrix::from_i64(2, 2, &[2, 0, 0, 4]));
        assert_eq!(s.t2, Matrix::from_i64(2, 2, &[0, 4, 4, 0]));
        assert_eq!(s.t3, s.t1);
    }

    #[test]
    fn slice_triple_call_budget() {
        for (n, d) in [(2usize, 3u32), (3, 3), (3, 5), (4, 4)] {
            let o = Oracle::from_poly(&Poly::p_d(n, d)).unwrap();
            let before = o.calls();
            slice_triple(&o).unwrap();
            let spent = o.calls() - before;
            let budget = 10 * (n as u64) * (n as u64) * d as u64;
            assert!(spent <= budget, "n={n} d={d}: {spent} > {budget}");
        }
    }

    #[test]
    fn all_slices_of_power_sum() {
        let fam = all_slices(&Poly::power_sum(3, 4, &[rat(2), rat(3), rat(5)]), 4).unwrap();
        assert_eq!(fam.len(), 6); // multisets of size 2 from 3 symbols
        for (t, m) in fam.iter() {
            if t[0] == t[1] {
                let alpha = [rat(2), rat(3), rat(5)][t[0]].clone();
                for j in 0..3 {
                    for k in 0..3 {
                        let want = if j == t[0] && k == t[0] {
                            alpha.clone()
                        } else {
                            rat(0)
                        };
                        assert_eq!(m.get(j, k), &want);
                    }
                }
            } else {
                assert!(m.is_zero(), "mixed-index slice must vanish");
            }
        }
    }

    #[test]
    fn all_slices_of_x1x1x2() {
        let p = Poly::homogeneous(2, 3, [(vec![2, 1], rat(1))]).unwrap();
        let fam = all_slices(&p, 3).unwrap();
        let s1 = fam.get(&[0]).unwrap();
        assert_eq!(s1.get(0, 1), &ratio(1, 3));
        assert_eq!(s1.get(1, 0), &ratio(1, 3));
        assert_eq!(s1.get(0, 0), &rat(0));
        let s2 = fam.get(&[1]).unwrap();
        assert_eq!(s2.get(0, 0), &ratio(1, 3));
        assert!(s2.get(1, 1).eq(&rat(0)));
    }

    #[test]
    fn all_slices_of_zero() {
        let fam = all_slices(&Poly::zero(2), 4).unwrap();
        assert_eq!(fam.len(), 3);
        assert!(fam.iter().all(|(_, m)| m.is_zero()));
    }

    #[test]
    fn size_guard() {
        let p = Poly::p_d(5, 8);
        assert!(matches!(
            all_slices(&p, 8),
            Err(SliceError::SizeGuardExceeded { .. })
        ));
        assert!(all_slices_with_limit(&p, 8, 1000).is_ok());
    }

    #[test]
    fn triple_matches_family_on_dense_input() {
        let p = Poly::from_terms(
            3,
            [
                (vec![4, 0, 0], rat(1)),
                (vec![2, 1, 1], rat(-2)),
                (vec![1, 1, 2], rat(3)),
                (vec![0, 4, 0], rat(5)),
            ],
        )
        .unwrap();
        let fam = all_slices(&p, 4).unwrap();
        let s = slice_triple(&Oracle::from_poly(&p).unwrap()).unwrap();
        for (idx, t) in [&s.t1, &s.t2, &s.t3].iter().enumerate() {
            let key = vec![idx, idx];
            let m = fam.get(&key).unwrap();
            assert_eq!(*t, m, "distinguished slice {idx}");
        }
    }

    #[test]
    fn transform_identity_is_noop() {
        let fam = all_slices(&paper_poly(), 3).unwrap();
        let t = transform_slices(&fam, &Matrix::identity(2)).unwrap();
        assert_eq!(fam, t);
    }

    #[test]
    fn transform_matches_expansion() {
        let polys = [
            paper_poly(),
            Poly::from_terms(2, [(vec![2, 1], rat(1)), (vec![0, 3], rat(-2))]).unwrap(),
            Poly::p_d(3, 4),
        ];
        let mats = [
            Matrix::from_i64(2, 2, &[1, 2, 3, -1]),
            Matrix::from_i64(2, 2, &[0, 1, 1, 1]),
            Matrix::from_i64(3, 3, &[1, 1, 0, 0, 2, -1, 1, 0, 1]),
        ];
        for (p, a) in polys.iter().zip(&mats) {
            if p.num_vars() != a.rows() {
                continue;
            }
            let d = p.homogeneous_degree().unwrap();
            let direct = all_slices(&p.substitute_linear(a).unwrap(), d).unwrap();
            let formula = transform_slices(&all_slices(p, d).unwrap(), a).unwrap();
            assert_eq!(direct, formula);
        }
    }

    #[test]
    fn transform_diagonal_scaling() {
        let fam = all_slices(&Poly::p_d(3, 3), 3).unwrap();
        let a = Matrix::from_i64(3, 3, &[2, 0, 0, 0, 1, 0, 0, 0, 1]);
        let t = transform_slices(&fam, &a).unwrap();
        assert_eq!(t.get(&[0]).unwrap().get(0, 0), &rat(8)); // c^3 in entry (1,1)
    }

    #[test]
    fn full_tuple_permutation_law() {
        let p = Poly::from_terms(
            2,
            [
                (vec![3, 1], rat(5)),
                (vec![2, 2], rat(-1)),
                (vec![1, 3], rat(2)),
            ],
        )
        .unwrap();
        let fam = all_slices(&p, 4).unwrap();
        // entry must only depend on the multiset of the full 4-tuple
        let base = fam.tensor_entry(&[0, 0, 1, 1]).unwrap();
        for perm in [[0, 1, 0, 1], [1, 1, 0, 0], [1, 0, 1, 0], [0, 1, 1, 0]] {
            assert_eq!(fam.tensor_entry(&perm).unwrap(), base);
        }
    }
}
