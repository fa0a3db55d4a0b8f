//! Exact rational linear algebra.
//!
//! Determinants go through fraction-free Bareiss elimination on a
//! denominator-cleared integer matrix; inverses and kernels use rational
//! Gauss–Jordan. The characteristic polynomial is computed by
//! Faddeev–LeVerrier, which only divides by small integers and so stays exact.
//! Diagonalizability over the closure is decided by annihilation of the
//! square-free part of the characteristic polynomial; over ℝ a Sturm chain
//! additionally certifies that all its roots are real.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{rat, Rational};
use crate::unipoly::{UniPoly, UniPolyError};

/// Which field the diagonalizability test certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldMode {
    Complex,
    Real,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinalgError {
    NotSquare {
        rows: usize,
        cols: usize,
    },
    /// Signals the reject branch of the decision pipeline.
    Singular,
    /// `complete_basis` was given dependent vectors.
    DependentVectors,
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::NotSquare { rows, cols } => {
                write!(f, "matrix is {rows}x{cols}, not square")
            }
            LinalgError::Singular => write!(f, "matrix is singular"),
            LinalgError::DependentVectors => write!(f, "vectors are linearly dependent"),
            LinalgError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
        }
    }
}

impl core::error::Error for LinalgError {}

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![rat(0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, rat(1));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Row-major literal, handy in tests.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&e| rat(e)).collect(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Square matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Matrix::zero(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n);
            for (i, value) in col.iter().enumerate() {
                m.set(i, j, value.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.clone() * c).collect(),
        }
    }

    pub fn mat_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "mat_vec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = rat(0);
                for (j, x) in v.iter().enumerate() {
                    acc += self.get(i, j).clone() * x;
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Rational {
        debug_assert!(self.is_square());
        let mut acc = rat(0);
        for i in 0..self.rows {
            acc += self.get(i, i).clone();
        }
        acc
    }

    /// Exact determinant via fraction-free Bareiss elimination after clearing
    /// row denominators.
    pub fn det(&self) -> Result<Rational, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(rat(1));
        }
        // clear denominators row by row
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut lcm = BigInt::one();
            for j in 0..n {
                lcm = lcm.lcm(self.get(i, j).denom());
            }
            m.push(
                (0..n)
                    .map(|j| {
                        let e = self.get(i, j);
                        e.numer() * (&lcm / e.denom())
                    })
                    .collect(),
            );
            scale *= lcm;
        }
        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(rat(0)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev; // exact by Bareiss
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        Ok(Rational::new(
            m[n - 1][n - 1].clone() * BigInt::from(sign),
            scale,
        ))
    }

    /// Exact inverse by Gauss–Jordan; `Singular` when the determinant vanishes.
    pub fn invert(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(LinalgError::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.get(col, col).clone();
            let pinv = p.recip();
            a.scale_row(col, &pinv);
            inv.scale_row(col, &pinv);
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let factor = a.get(r, col).clone();
                    a.sub_scaled_row(r, col, &factor);
                    inv.sub_scaled_row(r, col, &factor);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Rational) {
        for j in 0..self.cols {
            let v = self.get(r, j).clone() * c;
            self.set(r, j, v);
        }
    }

    /// row_r -= c * row_src
    fn sub_scaled_row(&mut self, r: usize, src: usize, c: &Rational) {
        for j in 0..self.cols {
            let v = self.get(r, j).clone() - self.get(src, j).clone() * c;
            self.set(r, j, v);
        }
    }

    /// Reduced row echelon form; returns the pivot columns.
    fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row >= a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(p, row);
            let pinv = a.get(row, col).clone().recip();
            a.scale_row(row, &pinv);
            for r in 0..a.rows {
                if r != row && !a.get(r, col).is_zero() {
                    let factor = a.get(r, col).clone();
                    a.sub_scaled_row(r, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact basis of the right kernel; empty for full column rank.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_iter = pivots.iter().copied().enumerate();
        let mut pivot_of_col = vec![None; self.cols];
        for (row, col) in &mut pivot_iter {
            pivot_of_col[col] = Some(row);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![rat(0); self.cols];
            v[free] = rat(1);
            for col in 0..self.cols {
                if let Some(row) = pivot_of_col[col] {
                    v[col] = -r.get(row, free).clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Monic characteristic polynomial by the Faddeev–LeVerrier recurrence.
    pub fn charpoly(&self) -> Result<UniPoly, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut coeffs = vec![rat(0); n + 1];
        coeffs[n] = rat(1);
        let mut m = self.clone(); // M_1 = A
        for k in 1..=n {
            let c = -(m.trace() / rat(k as i64));
            coeffs[n - k] = c.clone();
            if k < n {
                let mut shifted = m;
                for i in 0..n {
                    let v = shifted.get(i, i).clone() + &c;
                    shifted.set(i, i, v);
                }
                m = self * &shifted;
            }
        }
        Ok(UniPoly::from_coeffs(coeffs))
    }
}

impl core::ops::Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        }
    }
}

impl core::ops::Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        }
    }
}

/// Integer matrix with the common denominator factored out.
fn cleared(m: &Matrix) -> (Vec<BigInt>, BigInt) {
    let mut lcm = BigInt::one();
    for e in &m.data {
        lcm = lcm.lcm(e.denom());
    }
    let data = m
        .data
        .iter()
        .map(|e| e.numer() * (&lcm / e.denom()))
        .collect();
    (data, lcm)
}

impl core::ops::Mul for &Matrix {
    type Output = Matrix;
    /// Clears denominators on both factors, multiplies over the integers,
    /// and reduces once per output entry.
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let (a, da) = cleared(self);
        let (b, db) = cleared(rhs);
        let den = da * db;
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc: BigInt = Zero::zero();
                for k in 0..self.cols {
                    acc += &a[i * self.cols + k] * &b[k * rhs.cols + j];
                }
                out.set(i, j, Rational::new(acc, den.clone()));
            }
        }
        out
    }
}

/// `AB - BA = 0`, exactly.
pub fn commutes(a: &Matrix, b: &Matrix) -> bool {
    assert!(
        a.is_square() && b.is_square() && a.rows() == b.rows(),
        "commutes: sizes differ"
    );
    (&(a * b) - &(b * a)).is_zero()
}

/// `p / gcd(p, p')`, monic.
pub fn squarefree_part(p: &UniPoly) -> Result<UniPoly, UniPolyError> {
    if p.is_zero() {
        return Err(UniPolyError::ZeroPolynomial);
    }
    let dp = p.derivative();
    if dp.is_zero() {
        // nonzero constant
        return Ok(UniPoly::constant(rat(1)));
    }
    let g = p.gcd(&dp);
    let (q, r) = p.divrem(&g).expect("gcd divides p");
    debug_assert!(r.is_zero());
    Ok(q.monic())
}

/// Evaluates `p` at a square matrix by Horner's rule.
pub fn eval_poly_at_matrix(p: &UniPoly, m: &Matrix) -> Matrix {
    assert!(m.is_square());
    let n = m.rows();
    let mut acc = Matrix::zero(n, n);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * m) + &Matrix::identity(n).scale(c);
    }
    acc
}

/// Sturm chain of a square-free polynomial: p, p', then negated remainders.
/// Computed over the integers with positive-scalar pseudo-remainders, so the
/// sign sequence is exactly that of the rational chain.
pub fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    use crate::unipoly::intpoly;
    let p0 = intpoly::from_unipoly(p);
    let p1 = intpoly::content_free(intpoly::derivative(&p0));
    let mut chain_int = vec![p0];
    if p1.is_empty() {
        return chain_int.iter().map(|v| intpoly::to_unipoly(v)).collect();
    }
    chain_int.push(p1);
    loop {
        let k = chain_int.len();
        let r = intpoly::prem_positive(&chain_int[k - 2], &chain_int[k - 1]);
        if r.is_empty() {
            break;
        }
        let neg: Vec<num_bigint::BigInt> = intpoly::content_free(r).iter().map(|c| -c).collect();
        chain_int.push(neg);
    }
    chain_int.iter().map(|v| intpoly::to_unipoly(v)).collect()
}

fn sign_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of a square-free polynomial, by sign
/// variations of the Sturm chain at -∞ and +∞.
pub fn sturm_count(p: &UniPoly) -> Result<usize, UniPolyError> {
    if p.is_zero() {
        return Err(UniPolyError::ZeroPolynomial);
    }
    let chain = sturm_chain(p);
    let sign_of = |x: &Rational| -> i8 {
        if x.is_zero() {
            0
        } else if x.is_positive() {
            1
        } else {
            -1
        }
    };
    let at_plus_inf = chain
        .iter()
        .map(|q| sign_of(q.leading_coeff().expect("chain entries nonzero")));
    let at_minus_inf = chain.iter().map(|q| {
        let s = sign_of(q.leading_coeff().expect("chain entries nonzero"));
        if q.degree().unwrap_or(0) % 2 == 1 {
            -s
        } else {
            s
        }
    });
    let vm = sign_variations(at_minus_inf);
    let vp = sign_variations(at_plus_inf);
    Ok(vm.saturating_sub(vp))
}

/// Diagonalizability test. In `Complex` mode the matrix must be annihilated
/// by the square-free part of its characteristic polynomial; in `Real` mode
/// every root of that square-free part must additionally be real, certified
/// by a Sturm count equal to its degree.
pub fn is_diagonalizable(m: &Matrix, mode: FieldMode) -> bool {
    let chi = m.charpoly().expect("square matrix");
    let pm = squarefree_part(&chi).expect("charpoly is nonzero");
    // a square-free characteristic polynomial forces a square-free minimal
    // polynomial, so annihilation holds by Cayley-Hamilton
    if pm.degree() != chi.degree() && !eval_poly_at_matrix(&pm, m).is_zero() {
        return false;
    }
    match mode {
        FieldMode::Complex => true,
        FieldMode::Real => {
            let deg = pm.degree().unwrap_or(0);
            sturm_count(&pm).expect("nonzero square-free part") == deg
        }
    }
}

/// Completes independent vectors `vs` to a basis of K^n. The result has the
/// completion vectors (drawn greedily from the standard basis, leftmost
/// first) as its first `n - vs.len()` columns and `vs` as its last columns.
pub fn complete_basis(vs: &[Vec<Rational>], n: usize) -> Result<Matrix, LinalgError> {
    for v in vs {
        if v.len() != n {
            return Err(LinalgError::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
    }
    if vs.len() > n {
        return Err(LinalgError::DependentVectors);
    }
    // incremental elimination over accepted vectors
    let mut reduced: Vec<(usize, Vec<Rational>)> = Vec::new(); // (pivot index, reduced vector)
    let try_insert = |v: &[Rational], reduced: &mut Vec<(usize, Vec<Rational>)>| -> bool {
        let mut w = v.to_vec();
        for (p, r) in reduced.iter() {
            if !w[*p].is_zero() {
                let factor = w[*p].clone() / &r[*p];
                for j in 0..n {
                    let delta = factor.clone() * &r[j];
                    w[j] -= delta;
                }
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                reduced.push((p, w));
                true
            }
            None => false,
        }
    };
    for v in vs {
        if !try_insert(v, &mut reduced) {
            return Err(LinalgError::DependentVectors);
        }
    }
    let mut completion: Vec<Vec<Rational>> = Vec::new();
    for i in 0..n {
        if completion.len() + vs.len() == n {
            break;
        }
        let mut e = vec![rat(0); n];
        e[i] = rat(1);
        if try_insert(&e, &mut reduced) {
            completion.push(e);
        }
    }
    debug_assert_eq!(completion.len() + vs.len(), n);
    let mut cols = completion;
    cols.extend(vs.iter().cloned());
    Ok(Matrix::from_columns(n, &cols))
}
