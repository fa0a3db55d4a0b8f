//! Numeric eigendecomposition for the reconstruction stage.
//!
//! The characteristic polynomial is computed exactly on a power-of-two
//! rescaling of the matrix, its roots are found by the Durand–Kerner
//! simultaneous iteration (polished with Newton steps), and eigenvectors
//! come from inverse iteration on the shifted matrix. Spectra whose minimum
//! relative eigenvalue gap falls under `gap_tol` are reported as degenerate
//! so the caller can retry with a fresh change of variables.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::linalg::Matrix;
use crate::scalar::Rational;

/// Relative eigenvalue gap under which the spectrum counts as degenerate.
pub const GAP_TOL: f64 = 1e-8;

const DK_MAX_ITER: usize = 500;
const DK_TOL: f64 = 1e-14;
// multiple roots only converge linearly; accept a loose cluster and let the
// gap check classify the spectrum as degenerate
const DK_LOOSE_TOL: f64 = 1e-6;
// gap threshold for loose-converged spectra, where root error sits near the
// sqrt(eps) noise floor
const DK_CLUSTER_TOL: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq)]
pub enum EigenError {
    /// Two eigenvalues are closer than `gap_tol`; retry with a fresh R.
    DegenerateSpectrum {
        min_gap: f64,
    },
    NonConvergence,
    NotSquare,
}

impl fmt::Display for EigenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenError::DegenerateSpectrum { min_gap } => {
                write!(
                    f,
                    "eigenvalue spectrum is degenerate (min relative gap {min_gap:.3e})"
                )
            }
            EigenError::NonConvergence => write!(f, "root iteration failed to converge"),
            EigenError::NotSquare => write!(f, "eigendecomposition needs a square matrix"),
        }
    }
}

impl core::error::Error for EigenError {}

/// Dense complex matrix, row-major and square in all uses here.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zero(n: usize) -> Self {
        ComplexMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_real(m: &Matrix) -> Self {
        assert!(m.is_square());
        let n = m.rows();
        ComplexMatrix {
            n,
            data: m
                .entries()
                .map(|e| Complex64::new(e.to_f64().unwrap_or(f64::NAN), 0.0))
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n);
        let mut out = ComplexMatrix::zero(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..self.n {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mat_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, x) in v.iter().enumerate() {
                    acc += self.get(i, j) * x;
                }
                acc
            })
            .collect()
    }

    /// Gauss–Jordan inverse with max-modulus pivoting; `None` when a pivot
    /// column collapses numerically.
    pub fn invert(&self) -> Option<ComplexMatrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = ComplexMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).max_by(|&r1, &r2| {
                a.get(r1, col)
                    .norm_sqr()
                    .total_cmp(&a.get(r2, col).norm_sqr())
            })?;
            if a.get(pivot, col).norm_sqr() == 0.0 {
                return None;
            }
            if pivot != col {
                for j in 0..n {
                    let (x, y) = (a.get(pivot, j), a.get(col, j));
                    a.set(pivot, j, y);
                    a.set(col, j, x);
                    let (x, y) = (inv.get(pivot, j), inv.get(col, j));
                    inv.set(pivot, j, y);
                    inv.set(col, j, x);
                }
            }
            let p = a.get(col, col);
            for j in 0..n {
                a.set(col, j, a.get(col, j) / p);
                inv.set(col, j, inv.get(col, j) / p);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j) - factor * a.get(col, j);
                    a.set(r, j, v);
                    let w = inv.get(r, j) - factor * inv.get(col, j);
                    inv.set(r, j, w);
                }
            }
        }
        Some(inv)
    }
}

/// All roots of the monic polynomial `z^deg + Σ low[i]·z^i`, by
/// Durand–Kerner iteration.
fn durand_kerner(low: &[f64]) -> Result<(Vec<Complex64>, bool), EigenError> {
    let deg = low.len();
    if deg == 0 {
        return Ok((Vec::new(), true));
    }
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for &c in low.iter().rev() {
            acc = acc * z + Complex64::new(c, 0.0);
        }
        acc
    };
    let radius = 1.0 + low.iter().map(|c| libm::fabs(*c)).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32 + 1) * radius).collect();
    let mut last_worst = f64::INFINITY;
    for _ in 0..DK_MAX_ITER {
        let mut worst = 0.0f64;
        for k in 0..deg {
            let zk = roots[k];
            let mut den = Complex64::new(1.0, 0.0);
            for (j, zj) in roots.iter().enumerate() {
                if j != k {
                    den *= zk - zj;
                }
            }
            if den.norm_sqr() == 0.0 {
                // collision between iterates; nudge and continue
                roots[k] += Complex64::new(1e-6 * radius, 1e-6 * radius);
                worst = f64::MAX;
                continue;
            }
            let delta = eval(zk) / den;
            roots[k] = zk - delta;
            let scale = 1.0f64.max(roots[k].norm());
            worst = worst.max(delta.norm() / scale);
        }
        last_worst = worst;
        if worst < DK_TOL {
            // Newton polish; p' = deg·z^{deg-1} + Σ_{i>=1} i·low[i]·z^{i-1}
            let dlow: Vec<f64> = low
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * i as f64)
                .collect();
            let deval = |z: Complex64| -> Complex64 {
                let mut acc = Complex64::new(deg as f64, 0.0);
                for &c in dlow.iter().rev() {
                    acc = acc * z + Complex64::new(c, 0.0);
                }
                acc
            };
            for r in roots.iter_mut() {
                for _ in 0..2 {
                    let d = deval(*r);
                    if d.norm_sqr() > 0.0 {
                        *r -= eval(*r) / d;
                    }
                }
            }
            return Ok((roots, true));
        }
    }
    if last_worst < DK_LOOSE_TOL {
        return Ok((roots, false));
    }
    Err(EigenError::NonConvergence)
}

/// Exponent e such that dividing the matrix by 2^e brings the largest entry
/// magnitude near 1.
fn scaling_exponent(m: &Matrix) -> i64 {
    let mut max_bits: i64 = 0;
    for e in m.entries() {
        if e.is_zero() {
            continue;
        }
        let bits = e.numer().abs().bits() as i64 - e.denom().bits() as i64;
        max_bits = max_bits.max(bits);
    }
    max_bits
}

fn pow2_rational(e: i64) -> Rational {
    use num_bigint::BigInt;
    use num_traits::One;
    let mut big = BigInt::one();
    big <<= e.unsigned_abs() as usize;
    if e >= 0 {
        Rational::from_integer(big)
    } else {
        Rational::new(BigInt::one(), big)
    }
}

/// Numeric eigenpairs of an exact rational matrix: the eigenvector matrix P
/// (columns ordered by eigenvalue, sorted by real then imaginary part) and
/// the eigenvalues. Fails with `DegenerateSpectrum` when the smallest
/// pairwise gap is below `GAP_TOL` relative to the spectral scale.
pub fn eigendecompose(m: &Matrix) -> Result<(ComplexMatrix, Vec<Complex64>), EigenError> {
    if !m.is_square() {
        return Err(EigenError::NotSquare);
    }
    let n = m.rows();
    if n == 0 {
        return Ok((ComplexMatrix::zero(0), Vec::new()));
    }
    // rescale by a power of two to keep the float conversion well ranged
    let shift = scaling_exponent(m);
    let scaled = m.scale(&pow2_rational(-shift));
    let chi = scaled.charpoly().map_err(|_| EigenError::NotSquare)?;
    // a repeated eigenvalue is visible exactly in the characteristic
    // polynomial, before any floating point enters
    let squarefree = crate::linalg::squarefree_part(&chi).expect("charpoly is nonzero");
    if squarefree.degree().unwrap_or(0) < n {
        return Err(EigenError::DegenerateSpectrum { min_gap: 0.0 });
    }
    let coeffs: Vec<f64> = chi.coeffs()[..n]
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(EigenError::NonConvergence);
    }
    let (mut eigenvalues, tight) = durand_kerner(&coeffs)?;
    eigenvalues.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    let spectral_scale = eigenvalues.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut min_gap = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            min_gap = min_gap.min((eigenvalues[i] - eigenvalues[j]).norm());
        }
    }
    let gap_threshold = if tight {
        GAP_TOL
    } else {
        GAP_TOL.max(DK_CLUSTER_TOL)
    };
    if n > 1 && min_gap < gap_threshold * spectral_scale {
        return Err(EigenError::DegenerateSpectrum {
            min_gap: min_gap / spectral_scale,
        });
    }

    let mc = ComplexMatrix::from_real(&scaled);
    let mut p = ComplexMatrix::zero(n);
    for (idx, lambda) in eigenvalues.iter().enumerate() {
        let v = eigenvector_for(&mc, *lambda)?;
        for (i, value) in v.into_iter().enumerate() {
            p.set(i, idx, value);
        }
    }

    let unscale = libm::exp2(shift as f64);
    let eigenvalues = eigenvalues.into_iter().map(|z| z * unscale).collect();
    Ok((p, eigenvalues))
}

/// Inverse iteration on (M - λI) from a fixed generic start vector.
fn eigenvector_for(m: &ComplexMatrix, lambda: Complex64) -> Result<Vec<Complex64>, EigenError> {
    let n = m.size();
    let mut shifted = m.clone();
    for i in 0..n {
        shifted.set(i, i, shifted.get(i, i) - lambda);
    }
    let lu = LuFactors::compute(&shifted);
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0 + 0.37 * i as f64, 0.21 + 0.11 * i as f64))
        .collect();
    normalize(&mut v);
    for _ in 0..3 {
        let mut w = lu.solve(&v);
        if w.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(EigenError::NonConvergence);
        }
        normalize(&mut w);
        v = w;
    }
    Ok(v)
}

fn normalize(v: &mut [Complex64]) {
    // prescale by the largest component so the squared norm cannot overflow
    let maxabs = v
        .iter()
        .map(|z| libm::fabs(z.re).max(libm::fabs(z.im)))
        .fold(0.0, f64::max);
    if maxabs == 0.0 || !maxabs.is_finite() {
        return;
    }
    for z in v.iter_mut() {
        *z /= maxabs;
    }
    let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
    if norm > 0.0 {
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
}

/// LU with partial pivoting; near-zero pivots are floored so the solve can
/// serve as an inverse-iteration step on a singular shift.
struct LuFactors {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
}

impl LuFactors {
    fn compute(m: &ComplexMatrix) -> LuFactors {
        let n = m.size();
        let mut lu: Vec<Complex64> = m.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        // complex division squares the pivot modulus, so the floor must stay
        // well clear of the underflow threshold
        let scale = m.data.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let floor = (scale * 1e-18).max(1e-120);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&a, &b| {
                    lu[a * n + col]
                        .norm_sqr()
                        .total_cmp(&lu[b * n + col].norm_sqr())
                })
                .expect("nonempty range");
            if pivot != col {
                perm.swap(pivot, col);
                for j in 0..n {
                    lu.swap(pivot * n + j, col * n + j);
                }
            }
            if lu[col * n + col].norm() < floor {
                lu[col * n + col] = Complex64::new(floor, 0.0);
            }
            let p = lu[col * n + col];
            for r in col + 1..n {
                let factor = lu[r * n + col] / p;
                lu[r * n + col] = factor;
                for j in col + 1..n {
                    let delta = factor * lu[col * n + j];
                    lu[r * n + j] -= delta;
                }
            }
        }
        LuFactors { n, lu, perm }
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&i| b[i]).collect();
        for i in 1..n {
            for j in 0..i {
                let delta = self.lu[i * n + j] * x[j];
                x[i] -= delta;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let delta = self.lu[i * n + j] * x[j];
                x[i] -= delta;
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }
}
