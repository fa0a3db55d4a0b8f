//! Evaluation-blackbox abstraction with call accounting.
//!
//! A change of variables is realized lazily by transforming the query point,
//! never by expanding the composed polynomial, so the cost model stays the
//! blackbox one. Composed oracles share the parent's call counter: every
//! evaluation, wherever it enters the chain, is counted exactly once.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::scalar::Rational;

type ExactFn = dyn Fn(&[Rational]) -> Rational + Send + Sync;
type ComplexFn = dyn Fn(&[Complex64]) -> Complex64 + Send + Sync;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
    /// The backing polynomial is not homogeneous.
    NotHomogeneous,
    /// Degree cannot be inferred from the zero polynomial; use
    /// [`Oracle::from_poly_with_degree`].
    ZeroPolynomial,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::DimensionMismatch { expected, got } => {
                write!(f, "oracle expects {expected} coordinates, got {got}")
            }
            OracleError::NotHomogeneous => write!(f, "backing polynomial is not homogeneous"),
            OracleError::ZeroPolynomial => {
                write!(f, "cannot infer a degree for the zero polynomial")
            }
        }
    }
}

impl core::error::Error for OracleError {}

/// Blackbox access to a homogeneous degree-d polynomial in n variables.
///
/// The rational evaluator drives the whole decision path; the complex one is
/// only queried by the reconstruction stage (the blackbox lives over ℂ).
#[derive(Clone)]
pub struct Oracle {
    n: usize,
    d: u32,
    calls: Arc<AtomicU64>,
    exact: Arc<ExactFn>,
    complex: Arc<ComplexFn>,
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Oracle")
            .field("n", &self.n)
            .field("d", &self.d)
            .field("calls", &self.calls())
            .finish()
    }
}

impl Oracle {
    /// Wraps arbitrary evaluators. Both must compute the same homogeneous
    /// degree-`d` polynomial, exactly and over ℂ respectively.
    pub fn new(
        n: usize,
        d: u32,
        exact: impl Fn(&[Rational]) -> Rational + Send + Sync + 'static,
        complex: impl Fn(&[Complex64]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Oracle {
            n,
            d,
            calls: Arc::new(AtomicU64::new(0)),
            exact: Arc::new(exact),
            complex: Arc::new(complex),
        }
    }

    /// Oracle evaluating a dense homogeneous polynomial; the degree is
    /// inferred from the terms.
    pub fn from_poly(p: &Poly) -> Result<Self, OracleError> {
        match p.homogeneous_degree() {
            Some(d) => Oracle::from_poly_with_degree(p, d),
            None if p.is_zero() => Err(OracleError::ZeroPolynomial),
            None => Err(OracleError::NotHomogeneous),
        }
    }

    /// Like [`Oracle::from_poly`] with an explicit declared degree; the zero
    /// polynomial is accepted for any degree.
    pub fn from_poly_with_degree(p: &Poly, d: u32) -> Result<Self, OracleError> {
        if p.check_homogeneous(d).is_err() {
            return Err(OracleError::NotHomogeneous);
        }
        let n = p.num_vars();
        let plan = crate::poly::EvalPlan::new(p);
        let complex_p = p.clone();
        Ok(Oracle::new(
            n,
            d,
            move |v| plan.eval(v),
            move |v| {
                complex_p
                    .eval_complex(v)
                    .expect("arity checked by Oracle::eval_complex")
            },
        ))
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// Total evaluations so far, across all oracles sharing this counter.
    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, OracleError> {
        if point.len() != self.n {
            return Err(OracleError::DimensionMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        self.calls.fetch_add(1, Ordering::Relaxed);
        Ok((self.exact)(point))
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Result<Complex64, OracleError> {
        if point.len() != self.n {
            return Err(OracleError::DimensionMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        self.calls.fetch_add(1, Ordering::Relaxed);
        Ok((self.complex)(point))
    }

    /// Oracle on `vars` variables computing `v ↦ self(A·(v padded with
    /// zeros))`; the restriction step of variable minimization. The call
    /// counter is shared with `self`.
    pub fn restricted(&self, a: &Matrix, vars: usize) -> Result<Oracle, OracleError> {
        if a.rows() != self.n || a.cols() != self.n {
            return Err(OracleError::DimensionMismatch {
                expected: self.n,
                got: a.rows(),
            });
        }
        if vars > self.n {
            return Err(OracleError::DimensionMismatch {
                expected: self.n,
                got: vars,
            });
        }
        let n = self.n;
        let exact_parent = self.exact.clone();
        let a_exact = a.clone();
        let complex_parent = self.complex.clone();
        let a_complex: Vec<Complex64> = a
            .entries()
            .map(|e| Complex64::new(e.to_f64().unwrap_or(f64::NAN), 0.0))
            .collect();
        Ok(Oracle {
            n: vars,
            d: self.d,
            calls: self.calls.clone(),
            exact: Arc::new(move |v: &[Rational]| {
                let mut padded = v.to_vec();
                padded.resize(n, crate::scalar::rat(0));
                exact_parent(&a_exact.mat_vec(&padded))
            }),
            complex: Arc::new(move |v: &[Complex64]| {
                let mut padded = v.to_vec();
                padded.resize(n, Complex64::new(0.0, 0.0));
                let mut image = Vec::with_capacity(n);
                for i in 0..n {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (j, x) in padded.iter().enumerate() {
                        acc += a_complex[i * n + j] * x;
                    }
                    image.push(acc);
                }
                complex_parent(&image)
            }),
        })
    }

    /// `h` with `h(v) = self(R·v)`, realized by transforming the point.
    /// The call counter is shared with `self`.
    pub fn compose_linear(&self, r: &Matrix) -> Result<Oracle, OracleError> {
        if r.rows() != self.n || r.cols() != self.n {
            return Err(OracleError::DimensionMismatch {
                expected: self.n,
                got: r.rows(),
            });
        }
        let exact_parent = self.exact.clone();
        let r_exact = r.clone();
        let complex_parent = self.complex.clone();
        let r_complex: Vec<Complex64> = r
            .entries()
            .map(|e| Complex64::new(e.to_f64().unwrap_or(f64::NAN), 0.0))
            .collect();
        let n = self.n;
        Ok(Oracle {
            n,
            d: self.d,
            calls: self.calls.clone(),
            exact: Arc::new(move |v: &[Rational]| exact_parent(&r_exact.mat_vec(v))),
            complex: Arc::new(move |v: &[Complex64]| {
                let mut image = Vec::with_capacity(n);
                for i in 0..n {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (j, x) in v.iter().enumerate() {
                        acc += r_complex[i * n + j] * x;
                    }
                    image.push(acc);
                }
                complex_parent(&image)
            }),
        })
    }
}
