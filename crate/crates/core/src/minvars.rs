//! Variable minimization: count essential variables, build the change of
//! variables that isolates them, and decide decomposability into at most n
//! independent d-th powers by running the equivalence test on the restricted
//! polynomial.
//!
//! The derivative matrix `M[i][j] = ∂f/∂x_j(α_i)` at random points α_i has,
//! with high probability, the kernel of the partial-derivative span; its
//! dimension counts the redundant variables and its basis vectors become the
//! trailing columns of the change of variables.

use alloc::vec::Vec;
use core::fmt;

use crate::decide::{assemble_report, decide_equiv, DecideError, DecisionReport, FieldMode, Stage};
use crate::interp::{partial_eval, InterpError};
use crate::linalg::{complete_basis, LinalgError, Matrix};
use crate::oracle::{Oracle, OracleError};
use crate::sampling::{domain, SampleConfig};
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinvarsError {
    DegreeTooSmall { degree: u32 },
    Interp(InterpError),
    Linalg(LinalgError),
    Decide(DecideError),
    Oracle(OracleError),
}

impl fmt::Display for MinvarsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinvarsError::DegreeTooSmall { degree } => {
                write!(f, "variable minimization needs degree >= 3, got {degree}")
            }
            MinvarsError::Interp(e) => write!(f, "{e}"),
            MinvarsError::Linalg(e) => write!(f, "{e}"),
            MinvarsError::Decide(e) => write!(f, "{e}"),
            MinvarsError::Oracle(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for MinvarsError {}

impl From<InterpError> for MinvarsError {
    fn from(e: InterpError) -> Self {
        MinvarsError::Interp(e)
    }
}

impl From<LinalgError> for MinvarsError {
    fn from(e: LinalgError) -> Self {
        MinvarsError::Linalg(e)
    }
}

impl From<DecideError> for MinvarsError {
    fn from(e: DecideError) -> Self {
        MinvarsError::Decide(e)
    }
}

impl From<OracleError> for MinvarsError {
    fn from(e: OracleError) -> Self {
        MinvarsError::Oracle(e)
    }
}

/// Result of the minimization pipeline.
#[derive(Clone, Debug, PartialEq)]
pub struct MinvarsReport {
    /// Number of essential variables t.
    pub essential_count: usize,
    /// Invertible change of variables; its last n−t columns span the kernel
    /// of the derivative matrix.
    pub change_matrix: Matrix,
    /// Decision for the restricted polynomial in t variables.
    pub inner: DecisionReport,
    /// Probability bound for the kernel estimate being wrong: t(d−1)/|S|.
    pub error_bound_rank: f64,
}

/// `M[i][j] = ∂o/∂x_j` evaluated at α_i, via blackbox partial evaluation.
pub fn derivative_matrix(o: &Oracle, alphas: &[Vec<Rational>]) -> Result<Matrix, MinvarsError> {
    let n = o.num_vars();
    let mut m = Matrix::zero(alphas.len(), n);
    for (i, alpha) in alphas.iter().enumerate() {
        for j in 0..n {
            m.set(i, j, partial_eval(o, j, alpha)?);
        }
    }
    Ok(m)
}

/// Essential-variable count t and the change of variables A whose first t
/// columns complete the kernel basis greedily from the standard basis.
/// Correct with probability at least 1 − t(d−1)/|S|.
pub fn essential_count_and_basis(
    o: &Oracle,
    cfg: &SampleConfig,
) -> Result<(usize, Matrix), MinvarsError> {
    let n = o.num_vars();
    if n == 0 {
        return Ok((0, Matrix::identity(0)));
    }
    let mut rng = cfg.rng(domain::MINVARS_POINTS, 0);
    let alphas: Vec<Vec<Rational>> = (0..n)
        .map(|_| (0..n).map(|_| cfg.sample_rational(&mut rng)).collect())
        .collect();
    let m = derivative_matrix(o, &alphas)?;
    let kernel = m.kernel_basis();
    let t = n - kernel.len();
    let a = complete_basis(&kernel, n)?;
    Ok((t, a))
}

/// Decides whether the blackbox polynomial is a linear combination of at
/// most n d-th powers of linearly independent forms: restrict to the
/// essential variables and run the equivalence test there. t = 0 (the zero
/// polynomial) accepts trivially as the empty decomposition.
pub fn decide_waring(
    o: &Oracle,
    mode: FieldMode,
    cfg: &SampleConfig,
) -> Result<MinvarsReport, MinvarsError> {
    let d = o.degree();
    if d < 3 {
        return Err(MinvarsError::DegreeTooSmall { degree: d });
    }
    let calls_before = o.calls();
    let (t, a) = essential_count_and_basis(o, cfg)?;
    let inner = if t == 0 {
        let calls = o.calls() - calls_before;
        assemble_report(
            &o.restricted(&a, 0)?,
            mode,
            cfg,
            alloc::vec![Stage::Accepted; cfg.trials() as usize],
            calls,
            true,
        )
    } else {
        let restricted = o.restricted(&a, t)?;
        decide_equiv(&restricted, mode, cfg)?
    };
    let error_bound_rank = crate::decide::positive_bound(t, d, cfg.set_size());
    Ok(MinvarsReport {
        essential_count: t,
        change_matrix: a,
        inner,
        error_bound_rank,
    })
}
