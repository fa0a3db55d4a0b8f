//! Recovery of the linear forms and coefficients once the decision path
//! accepts.
//!
//! The decision state stays exact; the single numeric step diagonalizes
//! T̄1⁻¹T̄2 = PΛP⁻¹. The forms are the rows of (PR)⁻¹ and the coefficient of
//! form i is the blackbox value at the i-th column of PR. Every candidate
//! decomposition is verified against exact blackbox values at random points;
//! a degenerate spectrum or an unconvincing residual triggers a retry with a
//! fresh change of variables.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::decide::{
    assemble_report, probe_zero, run_trial_with, DecideError, DecisionReport, FieldMode, Stage,
};
use crate::eigen::{eigendecompose, ComplexMatrix, EigenError};
use crate::oracle::{Oracle, OracleError};
use crate::sampling::{domain, random_matrix_stream, uniform, SampleConfig};
use crate::scalar::{rat, Rational};

/// Relative residual above which a candidate decomposition is rejected.
pub const RES_TOL: f64 = 1e-6;
/// Fresh draws of R after the first attempt.
pub const RETRY_MAX: u32 = 3;
/// Imaginary parts below this (relative) threshold are zeroed in real mode.
pub const REALIFY_TOL: f64 = 1e-8;

const VERIFY_POINTS: usize = 20;
const VERIFY_COORD_RANGE: u64 = 64;

/// One `α·⟨l, x⟩^d` summand.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coefficient: Complex64,
    pub form: Vec<Complex64>,
}

/// A verified decomposition into powers of independent linear forms,
/// canonically normalized: each form's first significant coordinate is 1,
/// terms sorted lexicographically by form coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub terms: Vec<Term>,
    /// Max relative error of the decomposition against exact blackbox values
    /// over the verification set.
    pub residual: f64,
    pub seed: u64,
    pub set_size: u64,
    /// Real mode only: every imaginary part vanished under the tolerance.
    pub real_forms: bool,
    /// Attempts consumed by degenerate spectra before success.
    pub degenerate_retries: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ReconstructOutcome {
    Decomposition(Decomposition),
    /// The decision path rejected; no decomposition exists (up to the
    /// single-trial error bound carried by the report).
    Rejected(DecisionReport),
}

#[derive(Clone, Debug, PartialEq)]
pub enum ReconstructError {
    DegreeTooSmall {
        degree: u32,
    },
    /// All attempts exhausted without a residual under `RES_TOL`.
    Failed {
        residual: f64,
        attempts: u32,
    },
    Numeric(EigenError),
    Decide(DecideError),
    Oracle(OracleError),
}

impl fmt::Display for ReconstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReconstructError::DegreeTooSmall { degree } => {
                write!(f, "reconstruction needs degree >= 3, got {degree}")
            }
            ReconstructError::Failed { residual, attempts } => {
                write!(f, "no decomposition with residual <= {RES_TOL:.1e} after {attempts} attempts (best {residual:.3e})")
            }
            ReconstructError::Numeric(e) => write!(f, "{e}"),
            ReconstructError::Decide(e) => write!(f, "{e}"),
            ReconstructError::Oracle(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ReconstructError {}

impl From<DecideError> for ReconstructError {
    fn from(e: DecideError) -> Self {
        ReconstructError::Decide(e)
    }
}

impl From<OracleError> for ReconstructError {
    fn from(e: OracleError) -> Self {
        ReconstructError::Oracle(e)
    }
}

/// Numeric eigenpairs of an exact matrix; see [`crate::eigen::eigendecompose`].
pub use crate::eigen::eigendecompose as eigendecompose_matrix;

/// Runs the decision path and, on acceptance, recovers the decomposition.
/// Retries with a fresh R (up to [`RETRY_MAX`] extra draws) on a degenerate
/// spectrum or a residual above [`RES_TOL`].
pub fn reconstruct(
    o: &Oracle,
    mode: FieldMode,
    cfg: &SampleConfig,
) -> Result<ReconstructOutcome, ReconstructError> {
    let d = o.degree();
    if d < 3 {
        return Err(ReconstructError::DegreeTooSmall { degree: d });
    }
    let n = o.num_vars();
    let mut degenerate_retries = 0u32;
    let mut best_residual = f64::INFINITY;
    for attempt in 0..=RETRY_MAX {
        let calls_before = o.calls();
        let r = random_matrix_stream(n, cfg, domain::RECONSTRUCT_RETRY, attempt as u64);
        let trial = run_trial_with(o, mode, r)?;
        if trial.stage != Stage::Accepted {
            let zero_input = trial.stage == Stage::SingularT1 && probe_zero(o, cfg);
            let calls = o.calls() - calls_before;
            let report = assemble_report(o, mode, cfg, alloc::vec![trial.stage], calls, zero_input);
            return Ok(ReconstructOutcome::Rejected(report));
        }
        // for n <= 2 an unlucky R can leave the accepted trial without an
        // invertible first slice; treat it like a degenerate draw
        let Some(quotient) = trial.quotient.as_ref() else {
            degenerate_retries += 1;
            continue;
        };
        let (p, _eigenvalues) = match eigendecompose(quotient) {
            Ok(pair) => pair,
            Err(EigenError::DegenerateSpectrum { .. }) => {
                degenerate_retries += 1;
                continue;
            }
            Err(e) => return Err(ReconstructError::Numeric(e)),
        };
        // f(x) = P_d'((P⁻¹R⁻¹)x): the forms are the rows of (RP)⁻¹ and the
        // coefficient of form i is the blackbox value at column i of R·P
        let rp = ComplexMatrix::from_real(&trial.r).mul(&p);
        let Some(rp_inv) = rp.invert() else {
            degenerate_retries += 1;
            continue;
        };
        let mut coefficients = Vec::with_capacity(n);
        for i in 0..n {
            coefficients.push(o.eval_complex(&rp.column(i))?);
        }
        let forms: Vec<Vec<Complex64>> = (0..n)
            .map(|i| (0..n).map(|j| rp_inv.get(i, j)).collect())
            .collect();
        let residual = verify_residual(o, &coefficients, &forms, d, cfg, attempt as u64)?;
        best_residual = best_residual.min(residual);
        if residual <= RES_TOL {
            let decomposition = finalize(
                coefficients,
                forms,
                d,
                mode,
                residual,
                cfg,
                degenerate_retries,
            );
            return Ok(ReconstructOutcome::Decomposition(decomposition));
        }
    }
    Err(ReconstructError::Failed {
        residual: best_residual,
        attempts: RETRY_MAX + 1,
    })
}

/// Max relative error of `Σ α_i ⟨l_i, v⟩^d` against exact blackbox values at
/// random small rational points promoted to floats.
fn verify_residual(
    o: &Oracle,
    coefficients: &[Complex64],
    forms: &[Vec<Complex64>],
    d: u32,
    cfg: &SampleConfig,
    attempt: u64,
) -> Result<f64, ReconstructError> {
    let n = o.num_vars();
    let mut rng = cfg.rng(domain::VERIFY_POINTS, attempt);
    let mut worst = 0.0f64;
    for _ in 0..VERIFY_POINTS {
        let point: Vec<Rational> = (0..n)
            .map(|_| rat(1 + uniform(&mut rng, VERIFY_COORD_RANGE) as i64))
            .collect();
        let exact = o.eval(&point)?.to_f64().unwrap_or(f64::INFINITY);
        let point_c: Vec<Complex64> = point
            .iter()
            .map(|x| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0))
            .collect();
        let mut approx = Complex64::new(0.0, 0.0);
        for (alpha, form) in coefficients.iter().zip(forms) {
            let mut dot = Complex64::new(0.0, 0.0);
            for (l, v) in form.iter().zip(&point_c) {
                dot += l * v;
            }
            approx += alpha * dot.powu(d);
        }
        let scale = 1.0f64.max(libm::fabs(exact));
        let err = (approx - Complex64::new(exact, 0.0)).norm() / scale;
        if !err.is_finite() {
            return Ok(f64::INFINITY);
        }
        worst = worst.max(err);
    }
    Ok(worst)
}

fn finalize(
    coefficients: Vec<Complex64>,
    forms: Vec<Vec<Complex64>>,
    d: u32,
    mode: FieldMode,
    residual: f64,
    cfg: &SampleConfig,
    degenerate_retries: u32,
) -> Decomposition {
    let mut terms: Vec<Term> = coefficients
        .into_iter()
        .zip(forms)
        .map(|(alpha, form)| normalize_term(alpha, form, d))
        .collect();
    terms.sort_by(|a, b| {
        for (x, y) in a.form.iter().zip(&b.form) {
            let ord = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
            if ord != core::cmp::Ordering::Equal {
                return ord;
            }
        }
        core::cmp::Ordering::Equal
    });
    let mut real_forms = false;
    if mode == FieldMode::Real {
        real_forms = true;
        for term in terms.iter_mut() {
            for v in term
                .form
                .iter_mut()
                .chain(core::iter::once(&mut term.coefficient))
            {
                if libm::fabs(v.im) <= REALIFY_TOL * 1.0f64.max(libm::fabs(v.re)) {
                    v.im = 0.0;
                } else {
                    real_forms = false;
                }
            }
        }
    }
    Decomposition {
        terms,
        residual,
        seed: cfg.seed(),
        set_size: cfg.set_size(),
        real_forms,
        degenerate_retries,
    }
}

/// Scales the form so its first significant coordinate is 1 and folds the
/// scale into the coefficient (`α ← α·c^d`).
fn normalize_term(alpha: Complex64, form: Vec<Complex64>, d: u32) -> Term {
    let max_norm = form.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pivot_idx = form.iter().position(|z| z.norm() > 1e-12 * max_norm);
    let pivot = pivot_idx
        .map(|i| form[i])
        .unwrap_or(Complex64::new(1.0, 0.0));
    let mut scaled: Vec<Complex64> = form.iter().map(|z| z / pivot).collect();
    if let Some(i) = pivot_idx {
        scaled[i] = Complex64::new(1.0, 0.0);
    }
    Term {
        coefficient: alpha * pivot.powu(d),
        form: scaled,
    }
}
