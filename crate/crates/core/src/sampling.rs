//! Seeded sampling from the finite set S = {1, …, set_size} and the
//! randomized matrix-family commutativity test.
//!
//! All randomness flows through ChaCha8 streams derived from one seed, so
//! every report is reproducible across platforms. The stream layout is
//! `stream = (domain << 48) | index`:
//!
//! | domain | used for                                   | index        |
//! |--------|--------------------------------------------|--------------|
//! | 0      | change-of-variables matrix R               | trial number |
//! | 1      | variable-minimization sample points        | 0            |
//! | 2      | commutativity-test combinations            | trial number |
//! | 3      | reconstruction retries (fresh R)           | attempt      |
//! | 4      | reconstruction verification points         | attempt      |
//! | 5      | zero-input probe points                    | 0            |

use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::linalg::{commutes, Matrix};
use crate::scalar::{rat, Rational};

pub(crate) mod domain {
    pub const DECIDE_TRIAL: u64 = 0;
    pub const MINVARS_POINTS: u64 = 1;
    pub const COMMUTE_TEST: u64 = 2;
    pub const RECONSTRUCT_RETRY: u64 = 3;
    pub const VERIFY_POINTS: u64 = 4;
    pub const ZERO_PROBE: u64 = 5;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SamplingError {
    SetTooSmall { set_size: u64 },
    NoTrials,
}

impl fmt::Display for SamplingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SamplingError::SetTooSmall { set_size } => {
                write!(f, "set_size must be at least 2, got {set_size}")
            }
            SamplingError::NoTrials => write!(f, "trials must be at least 1"),
        }
    }
}

impl core::error::Error for SamplingError {}

/// Sampling parameters shared by the whole pipeline: the size of S, the
/// seed, and the repetition count for majority voting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    set_size: u64,
    seed: u64,
    trials: u32,
}

impl SampleConfig {
    /// Default |S| = 2³¹ drives all single-trial failure bounds below 1e-6
    /// for n, d up to 100.
    pub const DEFAULT_SET_SIZE: u64 = 1 << 31;

    pub fn new(set_size: u64, seed: u64, trials: u32) -> Result<Self, SamplingError> {
        if set_size < 2 {
            return Err(SamplingError::SetTooSmall { set_size });
        }
        if trials == 0 {
            return Err(SamplingError::NoTrials);
        }
        Ok(SampleConfig {
            set_size,
            seed,
            trials,
        })
    }

    pub fn with_seed(seed: u64) -> Self {
        SampleConfig {
            set_size: Self::DEFAULT_SET_SIZE,
            seed,
            trials: 1,
        }
    }

    pub fn set_size(&self) -> u64 {
        self.set_size
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn trials(&self) -> u32 {
        self.trials
    }

    pub(crate) fn rng(&self, domain: u64, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream((domain << 48) | index);
        rng
    }

    /// Uniform draw from S = {1, …, set_size}, by rejection so every value
    /// is exactly equally likely.
    pub(crate) fn sample(&self, rng: &mut ChaCha8Rng) -> u64 {
        let bound = self.set_size;
        let zone = (u64::MAX / bound) * bound;
        loop {
            let v = rng.next_u64();
            if v < zone {
                return 1 + v % bound;
            }
        }
    }

    pub(crate) fn sample_rational(&self, rng: &mut ChaCha8Rng) -> Rational {
        rat(self.sample(rng) as i64)
    }
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            set_size: Self::DEFAULT_SET_SIZE,
            seed: 0,
            trials: 1,
        }
    }
}

/// n×n matrix with i.i.d. uniform entries from S; deterministic given the
/// seed. This is exactly the matrix the decision pipeline uses for its
/// first trial.
pub fn random_matrix(n: usize, cfg: &SampleConfig) -> Matrix {
    random_matrix_for_trial(n, cfg, 0)
}

pub(crate) fn random_matrix_for_trial(n: usize, cfg: &SampleConfig, trial: u64) -> Matrix {
    random_matrix_stream(n, cfg, domain::DECIDE_TRIAL, trial)
}

pub(crate) fn random_matrix_stream(
    n: usize,
    cfg: &SampleConfig,
    domain: u64,
    index: u64,
) -> Matrix {
    let mut rng = cfg.rng(domain, index);
    Matrix::from_fn(n, n, |_, _| cfg.sample_rational(&mut rng))
}

/// Unbiased uniform draw from {0, …, bound-1}.
pub(crate) fn uniform(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    let zone = (u64::MAX / bound) * bound;
    loop {
        let v = rng.next_u64();
        if v < zone {
            return v % bound;
        }
    }
}

/// One round of the randomized family commutativity test: draws α, β from S,
/// forms the two linear combinations and checks their commutator exactly.
/// One-sided: a commuting family is always accepted.
pub fn family_commutes_randomized(family: &[Matrix], cfg: &SampleConfig) -> bool {
    family_commutes_trial(family, cfg, 0)
}

/// Same test on an explicit trial stream, for repeated independent runs.
pub fn family_commutes_trial(family: &[Matrix], cfg: &SampleConfig, trial: u64) -> bool {
    if family.is_empty() {
        return true;
    }
    let n = family[0].rows();
    assert!(
        family.iter().all(|m| m.rows() == n && m.cols() == n),
        "family members must be square of equal size"
    );
    let mut rng = cfg.rng(domain::COMMUTE_TEST, trial);
    let alphas: Vec<Rational> = (0..family.len())
        .map(|_| cfg.sample_rational(&mut rng))
        .collect();
    let betas: Vec<Rational> = (0..family.len())
        .map(|_| cfg.sample_rational(&mut rng))
        .collect();
    let mut a = Matrix::zero(n, n);
    let mut b = Matrix::zero(n, n);
    for ((m, alpha), beta) in family.iter().zip(&alphas).zip(&betas) {
        a = &a + &m.scale(alpha);
        b = &b + &m.scale(beta);
    }
    commutes(&a, &b)
}
