//! Library side of the `waring` command line tool: input loading, report
//! rendering, and the selftest suite. The binary in `main.rs` is a thin
//! argument-parsing wrapper.

pub mod input;
pub mod report;
pub mod selftest;

use std::path::PathBuf;

use waring_core::decide::{decide_equiv, FieldMode};
use waring_core::minvars::decide_waring;
use waring_core::oracle::Oracle;
use waring_core::reconstruct::{reconstruct, ReconstructError, ReconstructOutcome};
use waring_core::sampling::SampleConfig;

pub use report::OutputFormat;

/// Exit codes: accept/success, reject, usage or input error.
pub const EXIT_ACCEPT: i32 = 0;
pub const EXIT_REJECT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Decide,
    Minvars,
    Reconstruct,
    Selftest,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Decide => "decide",
            Command::Minvars => "minvars",
            Command::Reconstruct => "reconstruct",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub expr: Option<String>,
    pub input: Option<PathBuf>,
    pub mode: FieldMode,
    pub set_size: u64,
    pub seed: u64,
    pub trials: u32,
    pub format: OutputFormat,
}

/// Input or usage problem; always maps to exit code 2.
#[derive(Clone, Debug)]
pub struct CliError {
    pub message: String,
}

impl CliError {
    pub fn new(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
}

/// Runs one command; the returned text is the full standard-output report.
pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.command == Command::Selftest {
        return selftest::run(cfg);
    }
    let sample_cfg = SampleConfig::new(cfg.set_size, cfg.seed, cfg.trials)
        .map_err(|e| CliError::new(format!("invalid sampling parameters: {e}")))?;
    let (poly, source) = input::load(cfg)?;
    let degree = match poly.homogeneous_degree() {
        Some(d) if d >= 3 => d,
        Some(d) => {
            return Err(CliError::new(format!(
                "input must have degree at least 3, got {d}"
            )))
        }
        None if poly.is_zero() => {
            return Err(CliError::new(
                "the zero polynomial has no defined degree; nothing to decide",
            ))
        }
        None => return Err(CliError::new("input polynomial is not homogeneous")),
    };
    let oracle =
        Oracle::from_poly_with_degree(&poly, degree).expect("homogeneity was checked above");
    let meta = report::InputMeta {
        command: cfg.command,
        input: source,
        n: poly.num_vars(),
        degree,
    };
    match cfg.command {
        Command::Decide => {
            let decision = decide_equiv(&oracle, cfg.mode, &sample_cfg)
                .map_err(|e| CliError::new(format!("decision failed: {e}")))?;
            let exit = if decision.accepted() {
                EXIT_ACCEPT
            } else {
                EXIT_REJECT
            };
            Ok(Outcome {
                exit_code: exit,
                stdout: report::render_decision(&meta, &decision, cfg.format),
            })
        }
        Command::Minvars => {
            let mv = decide_waring(&oracle, cfg.mode, &sample_cfg)
                .map_err(|e| CliError::new(format!("variable minimization failed: {e}")))?;
            let exit = if mv.inner.accepted() {
                EXIT_ACCEPT
            } else {
                EXIT_REJECT
            };
            Ok(Outcome {
                exit_code: exit,
                stdout: report::render_minvars(&meta, &mv, cfg.format),
            })
        }
        Command::Reconstruct => match reconstruct(&oracle, cfg.mode, &sample_cfg) {
            Ok(ReconstructOutcome::Decomposition(dec)) => Ok(Outcome {
                exit_code: EXIT_ACCEPT,
                stdout: report::render_decomposition(&meta, &dec, cfg.format),
            }),
            Ok(ReconstructOutcome::Rejected(decision)) => Ok(Outcome {
                exit_code: EXIT_REJECT,
                stdout: report::render_decision(&meta, &decision, cfg.format),
            }),
            Err(ReconstructError::Failed { residual, attempts }) => Ok(Outcome {
                exit_code: EXIT_REJECT,
                stdout: report::render_failure(&meta, residual, attempts, cfg.format),
            }),
            Err(e) => Err(CliError::new(format!("reconstruction failed: {e}"))),
        },
        Command::Selftest => unreachable!("handled above"),
    }
}
