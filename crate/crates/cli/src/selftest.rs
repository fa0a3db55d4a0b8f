//! Built-in smoke suite: known positives, known negatives, agreement with
//! the deterministic full-slice oracle, and a reconstruction regression.

use waring_core::decide::{decide_equiv, decide_full_slices, FieldMode, Stage};
use waring_core::expr;
use waring_core::minvars::decide_waring;
use waring_core::oracle::Oracle;
use waring_core::poly::Poly;
use waring_core::reconstruct::{reconstruct, ReconstructOutcome};
use waring_core::sampling::SampleConfig;
use waring_core::scalar::rat;

use crate::{CliError, Outcome, RunConfig, EXIT_ACCEPT, EXIT_REJECT};

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        detail,
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let sample_cfg = SampleConfig::new(cfg.set_size, cfg.seed, cfg.trials)
        .map_err(|e| CliError::new(format!("invalid sampling parameters: {e}")))?;
    let mut checks = Vec::new();

    let paper = expr::parse("2*x1^3 + 12*x1*x2^2").expect("fixed expression parses");
    checks.push(check(
        "parse/serialize round trip",
        expr::parse(&expr::serialize(&paper)).as_ref() == Ok(&paper),
        expr::serialize(&paper),
    ));

    let paper_oracle = Oracle::from_poly(&paper).expect("homogeneous");
    for mode in [FieldMode::Real, FieldMode::Complex] {
        let report = decide_equiv(&paper_oracle, mode, &sample_cfg)
            .map_err(|e| CliError::new(format!("{e}")))?;
        checks.push(check(
            if mode == FieldMode::Real {
                "decide accepts 2x1^3+12x1x2^2 over R"
            } else {
                "decide accepts 2x1^3+12x1x2^2 over C"
            },
            report.accepted(),
            format!("stage {}", report.stage),
        ));
    }

    let p3 = Poly::p_d(3, 3);
    let report = decide_equiv(
        &Oracle::from_poly(&p3).unwrap(),
        FieldMode::Complex,
        &sample_cfg,
    )
    .map_err(|e| CliError::new(format!("{e}")))?;
    checks.push(check(
        "decide accepts x1^3+x2^3+x3^3",
        report.accepted(),
        format!("stage {}", report.stage),
    ));

    let neg = Poly::homogeneous(2, 3, [(vec![2, 1], rat(1))]).unwrap();
    let report = decide_equiv(
        &Oracle::from_poly(&neg).unwrap(),
        FieldMode::Complex,
        &sample_cfg,
    )
    .map_err(|e| CliError::new(format!("{e}")))?;
    checks.push(check(
        "decide rejects x1^2*x2",
        !report.accepted() && report.stage == Stage::NonDiagonalizable,
        format!("stage {}", report.stage),
    ));

    let single = Poly::homogeneous(3, 4, [(vec![4, 0, 0], rat(1))]).unwrap();
    let report = decide_equiv(
        &Oracle::from_poly(&single).unwrap(),
        FieldMode::Complex,
        &sample_cfg,
    )
    .map_err(|e| CliError::new(format!("{e}")))?;
    checks.push(check(
        "decide rejects x1^4 with redundant variables",
        !report.accepted() && report.stage == Stage::SingularT1,
        format!("stage {}", report.stage),
    ));

    match reconstruct(&paper_oracle, FieldMode::Real, &sample_cfg) {
        Ok(ReconstructOutcome::Decomposition(dec)) => {
            checks.push(check(
                "reconstruct recovers x1 +- sqrt(2) x2",
                dec.residual < 1e-9 && dec.real_forms && dec.terms.len() == 2,
                format!("residual {:.3e}", dec.residual),
            ));
        }
        other => {
            checks.push(check(
                "reconstruct recovers x1 +- sqrt(2) x2",
                false,
                format!("{other:?}"),
            ));
        }
    }

    let embedded = Poly::homogeneous(5, 3, [(vec![3, 0, 0, 0, 0], rat(1))]).unwrap();
    let mv = decide_waring(
        &Oracle::from_poly(&embedded).unwrap(),
        FieldMode::Complex,
        &sample_cfg,
    )
    .map_err(|e| CliError::new(format!("{e}")))?;
    checks.push(check(
        "minvars isolates one essential variable",
        mv.essential_count == 1 && mv.inner.accepted(),
        format!("t = {}", mv.essential_count),
    ));

    // agreement with the deterministic oracle on a small seeded corpus
    let mut agree = 0;
    let corpus_size = 16;
    for k in 0..corpus_size {
        let coeffs: Vec<i64> = (0..10)
            .map(|i| ((k * 31 + i * 17) % 9) as i64 - 4)
            .collect();
        let monos = [
            vec![3, 0, 0],
            vec![2, 1, 0],
            vec![2, 0, 1],
            vec![1, 2, 0],
            vec![1, 1, 1],
            vec![1, 0, 2],
            vec![0, 3, 0],
            vec![0, 2, 1],
            vec![0, 1, 2],
            vec![0, 0, 3],
        ];
        let p =
            Poly::from_terms(3, monos.iter().cloned().zip(coeffs.iter().map(|&c| rat(c)))).unwrap();
        if p.is_zero() {
            agree += 1;
            continue;
        }
        let full = decide_full_slices(&p, FieldMode::Complex)
            .map_err(|e| CliError::new(format!("{e}")))?;
        let rand = decide_equiv(
            &Oracle::from_poly_with_degree(&p, 3).unwrap(),
            FieldMode::Complex,
            &sample_cfg,
        )
        .map_err(|e| CliError::new(format!("{e}")))?;
        if full.verdict == rand.verdict {
            agree += 1;
        }
    }
    checks.push(check(
        "randomized test agrees with the full-slice oracle",
        agree == corpus_size,
        format!("{agree}/{corpus_size} instances"),
    ));

    let all_passed = checks.iter().all(|c| c.passed);
    let mut out = String::new();
    match cfg.format {
        crate::OutputFormat::Json => {
            #[derive(serde::Serialize)]
            struct CheckJson<'a> {
                name: &'a str,
                passed: bool,
                detail: &'a str,
            }
            #[derive(serde::Serialize)]
            struct SelftestJson<'a> {
                command: &'a str,
                seed: u64,
                set_size: u64,
                passed: bool,
                checks: Vec<CheckJson<'a>>,
            }
            let doc = SelftestJson {
                command: "selftest",
                seed: cfg.seed,
                set_size: cfg.set_size,
                passed: all_passed,
                checks: checks
                    .iter()
                    .map(|c| CheckJson {
                        name: c.name,
                        passed: c.passed,
                        detail: &c.detail,
                    })
                    .collect(),
            };
            out = serde_json::to_string_pretty(&doc).expect("serializable");
            out.push('\n');
        }
        crate::OutputFormat::Human => {
            for c in &checks {
                out.push_str(&format!(
                    "{} {} ({})\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                ));
            }
            out.push_str(&format!(
                "selftest: {}\n",
                if all_passed {
                    "all checks passed"
                } else {
                    "FAILURES"
                }
            ));
        }
    }
    Ok(Outcome {
        exit_code: if all_passed { EXIT_ACCEPT } else { EXIT_REJECT },
        stdout: out,
    })
}
