//! Report rendering. The structured format is a single JSON document with
//! fixed field names; the human format is derived from the same data. Given
//! the same seed and input, both are byte-identical across runs.

use serde::Serialize;

use waring_core::decide::{DecisionReport, FieldMode, Stage, Verdict};
use waring_core::minvars::MinvarsReport;
use waring_core::reconstruct::Decomposition;
use waring_core::scalar::format_rational;

use crate::Command;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Human,
    Json,
}

pub struct InputMeta {
    pub command: Command,
    pub input: String,
    pub n: usize,
    pub degree: u32,
}

fn mode_str(mode: FieldMode) -> &'static str {
    match mode {
        FieldMode::Complex => "complex",
        FieldMode::Real => "real",
    }
}

fn verdict_str(verdict: Verdict) -> &'static str {
    match verdict {
        Verdict::Accept => "accept",
        Verdict::Reject => "reject",
    }
}

#[derive(Serialize)]
struct DecisionJson<'a> {
    command: &'a str,
    input: &'a str,
    n: usize,
    degree: u32,
    mode: &'a str,
    seed: u64,
    set_size: u64,
    trials: u32,
    verdict: &'a str,
    stage: &'a str,
    error_bound_positive: f64,
    error_bound_negative: f64,
    oracle_calls: u64,
    trial_stages: Vec<&'a str>,
    zero_input: bool,
}

fn decision_json<'a>(meta: &'a InputMeta, d: &'a DecisionReport) -> DecisionJson<'a> {
    DecisionJson {
        command: meta.command.as_str(),
        input: &meta.input,
        n: meta.n,
        degree: meta.degree,
        mode: mode_str(d.mode),
        seed: d.seed,
        set_size: d.set_size,
        trials: d.trials,
        verdict: verdict_str(d.verdict),
        stage: d.stage.as_str(),
        error_bound_positive: d.error_bound_positive,
        error_bound_negative: d.error_bound_negative,
        oracle_calls: d.oracle_calls,
        trial_stages: d.trial_stages.iter().map(Stage::as_str).collect(),
        zero_input: d.zero_input,
    }
}

fn decision_human(meta: &InputMeta, d: &DecisionReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("command: {}\n", meta.command.as_str()));
    out.push_str(&format!(
        "input: {} (n = {}, degree = {})\n",
        meta.input, meta.n, meta.degree
    ));
    out.push_str(&format!("mode: {}\n", mode_str(d.mode)));
    out.push_str(&format!(
        "seed: {}  set size: {}  trials: {}\n",
        d.seed, d.set_size, d.trials
    ));
    out.push_str(&format!(
        "verdict: {} (stage: {})\n",
        verdict_str(d.verdict),
        d.stage
    ));
    if d.zero_input {
        out.push_str("note: input evaluated to zero on the probing set\n");
    }
    out.push_str(&format!(
        "error bounds per trial: miss a positive {:.3e}, accept a negative {:.3e}\n",
        d.error_bound_positive, d.error_bound_negative
    ));
    out.push_str(&format!("oracle calls: {}\n", d.oracle_calls));
    out
}

pub fn render_decision(meta: &InputMeta, d: &DecisionReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s =
                serde_json::to_string_pretty(&decision_json(meta, d)).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Human => decision_human(meta, d),
    }
}

#[derive(Serialize)]
struct MinvarsJson<'a> {
    command: &'a str,
    input: &'a str,
    n: usize,
    degree: u32,
    essential_count: usize,
    error_bound_rank: f64,
    change_matrix: Vec<Vec<String>>,
    restricted_decision: DecisionJson<'a>,
}

pub fn render_minvars(meta: &InputMeta, mv: &MinvarsReport, format: OutputFormat) -> String {
    let rows: Vec<Vec<String>> = (0..mv.change_matrix.rows())
        .map(|i| {
            (0..mv.change_matrix.cols())
                .map(|j| format_rational(mv.change_matrix.get(i, j)))
                .collect()
        })
        .collect();
    match format {
        OutputFormat::Json => {
            let inner_meta = InputMeta {
                command: meta.command,
                input: meta.input.clone(),
                n: mv.essential_count,
                degree: meta.degree,
            };
            let doc = MinvarsJson {
                command: meta.command.as_str(),
                input: &meta.input,
                n: meta.n,
                degree: meta.degree,
                essential_count: mv.essential_count,
                error_bound_rank: mv.error_bound_rank,
                change_matrix: rows,
                restricted_decision: decision_json(&inner_meta, &mv.inner),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Human => {
            let mut out = String::new();
            out.push_str(&format!("command: {}\n", meta.command.as_str()));
            out.push_str(&format!(
                "input: {} (n = {}, degree = {})\n",
                meta.input, meta.n, meta.degree
            ));
            out.push_str(&format!(
                "essential variables: {} (rank error bound {:.3e})\n",
                mv.essential_count, mv.error_bound_rank
            ));
            out.push_str(&format!(
                "decision on the restricted polynomial in {} variables:\n",
                mv.essential_count
            ));
            out.push_str(&format!(
                "  verdict: {} (stage: {})\n",
                verdict_str(mv.inner.verdict),
                mv.inner.stage
            ));
            out.push_str(&format!(
                "  error bounds per trial: miss a positive {:.3e}, accept a negative {:.3e}\n",
                mv.inner.error_bound_positive, mv.inner.error_bound_negative
            ));
            out.push_str(&format!("oracle calls: {}\n", mv.inner.oracle_calls));
            out
        }
    }
}

#[derive(Serialize)]
struct TermJson {
    coefficient: [f64; 2],
    form: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct DecompositionJson<'a> {
    command: &'a str,
    input: &'a str,
    n: usize,
    degree: u32,
    verdict: &'a str,
    seed: u64,
    set_size: u64,
    terms: Vec<TermJson>,
    residual: f64,
    real_forms: bool,
    degenerate_retries: u32,
}

pub fn render_decomposition(meta: &InputMeta, dec: &Decomposition, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let doc = DecompositionJson {
                command: meta.command.as_str(),
                input: &meta.input,
                n: meta.n,
                degree: meta.degree,
                verdict: "accept",
                seed: dec.seed,
                set_size: dec.set_size,
                terms: dec
                    .terms
                    .iter()
                    .map(|t| TermJson {
                        coefficient: [t.coefficient.re, t.coefficient.im],
                        form: t.form.iter().map(|z| [z.re, z.im]).collect(),
                    })
                    .collect(),
                residual: dec.residual,
                real_forms: dec.real_forms,
                degenerate_retries: dec.degenerate_retries,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Human => {
            let mut out = String::new();
            out.push_str(&format!("command: {}\n", meta.command.as_str()));
            out.push_str(&format!(
                "input: {} (n = {}, degree = {})\n",
                meta.input, meta.n, meta.degree
            ));
            out.push_str(&format!("seed: {}  set size: {}\n", dec.seed, dec.set_size));
            out.push_str(&format!("decomposition into {} terms:\n", dec.terms.len()));
            for (k, term) in dec.terms.iter().enumerate() {
                let form = term
                    .form
                    .iter()
                    .map(|z| format_complex(z.re, z.im))
                    .collect::<Vec<_>>()
                    .join(", ");
                out.push_str(&format!(
                    "  term {}: coefficient {}, form ({form})\n",
                    k + 1,
                    format_complex(term.coefficient.re, term.coefficient.im)
                ));
            }
            out.push_str(&format!("residual: {:.3e}\n", dec.residual));
            out.push_str(&format!("fully real decomposition: {}\n", dec.real_forms));
            out
        }
    }
}

fn format_complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        format!("{re:.8}")
    } else if im < 0.0 {
        format!("{re:.8} - {:.8}i", -im)
    } else {
        format!("{re:.8} + {im:.8}i")
    }
}

#[derive(Serialize)]
struct FailureJson<'a> {
    command: &'a str,
    input: &'a str,
    n: usize,
    degree: u32,
    verdict: &'a str,
    residual: f64,
    attempts: u32,
}

pub fn render_failure(
    meta: &InputMeta,
    residual: f64,
    attempts: u32,
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Json => {
            let doc = FailureJson {
                command: meta.command.as_str(),
                input: &meta.input,
                n: meta.n,
                degree: meta.degree,
                verdict: "failed",
                residual,
                attempts,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Human => format!(
            "command: {}\nverdict: failed (no decomposition with acceptable residual after {attempts} attempts; best residual {residual:.3e})\n",
            meta.command.as_str()
        ),
    }
}
