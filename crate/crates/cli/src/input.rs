//! Polynomial input: an inline expression, an expression file, or the
//! structured coefficient-map format for large variable counts.
//!
//! The structured format is a JSON document
//! `{"n": 2, "terms": {"3 0": "2", "1 2": "12"}}`: keys are space-separated
//! exponent vectors of length `n`, values are rational strings `a` or `a/b`.

use std::collections::BTreeMap;
use std::fs;

use serde::Deserialize;

use waring_core::expr;
use waring_core::poly::Poly;
use waring_core::scalar::parse_rational;

use crate::{CliError, RunConfig};

#[derive(Deserialize)]
struct PolyFile {
    n: usize,
    terms: BTreeMap<String, String>,
}

/// Loads the polynomial and returns it with a canonical description of the
/// input (used in reports).
pub fn load(cfg: &RunConfig) -> Result<(Poly, String), CliError> {
    let text = match (&cfg.expr, &cfg.input) {
        (Some(_), Some(_)) => {
            return Err(CliError::new(
                "give either an inline expression or --input, not both",
            ))
        }
        (None, None) => {
            return Err(CliError::new(
                "missing input: pass an expression or --input FILE",
            ))
        }
        (Some(expr), None) => expr.clone(),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| CliError::new(format!("cannot read {}: {e}", path.display())))?,
    };
    let trimmed = text.trim_start();
    let poly = if trimmed.starts_with('{') {
        parse_structured(trimmed)?
    } else {
        expr::parse(&text).map_err(|e| CliError::new(format!("{e}")))?
    };
    Ok((poly.clone(), expr::serialize(&poly)))
}

fn parse_structured(text: &str) -> Result<Poly, CliError> {
    let file: PolyFile = serde_json::from_str(text)
        .map_err(|e| CliError::new(format!("invalid structured polynomial: {e}")))?;
    let mut terms = Vec::with_capacity(file.terms.len());
    for (key, value) in &file.terms {
        let exps: Result<Vec<u32>, _> = key.split_whitespace().map(str::parse).collect();
        let exps = exps.map_err(|_| {
            CliError::new(format!(
                "invalid exponent vector {key:?}: expected nonnegative integers"
            ))
        })?;
        if exps.len() != file.n {
            return Err(CliError::new(format!(
                "exponent vector {key:?} has {} entries, expected n = {}",
                exps.len(),
                file.n
            )));
        }
        let coeff = parse_rational(value)
            .ok_or_else(|| CliError::new(format!("invalid rational coefficient {value:?}")))?;
        terms.push((exps, coeff));
    }
    Poly::from_terms(file.n, terms).map_err(|e| CliError::new(format!("{e}")))
}
