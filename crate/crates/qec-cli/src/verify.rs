//! The verify subcommand: every catalog case computed by formula and by
//! oracle, compared at a tolerance, reported as JSON lines with a summary.
//!
//! Cases run on a rayon worker pool; results are indexed up front and
//! printed in index order, so output is deterministic for a fixed seed.

use crate::commands::{expr_case, CliError};
use crate::expr::Expr;
use crate::output::sig15;
use qec::catalog::{builtin_catalog, VerifyCase};
use rayon::prelude::*;
use serde::Serialize;
use std::path::PathBuf;

pub struct VerifyOpts {
    pub seed: u64,
    pub tol: f64,
    pub catalog: Option<PathBuf>,
    pub perturb: Option<usize>,
    pub pretty: bool,
}

#[derive(Serialize)]
struct CaseLine {
    index: usize,
    case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diff: Option<f64>,
    provenance: Vec<String>,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct Summary {
    cases: usize,
    failures: usize,
    max_abs_diff: f64,
    tol: f64,
    seed: u64,
}

enum Case {
    Builtin(Box<VerifyCase>),
    Expr(String, Expr),
}

impl Case {
    fn label(&self) -> String {
        match self {
            Case::Builtin(c) => c.label(),
            Case::Expr(text, _) => text.clone(),
        }
    }

    fn run(&self, tol: f64, perturbation: f64) -> CaseLine {
        let computed: Result<(usize, f64, f64, Vec<String>), String> = match self {
            Case::Builtin(c) => (|| {
                let formula = c.formula().map_err(|e| e.to_string())?;
                let oracle = c.oracle().map_err(|e| e.to_string())?;
                let provenance = formula.provenance.iter().map(|b| b.to_string()).collect();
                Ok((c.graph().order(), oracle.value, formula.value, provenance))
            })(),
            Case::Expr(_, expr) => (|| {
                let (g, oracle, formula) = expr_case(expr).map_err(|e| e.to_string())?;
                let provenance = formula
                    .result
                    .provenance
                    .iter()
                    .map(|b| b.to_string())
                    .collect();
                Ok((g.order(), oracle.value, formula.result.value, provenance))
            })(),
        };
        match computed {
            Ok((n, oracle, formula, provenance)) => {
                let formula = formula + perturbation;
                let diff = (formula - oracle).abs();
                CaseLine {
                    index: 0,
                    case: self.label(),
                    n: Some(n),
                    oracle: Some(sig15(oracle)),
                    formula: Some(sig15(formula)),
                    diff: Some(sig15(diff)),
                    provenance,
                    pass: diff <= tol,
                    error: None,
                }
            }
            Err(message) => CaseLine {
                index: 0,
                case: self.label(),
                n: None,
                oracle: None,
                formula: None,
                diff: None,
                provenance: Vec::new(),
                pass: false,
                error: Some(message),
            },
        }
    }
}

fn load_cases(opts: &VerifyOpts) -> Result<Vec<Case>, CliError> {
    match &opts.catalog {
        None => Ok(builtin_catalog(opts.seed)
            .into_iter()
            .map(|c| Case::Builtin(Box::new(c)))
            .collect()),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!("cannot read catalog `{}`: {e}", path.display()))
            })?;
            let mut cases = Vec::new();
            for line in text.lines() {
                let line = match line.find('#') {
                    Some(pos) => &line[..pos],
                    None => line,
                }
                .trim();
                if line.is_empty() {
                    continue;
                }
                let expr: Expr = line.parse()?;
                cases.push(Case::Expr(line.to_string(), expr));
            }
            if cases.is_empty() {
                return Err(CliError::Usage(format!(
                    "catalog `{}` contains no cases",
                    path.display()
                )));
            }
            Ok(cases)
        }
    }
}

/// Runs the suite; the returned exit code is 1 when any case fails.
pub fn cmd_verify(opts: &VerifyOpts) -> Result<i32, CliError> {
    let cases = load_cases(opts)?;
    let mut lines: Vec<CaseLine> = cases
        .par_iter()
        .enumerate()
        .map(|(index, case)| {
            let perturbation = if opts.perturb == Some(index) {
                1e-3
            } else {
                0.0
            };
            let mut line = case.run(opts.tol, perturbation);
            line.index = index;
            line
        })
        .collect();
    lines.sort_by_key(|l| l.index);

    let failures = lines.iter().filter(|l| !l.pass).count();
    let max_abs_diff = lines.iter().filter_map(|l| l.diff).fold(0.0f64, f64::max);
    let summary = Summary {
        cases: lines.len(),
        failures,
        max_abs_diff: sig15(max_abs_diff),
        tol: opts.tol,
        seed: opts.seed,
    };

    if opts.pretty {
        for line in lines.iter().filter(|l| !l.pass) {
            match (&line.error, line.diff) {
                (Some(e), _) => println!("FAIL #{} {}: {e}", line.index, line.case),
                (None, Some(diff)) => println!(
                    "FAIL #{} {}: formula {} vs oracle {} (diff {diff:.3e})",
                    line.index,
                    line.case,
                    line.formula.unwrap(),
                    line.oracle.unwrap()
                ),
                _ => unreachable!(),
            }
        }
        println!(
            "{} cases, {} failures, max |formula - oracle| = {:.3e} (tol {:.1e}, seed {})",
            summary.cases, summary.failures, summary.max_abs_diff, summary.tol, summary.seed
        );
    } else {
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        use std::io::Write;
        for line in &lines {
            serde_json::to_writer(&mut out, line).unwrap();
            out.write_all(b"\n").unwrap();
        }
        serde_json::to_writer(&mut out, &summary).unwrap();
        out.write_all(b"\n").unwrap();
    }
    Ok(if failures > 0 { 1 } else { 0 })
}
