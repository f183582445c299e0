//! The qec, dist, spectrum, and embed subcommands.

use crate::expr::{EvalError, Expr, ParseError};
use crate::output::{
    rational_string, sig15, DistRecord, EmbedRecord, QecRecord, SpectrumLine, SpectrumRecord,
};
use qec::spectral::{EigenDecomposition, SIGMA0_TOL};
use qec::{
    qec_cart_bipartite, qec_cart_complete, qec_complete, qec_complete_bipartite,
    qec_join_multipartite, qec_join_regular, qec_oracle, Branch, Graph, Method, MultipartiteSpec,
    QecResult,
};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Auto,
    Oracle,
    Formula,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum MatrixKind {
    Adjacency,
    Distance,
}

/// CLI-level failure carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Exit code 2.
    Parse(ParseError),
    /// Exit code 2.
    Usage(String),
    /// Exit code 3.
    FormulaUnavailable(String),
    /// Exit code 2 for malformed input, 3 for domain failures.
    Eval(EvalError),
    Domain(qec::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => e.fmt(f),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::FormulaUnavailable(expr) => {
                write!(f, "no formula applies to `{expr}`; use --mode oracle")
            }
            CliError::Eval(e) => e.fmt(f),
            CliError::Domain(e) => e.fmt(f),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        CliError::Eval(e)
    }
}

impl From<qec::Error> for CliError {
    fn from(e: qec::Error) -> Self {
        CliError::Domain(e)
    }
}

fn graph_error_code(e: &qec::Error) -> i32 {
    use qec::Error::*;
    match e {
        // Malformed input: the caller asked for an impossible construction.
        EmptyGraph
        | CycleTooSmall(_)
        | VertexOutOfRange { .. }
        | SelfLoop(_)
        | DuplicateEdge(..)
        | BadEdgeList(_)
        | TooFewParts
        | EmptyPart => 2,
        // Domain failures of a well-formed request.
        _ => 3,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::FormulaUnavailable(_) => 3,
            CliError::Eval(EvalError::FileNotFound(..)) => 2,
            CliError::Eval(EvalError::Graph(e)) => graph_error_code(e),
            CliError::Domain(e) => graph_error_code(e),
        }
    }
}

/// Formula-route result plus the exact rational it came from, when the
/// achieving branch is a closed form.
pub struct FormulaOutcome {
    pub result: QecResult,
    pub rational: Option<String>,
}

fn bipartite_rational(m: usize, n: usize) -> String {
    let (m, n) = (m as i64, n as i64);
    rational_string(m * (n - 2) + n * (m - 2), m + n)
}

/// Dispatches an expression to the applicable formula: joins by the shape
/// of the evaluated first operand (regular, then complete multipartite),
/// products by a complete or complete bipartite first factor, and bare
/// K / Kb atoms to their closed forms.
pub fn formula_route(expr: &Expr) -> Result<FormulaOutcome, CliError> {
    match expr {
        Expr::Complete(n) => {
            let value = qec_complete(*n)?;
            Ok(FormulaOutcome {
                result: QecResult::plain(value, Method::ClosedFormComplete),
                rational: Some(rational_string(-1, 1)),
            })
        }
        Expr::CompleteBipartite(m, n) => {
            let value = qec_complete_bipartite(*m, *n)?;
            Ok(FormulaOutcome {
                result: QecResult::plain(value, Method::ClosedFormBipartite),
                rational: Some(bipartite_rational(*m, *n)),
            })
        }
        Expr::Join(a, b) => {
            let g1 = a.eval()?;
            let g2 = b.eval()?;
            let result = if g1.regularity().is_some() {
                qec_join_regular(&g1, &g2)?
            } else if let Some(parts) = g1.multipartite_parts() {
                qec_join_multipartite(&MultipartiteSpec::new(parts)?, &g2)?
            } else {
                return Err(CliError::FormulaUnavailable(expr.to_string()));
            };
            let rational = result
                .provenance
                .contains(&Branch::Complete)
                .then(|| rational_string(-1, 1));
            Ok(FormulaOutcome { result, rational })
        }
        Expr::Cart(a, b) => {
            let g1 = a.eval()?;
            let g2 = b.eval()?;
            if g1.is_complete() {
                let result = qec_cart_complete(g1.order(), &g2)?;
                let rational = match result.provenance.first() {
                    Some(Branch::QeClassProduct) => Some("0".to_string()),
                    Some(Branch::Complete) => Some("-1".to_string()),
                    _ => None,
                };
                Ok(FormulaOutcome { result, rational })
            } else if let Some(parts) = g1.multipartite_parts().filter(|p| p.len() == 2) {
                let (m, n) = (parts[0], parts[1]);
                let result = qec_cart_bipartite(m, n, &g2)?;
                let rational = cart_bipartite_rational(m, n, g2.order(), &result);
                Ok(FormulaOutcome { result, rational })
            } else {
                Err(CliError::FormulaUnavailable(expr.to_string()))
            }
        }
        _ => Err(CliError::FormulaUnavailable(expr.to_string())),
    }
}

fn cart_bipartite_rational(m: usize, n: usize, l: usize, result: &QecResult) -> Option<String> {
    match result.provenance.first() {
        Some(Branch::QeClassProduct) => Some("0".to_string()),
        Some(Branch::IdentityFactor) => Some(bipartite_rational(m, n)),
        _ => {
            // The bipartite term is exact when it attains the maximum.
            let (mi, ni, li) = (m as i64, n as i64, l as i64);
            let term = (li * (ni * (mi - 2) + mi * (ni - 2))) as f64 / (m + n) as f64;
            (result.provenance.contains(&Branch::BipartiteFactorTerm) && result.value == term)
                .then(|| rational_string(li * (ni * (mi - 2) + mi * (ni - 2)), mi + ni))
        }
    }
}

/// `qec <expr>`: the constant, how it was obtained, and the QE-class flag.
pub fn cmd_qec(text: &str, mode: Mode, tol: f64, pretty: bool) -> Result<(), CliError> {
    let expr: Expr = text.parse()?;
    let (result, rational, n) = match mode {
        Mode::Oracle => {
            let g = expr.eval()?;
            (qec_oracle(&g)?, None, g.order())
        }
        Mode::Formula => {
            let outcome = formula_route(&expr)?;
            let n = expr.eval()?.order();
            (outcome.result, outcome.rational, n)
        }
        Mode::Auto => match formula_route(&expr) {
            Ok(outcome) => {
                let n = expr.eval()?.order();
                (outcome.result, outcome.rational, n)
            }
            Err(CliError::FormulaUnavailable(_)) => {
                let g = expr.eval()?;
                (qec_oracle(&g)?, None, g.order())
            }
            Err(other) => return Err(other),
        },
    };
    QecRecord::new(expr.to_string(), n, &result, tol, rational).print(pretty);
    Ok(())
}

/// `dist <expr>`: the BFS distance matrix.
pub fn cmd_dist(text: &str, pretty: bool) -> Result<(), CliError> {
    let expr: Expr = text.parse()?;
    let g = expr.eval()?;
    let d = g.distance_matrix()?;
    let rows: Vec<Vec<u32>> = (0..g.order())
        .map(|i| (0..g.order()).map(|j| d.get(i, j)).collect())
        .collect();
    if pretty {
        println!("distance matrix of {} (n = {}):", expr, g.order());
        for row in &rows {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:3}")).collect();
            println!("  {}", cells.join(" "));
        }
    } else {
        let record = DistRecord {
            expr: expr.to_string(),
            n: g.order(),
            dist: rows,
        };
        println!("{}", serde_json::to_string(&record).unwrap());
    }
    Ok(())
}

/// `spectrum <expr>`: distinct eigenvalues with multiplicities and the
/// sigma0 flag (eigenspace meets the hyperplane orthogonal to e).
pub fn cmd_spectrum(text: &str, matrix: MatrixKind, pretty: bool) -> Result<(), CliError> {
    let expr: Expr = text.parse()?;
    let g = expr.eval()?;
    let (kind, m) = match matrix {
        MatrixKind::Adjacency => ("adjacency", g.adjacency_matrix()),
        MatrixKind::Distance => ("distance", g.distance_matrix()?.to_sym_matrix()),
    };
    let dec = EigenDecomposition::new(&m)?;
    let eigenvalues: Vec<SpectrumLine> = dec
        .groups()
        .iter()
        .map(|grp| SpectrumLine {
            value: sig15(grp.value),
            multiplicity: grp.len,
            in_sigma0: dec.group_in_sigma0(grp, SIGMA0_TOL),
        })
        .collect();
    if pretty {
        println!("{kind} spectrum of {} (n = {}):", expr, g.order());
        for line in &eigenvalues {
            let flag = if line.in_sigma0 { ", in sigma0" } else { "" };
            println!("  {} (x{}{flag})", line.value, line.multiplicity);
        }
    } else {
        let record = SpectrumRecord {
            expr: expr.to_string(),
            n: g.order(),
            matrix: kind,
            eigenvalues,
        };
        println!("{}", serde_json::to_string(&record).unwrap());
    }
    Ok(())
}

/// `embed <expr>`: an explicit quadratic embedding with its worst
/// squared-distance reconstruction error.
pub fn cmd_embed(text: &str, tol: f64, pretty: bool) -> Result<(), CliError> {
    let expr: Expr = text.parse()?;
    let g = expr.eval()?;
    let points = qec::quadratic_embedding(&g, tol)?;
    let d = g.distance_matrix()?;
    let mut max_error = 0.0f64;
    for i in 0..g.order() {
        for j in 0..g.order() {
            let sq: f64 = points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            max_error = max_error.max((sq - d.get(i, j) as f64).abs());
        }
    }
    let dim = points.first().map_or(0, Vec::len);
    let points: Vec<Vec<f64>> = points
        .into_iter()
        .map(|p| p.into_iter().map(sig15).collect())
        .collect();
    if pretty {
        println!(
            "quadratic embedding of {} into R^{dim} (max error {:.3e}):",
            expr, max_error
        );
        for (v, p) in points.iter().enumerate() {
            let coords: Vec<String> = p.iter().map(|x| format!("{x:.6}")).collect();
            println!("  psi({v}) = ({})", coords.join(", "));
        }
    } else {
        let record = EmbedRecord {
            expr: expr.to_string(),
            n: g.order(),
            dim,
            points,
            max_error: sig15(max_error),
        };
        println!("{}", serde_json::to_string(&record).unwrap());
    }
    Ok(())
}

/// Helper used by the verify harness: formula and oracle values for an
/// expression-backed case.
pub fn expr_case(expr: &Expr) -> Result<(Graph, QecResult, FormulaOutcome), CliError> {
    let g = expr.eval()?;
    let oracle = qec_oracle(&g)?;
    let formula = formula_route(expr)?;
    Ok((g, oracle, formula))
}
