//! JSON shaping shared by the subcommands.

use qec::QecResult;
use serde::Serialize;

/// Rounds to 15 significant digits so printed values are stable across
/// runs and platforms.
pub fn sig15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap()
}

/// Reduced fraction rendered as `p` or `p/q`.
pub fn rational_string(mut num: i64, mut den: i64) -> String {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    if den < 0 {
        num = -num;
        den = -den;
    }
    let g = gcd(num, den).max(1);
    num /= g;
    den /= g;
    if den == 1 {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

#[derive(Serialize)]
pub struct QecRecord {
    pub expr: String,
    pub n: usize,
    pub qec: f64,
    pub method: &'static str,
    pub provenance: Vec<String>,
    pub qe_class: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational: Option<String>,
}

impl QecRecord {
    pub fn new(
        expr: String,
        n: usize,
        result: &QecResult,
        tol: f64,
        rational: Option<String>,
    ) -> Self {
        QecRecord {
            expr,
            n,
            qec: sig15(result.value),
            method: result.method.as_str(),
            provenance: result.provenance.iter().map(|b| b.to_string()).collect(),
            qe_class: result.value <= tol,
            rational,
        }
    }

    pub fn print(&self, pretty: bool) {
        if pretty {
            let rational = self
                .rational
                .as_deref()
                .map(|r| format!(" = {r}"))
                .unwrap_or_default();
            println!("qec({}) = {}{}", self.expr, self.qec, rational);
            println!(
                "  n = {}, method = {}, qe_class = {}",
                self.n, self.method, self.qe_class
            );
            if !self.provenance.is_empty() {
                println!("  achieved by: {}", self.provenance.join(", "));
            }
        } else {
            println!("{}", serde_json::to_string(self).unwrap());
        }
    }
}

#[derive(Serialize)]
pub struct DistRecord {
    pub expr: String,
    pub n: usize,
    pub dist: Vec<Vec<u32>>,
}

#[derive(Serialize)]
pub struct SpectrumLine {
    pub value: f64,
    pub multiplicity: usize,
    pub in_sigma0: bool,
}

#[derive(Serialize)]
pub struct SpectrumRecord {
    pub expr: String,
    pub n: usize,
    pub matrix: &'static str,
    pub eigenvalues: Vec<SpectrumLine>,
}

#[derive(Serialize)]
pub struct EmbedRecord {
    pub expr: String,
    pub n: usize,
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub max_error: f64,
}
