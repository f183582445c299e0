//! Numeric route to the quadratic embedding constant.
//!
//! The constant is the maximum of <f, D_G f> over unit vectors f orthogonal
//! to the all-ones vector. Rather than enumerating stationary points of the
//! Lagrangian directly, the constrained extrema are read off as the extreme
//! eigenvalues of the distance matrix compressed onto the hyperplane
//! orthogonal to e; the achieving vector is the corresponding eigenvector
//! mapped back through the compression basis, and it satisfies the
//! stationary system (M - lambda I) f = (mu/2) e by construction.

use crate::graph::Graph;
use crate::spectral::{helmert_basis, EigenDecomposition, SymMatrix};
use crate::{Error, Result};
use std::fmt;

/// Default tolerance for the QE-class test: oracle values of QE-class
/// graphs can round slightly above zero.
pub const QE_CLASS_TOL: f64 = 1e-9;

/// How the value in a [`QecResult`] was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Largest eigenvalue of the compressed distance matrix.
    Oracle,
    /// -2 minus the constrained minimum of the join adjacency form.
    JoinAdjacency,
    /// Spectral formula for a join with a regular first operand.
    JoinRegular,
    /// Spectral formula for a join with a complete multipartite operand.
    JoinMultipartite,
    /// Scaling formula for a product with a complete factor.
    CartComplete,
    /// Case formula for a product with a complete bipartite factor.
    CartBipartite,
    /// qec(K_n) = -1.
    ClosedFormComplete,
    /// qec(K_{m,n}) = (m(n-2) + n(m-2)) / (m+n).
    ClosedFormBipartite,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::JoinAdjacency => "join_adjacency",
            Method::JoinRegular => "join_regular",
            Method::JoinMultipartite => "join_multipartite",
            Method::CartComplete => "cart_complete",
            Method::CartBipartite => "cart_bipartite",
            Method::ClosedFormComplete => "closed_form_complete",
            Method::ClosedFormBipartite => "closed_form_bipartite",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which candidate family or case achieved the reported value.
#[derive(Clone, Debug, PartialEq)]
pub enum Branch {
    /// The join (or graph) is complete, so the value is exactly -1.
    Complete,
    /// Candidate family i (1..=4) of a join formula achieved the minimum.
    Lambda(u8),
    /// Unconditional candidate -m for a part size m repeated at least twice.
    RepeatedPart(usize),
    /// Both product factors are of QE class, so the value is exactly 0.
    QeClassProduct,
    /// Value is scale * qec(G) for the stated integer scale.
    ScaledFactor(usize),
    /// Value is l * (n(m-2) + m(n-2)) / (m+n) from the bipartite factor.
    BipartiteFactorTerm,
    /// A single-vertex factor leaves the other factor unchanged.
    IdentityFactor,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Complete => write!(f, "complete"),
            Branch::Lambda(i) => write!(f, "lambda{i}"),
            Branch::RepeatedPart(m) => write!(f, "repeated_part({m})"),
            Branch::QeClassProduct => write!(f, "qe_class_product"),
            Branch::ScaledFactor(s) => write!(f, "scaled_factor({s})"),
            Branch::BipartiteFactorTerm => write!(f, "bipartite_factor_term"),
            Branch::IdentityFactor => write!(f, "identity_factor"),
        }
    }
}

/// A computed quadratic embedding constant with provenance.
#[derive(Clone, Debug)]
pub struct QecResult {
    pub value: f64,
    pub method: Method,
    /// Achieving branches; several entries when branches tie within 1e-9.
    pub provenance: Vec<Branch>,
    /// Unit vector orthogonal to e realizing the extremum, when the
    /// computation route produces one.
    pub achieving_vector: Option<Vec<f64>>,
}

impl QecResult {
    pub fn plain(value: f64, method: Method) -> QecResult {
        QecResult {
            value,
            method,
            provenance: Vec::new(),
            achieving_vector: None,
        }
    }

    pub fn with_provenance(value: f64, method: Method, provenance: Vec<Branch>) -> QecResult {
        QecResult {
            value,
            method,
            provenance,
            achieving_vector: None,
        }
    }
}

/// Maps an eigenvector of the compressed matrix back to the ambient space.
fn expand_from_e_perp(coords: &[f64], n: usize) -> Vec<f64> {
    let basis = helmert_basis(n);
    let mut f = vec![0.0; n];
    for (c, b) in coords.iter().zip(&basis) {
        for (fi, bi) in f.iter_mut().zip(b) {
            *fi += c * bi;
        }
    }
    f
}

/// Constrained extrema of <f, M f> over unit f orthogonal to e, as the
/// extreme eigenvalues of the compression.
pub fn conditional_extrema(m: &SymMatrix) -> Result<(f64, f64)> {
    let dec = EigenDecomposition::new(&m.compress_to_e_perp()?)?;
    Ok((dec.min(), dec.max()))
}

/// Quadratic embedding constant of a connected graph on at least two
/// vertices, computed from the compressed distance matrix. The achieving
/// vector is returned alongside the value.
pub fn qec_oracle(g: &Graph) -> Result<QecResult> {
    if g.order() < 2 {
        return Err(Error::TrivialGraph);
    }
    let dist = g.distance_matrix()?;
    let compressed = dist.to_sym_matrix().compress_to_e_perp()?;
    let dec = EigenDecomposition::new(&compressed)?;
    let top = dec.order() - 1;
    let f = expand_from_e_perp(dec.vector(top), g.order());
    Ok(QecResult {
        value: dec.max(),
        method: Method::Oracle,
        provenance: Vec::new(),
        achieving_vector: Some(f),
    })
}

/// Quadratic embedding constant of a join from the adjacency matrix:
/// -2 minus the constrained minimum of <f, A f>. The minimizing vector
/// also maximizes the distance form, since D = 2(J - I) - A on a join.
pub fn qec_join_adjacency(g1: &Graph, g2: &Graph) -> Result<QecResult> {
    let jg = g1.join(g2);
    let compressed = jg.adjacency_matrix().compress_to_e_perp()?;
    let dec = EigenDecomposition::new(&compressed)?;
    let f = expand_from_e_perp(dec.vector(0), jg.order());
    Ok(QecResult {
        value: -2.0 - dec.min(),
        method: Method::JoinAdjacency,
        provenance: Vec::new(),
        achieving_vector: Some(f),
    })
}

/// Schoenberg test: the graph is of QE class iff its constant is <= tol.
pub fn is_qe_class(g: &Graph, tol: f64) -> Result<bool> {
    Ok(qec_oracle(g)?.value <= tol)
}

/// Explicit quadratic embedding of a QE-class graph: double-center the
/// distance matrix, spectrally factor the positive semidefinite result,
/// and return one point per vertex with squared pairwise distances equal
/// to the graph distances. Eigenvalues in [-tol, 0] clamp to zero; an
/// eigenvalue below -tol means the graph is not of QE class.
pub fn quadratic_embedding(g: &Graph, tol: f64) -> Result<Vec<Vec<f64>>> {
    let n = g.order();
    let dist = g.distance_matrix()?;
    let row_mean: Vec<f64> = (0..n)
        .map(|i| (0..n).map(|j| dist.get(i, j) as f64).sum::<f64>() / n as f64)
        .collect();
    let grand = row_mean.iter().sum::<f64>() / n as f64;
    let gram = SymMatrix::from_fn(n, |i, j| {
        -0.5 * (dist.get(i, j) as f64 - row_mean[i] - row_mean[j] + grand)
    });
    let dec = EigenDecomposition::new(&gram)?;
    if dec.min() < -tol {
        return Err(Error::NotQeClass(dec.min()));
    }
    let axes: Vec<usize> = (0..n).filter(|&j| dec.values()[j] > tol).collect();
    Ok((0..n)
        .map(|i| {
            axes.iter()
                .map(|&j| dec.values()[j].sqrt() * dec.vector(j)[i])
                .collect()
        })
        .collect())
}
