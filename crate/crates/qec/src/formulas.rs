//! Spectral formulas for the quadratic embedding constant.
//!
//! Joins are handled through stationary-value candidate sets: for a join
//! that is not complete, the constant equals -2 minus the smallest
//! candidate below -1, where the candidates come from four families
//! (boundary values of the reduced stationary system against the operand
//! spectra, eigenvalues with e-orthogonal eigenvectors, and the roots of a
//! secular equation built from the resolvent form of the second operand).
//! A join with a complete multipartite operand adds one unconditional
//! family: -m for every part size m != 1 repeated at least twice.
//!
//! Cartesian products with a complete or complete bipartite factor reduce
//! to scalings of qec(G), with the bipartite case taking a maximum against
//! a closed-form term contributed by the bipartite factor itself.
//!
//! Both secular equations are solved after an exact algebraic reduction to
//! a pure pole sum with nonnegative weights (see [`crate::secular`]):
//!
//! * regular operand of degree r on m vertices against spectrum {mu_i}
//!   with e-projection weights {w_i}:
//!   `m = (lambda + 2m - r) <e, (A - lambda I)^{-1} e>` becomes
//!   `m / ((r - 2m) - lambda) + sum_i w_i / (mu_i - lambda) = 0`;
//! * multipartite operand with pole function P:
//!   `P(lambda) <e, (A - lambda I)^{-1} e> = P(lambda) - 1` becomes
//!   `sum_p v_p / (lambda_p - lambda) + sum_i w_i / (mu_i - lambda) = 0`
//!   where lambda_p are the zeros of P and v_p = -1 / P'(lambda_p) > 0.
//!
//! Either reduction divides by a factor that vanishes only outside the
//! admissible domain, and found roots are filtered against the excluded
//! points afterwards.

use crate::graph::{Graph, MultipartiteSpec};
use crate::oracle::{qec_oracle, Branch, Method, QecResult, QE_CLASS_TOL};
use crate::secular::RationalSecular;
use crate::spectral::{EigenDecomposition, SIGMA0_TOL};
use crate::{Error, Result};

/// Branches within this distance of the minimum are all reported.
pub const TIE_TOL: f64 = 1e-9;

/// qec(K_n) = -1 for every complete graph on at least two vertices.
pub fn qec_complete(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::TrivialGraph);
    }
    Ok(-1.0)
}

/// qec(K_{m,n}) = (m(n-2) + n(m-2)) / (m+n).
pub fn qec_complete_bipartite(m: usize, n: usize) -> Result<f64> {
    if m == 0 || n == 0 {
        return Err(Error::EmptyPart);
    }
    let (m, n) = (m as i64, n as i64);
    Ok((m * (n - 2) + n * (m - 2)) as f64 / (m + n) as f64)
}

/// The pole function of a complete multipartite graph:
/// P(lambda) = 1 + sum_p a_p m_p / (lambda + m_p) over distinct part
/// sizes m_p with multiplicities a_p. P has exactly q simple zeros, all
/// negative: one below -m_{i_1} and one between each pair of consecutive
/// poles.
#[derive(Clone, Debug)]
pub struct SecularP {
    /// (size, multiplicity) per distinct part size, sizes descending.
    terms: Vec<(f64, f64)>,
}

impl SecularP {
    pub fn new(spec: &MultipartiteSpec) -> SecularP {
        SecularP {
            terms: spec
                .distinct_sizes()
                .iter()
                .map(|&(m, a)| (m as f64, a as f64))
                .collect(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        1.0 + self
            .terms
            .iter()
            .map(|&(m, a)| a * m / (x + m))
            .sum::<f64>()
    }

    pub fn deriv(&self, x: f64) -> f64 {
        -self
            .terms
            .iter()
            .map(|&(m, a)| a * m / ((x + m) * (x + m)))
            .sum::<f64>()
    }

    /// The q zeros, ascending. Solved through the negated pole-sum form
    /// -1 + sum_p (a_p m_p) / (-m_p - lambda), which has the same zeros
    /// and nonnegative weights.
    pub fn roots(&self) -> Vec<f64> {
        let terms: Vec<(f64, f64)> = self.terms.iter().map(|&(m, a)| (-m, a * m)).collect();
        let f = RationalSecular::new(-1.0, 0.0, &terms, 1e-9);
        let roots = f.roots_in(f64::NEG_INFINITY, f64::INFINITY);
        debug_assert_eq!(roots.len(), self.terms.len());
        roots
    }
}

/// Zeros of the pole function of a multipartite spec.
pub fn p_roots(spec: &MultipartiteSpec) -> Vec<f64> {
    SecularP::new(spec).roots()
}

/// Stationary-value candidates of a join formula, already restricted to
/// the open ray below -1; `extra` holds the unconditional repeated-part
/// candidates of the multipartite case (empty for the regular case).
#[derive(Clone, Debug, Default)]
pub struct LambdaSets {
    pub lambda1: Vec<f64>,
    pub lambda2: Vec<f64>,
    pub lambda3: Vec<f64>,
    pub lambda4: Vec<f64>,
    pub extra: Vec<f64>,
}

impl LambdaSets {
    /// Every candidate with the branch that contributed it.
    pub fn candidates(&self) -> Vec<(f64, Branch)> {
        let mut all: Vec<(f64, Branch)> = Vec::new();
        for (i, set) in [&self.lambda1, &self.lambda2, &self.lambda3, &self.lambda4]
            .into_iter()
            .enumerate()
        {
            all.extend(set.iter().map(|&v| (v, Branch::Lambda(i as u8 + 1))));
        }
        all.extend(
            self.extra
                .iter()
                .map(|&v| (v, Branch::RepeatedPart((-v).round() as usize))),
        );
        all
    }

    /// Smallest candidate and all branches attaining it within [`TIE_TOL`].
    pub fn min_with_provenance(&self) -> Option<(f64, Vec<Branch>)> {
        let all = self.candidates();
        let min = all.iter().map(|(v, _)| *v).min_by(f64::total_cmp)?;
        let mut branches: Vec<Branch> = Vec::new();
        for (v, b) in all {
            if v <= min + TIE_TOL && !branches.contains(&b) {
                branches.push(b);
            }
        }
        Some((min, branches))
    }
}

fn near_any(x: f64, points: &[f64], tol: f64) -> bool {
    points.iter().any(|p| (p - x).abs() <= tol)
}

/// Candidate sets for the join of an r-regular graph with an arbitrary
/// one. Callers must rule out the complete join first.
pub fn regular_join_lambda_sets(g1: &Graph, g2: &Graph) -> Result<LambdaSets> {
    let r = g1.regularity().ok_or(Error::NotRegular)? as f64;
    let m = g1.order() as f64;
    let first_shift = r - m;
    let second_shift = r - 2.0 * m;

    let eig1 = EigenDecomposition::new(&g1.adjacency_matrix())?;
    let eig2 = EigenDecomposition::new(&g2.adjacency_matrix())?;
    let eig2_mj = EigenDecomposition::new(&g2.adjacency_matrix().minus_all_ones())?;
    let tol = eig1
        .tol_group()
        .max(eig2.tol_group())
        .max(eig2_mj.tol_group());

    let mut sets = LambdaSets::default();
    if first_shift < -1.0 && (eig1.contains(first_shift) || eig2_mj.contains(first_shift)) {
        sets.lambda1.push(first_shift);
    }
    if second_shift < -1.0 && eig2.contains(second_shift) {
        sets.lambda2.push(second_shift);
    }
    let shifts = [first_shift, second_shift];
    let mut sigma0 = eig1.sigma0(SIGMA0_TOL);
    sigma0.extend(eig2.sigma0(SIGMA0_TOL));
    sigma0.sort_by(f64::total_cmp);
    sigma0.dedup_by(|a, b| (*a - *b).abs() <= tol);
    for v in sigma0 {
        if v < -1.0 && !near_any(v, &shifts, tol) {
            sets.lambda3.push(v);
        }
    }

    let mut poles = vec![(second_shift, m)];
    poles.extend(eig2.resolvent_poles());
    let secular = RationalSecular::pure_poles(&poles, tol);
    let mut excluded = vec![first_shift, second_shift];
    excluded.extend(eig1.groups().iter().map(|g| g.value));
    excluded.extend(eig2.groups().iter().map(|g| g.value));
    for root in secular.roots_in(f64::NEG_INFINITY, -1.0) {
        if !near_any(root, &excluded, tol) {
            sets.lambda4.push(root);
        }
    }
    Ok(sets)
}

/// qec of the join of a regular graph with an arbitrary graph. The second
/// operand may be disconnected; the join itself is always connected.
pub fn qec_join_regular(g1: &Graph, g2: &Graph) -> Result<QecResult> {
    if g1.regularity().is_none() {
        return Err(Error::NotRegular);
    }
    if g1.is_complete() && g2.is_complete() {
        return Ok(QecResult::with_provenance(
            -1.0,
            Method::JoinRegular,
            vec![Branch::Complete],
        ));
    }
    let sets = regular_join_lambda_sets(g1, g2)?;
    let (min, branches) = sets.min_with_provenance().ok_or(Error::NoCandidates)?;
    Ok(QecResult::with_provenance(
        -2.0 - min,
        Method::JoinRegular,
        branches,
    ))
}

/// Candidate sets for the join of a complete multipartite graph with an
/// arbitrary one. Callers must rule out the complete join first.
pub fn multipartite_join_lambda_sets(spec: &MultipartiteSpec, g: &Graph) -> Result<LambdaSets> {
    let pole_fn = SecularP::new(spec);
    let zeros = pole_fn.roots();
    let neg_sizes: Vec<f64> = spec
        .distinct_sizes()
        .iter()
        .map(|&(m, _)| -(m as f64))
        .collect();

    let eig = EigenDecomposition::new(&g.adjacency_matrix())?;
    let eig_mj = EigenDecomposition::new(&g.adjacency_matrix().minus_all_ones())?;
    let tol = eig.tol_group().max(eig_mj.tol_group());

    let mut sets = LambdaSets::default();
    for &(m, a) in spec.distinct_sizes() {
        let v = -(m as f64);
        if a == 1 && v < -1.0 && eig_mj.contains(v) {
            sets.lambda1.push(v);
        }
        if a >= 2 && m != 1 {
            sets.extra.push(v);
        }
    }
    for &z in &zeros {
        if z < -1.0 && eig.contains(z) {
            sets.lambda2.push(z);
        }
    }
    for v in eig.sigma0(SIGMA0_TOL) {
        if v < -1.0 && !near_any(v, &neg_sizes, tol) && !near_any(v, &zeros, tol) {
            sets.lambda3.push(v);
        }
    }

    let mut poles: Vec<(f64, f64)> = zeros
        .iter()
        .map(|&z| (z, -1.0 / pole_fn.deriv(z)))
        .collect();
    poles.extend(eig.resolvent_poles());
    let secular = RationalSecular::pure_poles(&poles, tol);
    let mut excluded = neg_sizes.clone();
    excluded.extend(&zeros);
    excluded.extend(eig.groups().iter().map(|g| g.value));
    for root in secular.roots_in(f64::NEG_INFINITY, -1.0) {
        if !near_any(root, &excluded, tol) {
            sets.lambda4.push(root);
        }
    }
    Ok(sets)
}

/// qec of the join of a complete multipartite graph with an arbitrary
/// graph. The second operand may be disconnected.
pub fn qec_join_multipartite(spec: &MultipartiteSpec, g: &Graph) -> Result<QecResult> {
    if spec.all_singletons() && g.is_complete() {
        return Ok(QecResult::with_provenance(
            -1.0,
            Method::JoinMultipartite,
            vec![Branch::Complete],
        ));
    }
    let sets = multipartite_join_lambda_sets(spec, g)?;
    let (min, branches) = sets.min_with_provenance().ok_or(Error::NoCandidates)?;
    Ok(QecResult::with_provenance(
        -2.0 - min,
        Method::JoinMultipartite,
        branches,
    ))
}

/// qec(K_m x G): zero when G is of QE class, m * qec(G) otherwise.
/// K_1 factors leave G unchanged, and a single-vertex G reduces the
/// product to K_m itself.
pub fn qec_cart_complete(m: usize, g: &Graph) -> Result<QecResult> {
    if m == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.order() == 1 {
        return if m == 1 {
            Err(Error::TrivialGraph)
        } else {
            Ok(QecResult::with_provenance(
                -1.0,
                Method::CartComplete,
                vec![Branch::Complete],
            ))
        };
    }
    let base = qec_oracle(g)?;
    if m == 1 {
        return Ok(QecResult::with_provenance(
            base.value,
            Method::CartComplete,
            vec![Branch::IdentityFactor],
        ));
    }
    if base.value <= QE_CLASS_TOL {
        Ok(QecResult::with_provenance(
            0.0,
            Method::CartComplete,
            vec![Branch::QeClassProduct],
        ))
    } else {
        Ok(QecResult::with_provenance(
            m as f64 * base.value,
            Method::CartComplete,
            vec![Branch::ScaledFactor(m)],
        ))
    }
}

/// qec(K_{m,n} x G) by cases on whether K_{m,n} is of QE class (exactly
/// when m = 1, n = 1, or m = n = 2):
///
/// * both factors QE class: 0;
/// * K_{m,n} QE class, G not: (m+n) * qec(G);
/// * K_{m,n} not QE class: max of (m+n) * qec(G) and
///   l * (n(m-2) + m(n-2)) / (m+n) with l = |V(G)|.
pub fn qec_cart_bipartite(m: usize, n: usize, g: &Graph) -> Result<QecResult> {
    if m == 0 || n == 0 {
        return Err(Error::EmptyPart);
    }
    if g.order() == 1 {
        return Ok(QecResult::with_provenance(
            qec_complete_bipartite(m, n)?,
            Method::CartBipartite,
            vec![Branch::IdentityFactor],
        ));
    }
    let base = qec_oracle(g)?;
    let scale = (m + n) as f64;
    let bipartite_qe = m == 1 || n == 1 || (m == 2 && n == 2);
    if bipartite_qe {
        if base.value <= QE_CLASS_TOL {
            Ok(QecResult::with_provenance(
                0.0,
                Method::CartBipartite,
                vec![Branch::QeClassProduct],
            ))
        } else {
            Ok(QecResult::with_provenance(
                scale * base.value,
                Method::CartBipartite,
                vec![Branch::ScaledFactor(m + n)],
            ))
        }
    } else {
        let scaled = scale * base.value;
        let (mi, ni) = (m as i64, n as i64);
        let term = g.order() as f64 * (ni * (mi - 2) + mi * (ni - 2)) as f64 / scale;
        let value = scaled.max(term);
        let mut branches = Vec::new();
        if scaled >= value - TIE_TOL {
            branches.push(Branch::ScaledFactor(m + n));
        }
        if term >= value - TIE_TOL {
            branches.push(Branch::BipartiteFactorTerm);
        }
        Ok(QecResult::with_provenance(
            value,
            Method::CartBipartite,
            branches,
        ))
    }
}
