//! Dense symmetric eigendecomposition and the compression onto the
//! hyperplane orthogonal to the all-ones vector.
//!
//! Everything here targets the small dense matrices that show up in this
//! crate (adjacency and distance matrices of desk-scale graphs, n ≲ 200).
//! The eigensolver is a cyclic Jacobi iteration with accumulated rotations,
//! which is foolproof for real symmetric input and delivers eigenvectors
//! orthonormal to machine precision. Eigenvalues are grouped into distinct
//! values so that spectra of integer matrices can be compared exactly up to
//! a scale-relative tolerance, and every distinct eigenvalue carries the
//! squared norm of the projection of the all-ones vector onto its
//! eigenspace. Those weights drive both the sigma0 classification (does the
//! eigenspace meet the hyperplane orthogonal to e?) and the spectral
//! expansion of the resolvent quadratic form <e, (M - lambda I)^{-1} e>.

use crate::{Error, Result};

/// Jacobi stopping threshold, relative to the largest entry of the input.
const EIG_TOL_SCALE: f64 = 1e-11;

/// Sweep cap for the Jacobi iteration.
const MAX_SWEEPS: usize = 100;

/// Distinct-eigenvalue grouping tolerance, relative to 1 + spectral radius.
const GROUP_TOL_SCALE: f64 = 1e-7;

/// Default tolerance for deciding that a unit eigenvector is orthogonal to
/// the all-ones vector (the test is |<e, u>| <= tol * sqrt(n)).
pub const SIGMA0_TOL: f64 = 1e-7;

/// Dense real symmetric matrix, symmetrized on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    a: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            a: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// The all-ones matrix J.
    pub fn all_ones(n: usize) -> Self {
        SymMatrix {
            n,
            a: vec![1.0; n * n],
        }
    }

    /// Builds the matrix with entries (f(i,j) + f(j,i)) / 2.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = 0.5 * (f(i, j) + f(j, i));
                m.a[i * n + j] = v;
                m.a[j * n + i] = v;
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    /// Sets both (i,j) and (j,i).
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
        self.a[j * self.n + i] = v;
    }

    /// A - J, the matrix with every entry reduced by one.
    pub fn minus_all_ones(&self) -> SymMatrix {
        SymMatrix {
            n: self.n,
            a: self.a.iter().map(|x| x - 1.0).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.a.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| {
                let row = &self.a[i * self.n..(i + 1) * self.n];
                row.iter().zip(x).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    /// <x, M x>.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// Conjugates by the fixed orthonormal basis of the hyperplane
    /// orthogonal to the all-ones vector, producing an (n-1) x (n-1)
    /// matrix. Its eigenvalues are the extrema of <f, M f> over unit f
    /// with <e, f> = 0 (Courant-Fischer restricted to the subspace).
    pub fn compress_to_e_perp(&self) -> Result<SymMatrix> {
        if self.n < 2 {
            return Err(Error::CompressTooSmall(self.n));
        }
        let basis = helmert_basis(self.n);
        let images: Vec<Vec<f64>> = basis.iter().map(|b| self.mul_vec(b)).collect();
        let m = self.n - 1;
        Ok(SymMatrix::from_fn(m, |k, l| {
            basis[k].iter().zip(&images[l]).map(|(a, b)| a * b).sum()
        }))
    }
}

/// Deterministic orthonormal basis of the hyperplane orthogonal to the
/// all-ones vector: the k-th vector has k leading entries 1/sqrt(k(k+1))
/// and the entry -k/sqrt(k(k+1)) at position k+1.
pub fn helmert_basis(n: usize) -> Vec<Vec<f64>> {
    (1..n)
        .map(|k| {
            let s = 1.0 / ((k * (k + 1)) as f64).sqrt();
            let mut v = vec![0.0; n];
            v[..k].fill(s);
            v[k] = -(k as f64) * s;
            v
        })
        .collect()
}

/// A maximal run of numerically equal eigenvalues.
#[derive(Clone, Debug)]
pub struct EigenGroup {
    /// Representative value (mean of the members).
    pub value: f64,
    /// Index of the first member in the ascending eigenvalue list.
    pub start: usize,
    /// Multiplicity.
    pub len: usize,
    /// Squared norm of the projection of the all-ones vector onto the
    /// eigenspace; these weights sum to n over all groups.
    pub e_weight: f64,
}

/// Full spectral data of a symmetric matrix: ascending eigenvalues,
/// orthonormal eigenvectors, distinct-eigenvalue groups and their
/// all-ones projection weights.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    n: usize,
    values: Vec<f64>,
    /// Column-major: vectors[j * n + i] is component i of eigenvector j.
    vectors: Vec<f64>,
    groups: Vec<EigenGroup>,
    tol_group: f64,
}

impl EigenDecomposition {
    pub fn new(m: &SymMatrix) -> Result<Self> {
        let n = m.order();
        let (raw_values, raw_vectors) = jacobi(m)?;

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| raw_values[i].total_cmp(&raw_values[j]));
        let values: Vec<f64> = order.iter().map(|&i| raw_values[i]).collect();
        let mut vectors = vec![0.0; n * n];
        for (j, &src) in order.iter().enumerate() {
            for i in 0..n {
                vectors[j * n + i] = raw_vectors[src * n + i];
            }
        }

        let radius = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let tol_group = GROUP_TOL_SCALE * (1.0 + radius);

        let mut groups: Vec<EigenGroup> = Vec::new();
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && values[end] - values[end - 1] <= tol_group {
                end += 1;
            }
            let e_weight: f64 = (start..end)
                .map(|j| {
                    let dot: f64 = vectors[j * n..(j + 1) * n].iter().sum();
                    dot * dot
                })
                .sum();
            let value = values[start..end].iter().sum::<f64>() / (end - start) as f64;
            groups.push(EigenGroup {
                value,
                start,
                len: end - start,
                e_weight,
            });
            start = end;
        }

        Ok(EigenDecomposition {
            n,
            values,
            vectors,
            groups,
            tol_group,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Eigenvalues ascending.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vector(&self, j: usize) -> &[f64] {
        &self.vectors[j * self.n..(j + 1) * self.n]
    }

    pub fn groups(&self) -> &[EigenGroup] {
        &self.groups
    }

    pub fn tol_group(&self) -> f64 {
        self.tol_group
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.n - 1]
    }

    /// Whether x matches a distinct eigenvalue within the grouping tolerance.
    pub fn contains(&self, x: f64) -> bool {
        self.groups
            .iter()
            .any(|g| (g.value - x).abs() <= self.tol_group)
    }

    /// Weight below which the all-ones projection counts as zero.
    fn weight_cutoff(&self, tol: f64) -> f64 {
        tol * tol * self.n as f64
    }

    /// Whether the group's eigenspace intersects the hyperplane orthogonal
    /// to e nontrivially: multiplicity >= 2, or a simple eigenvalue whose
    /// eigenvector is orthogonal to e within tolerance.
    pub fn group_in_sigma0(&self, group: &EigenGroup, tol: f64) -> bool {
        group.len >= 2 || group.e_weight <= self.weight_cutoff(tol)
    }

    /// Distinct eigenvalues possessing an eigenvector orthogonal to the
    /// all-ones vector.
    pub fn sigma0(&self, tol: f64) -> Vec<f64> {
        self.groups
            .iter()
            .filter(|g| self.group_in_sigma0(g, tol))
            .map(|g| g.value)
            .collect()
    }

    /// Poles and weights of the spectral expansion of
    /// <e, (M - lambda I)^{-1} e>: distinct eigenvalues whose eigenspace
    /// carries a nonzero component of e.
    pub fn resolvent_poles(&self) -> Vec<(f64, f64)> {
        let cutoff = self.weight_cutoff(SIGMA0_TOL);
        self.groups
            .iter()
            .filter(|g| g.e_weight > cutoff)
            .map(|g| (g.value, g.e_weight))
            .collect()
    }

    /// Evaluates <e, (M - lambda I)^{-1} e> as the sum of
    /// w_i / (mu_i - lambda) over distinct eigenvalues.
    pub fn resolvent_form(&self, lambda: f64) -> Result<f64> {
        let mut total = 0.0;
        for (pole, weight) in self.resolvent_poles() {
            if (pole - lambda).abs() <= self.tol_group {
                return Err(Error::PoleProximity { lambda, pole });
            }
            total += weight / (pole - lambda);
        }
        Ok(total)
    }
}

/// Cyclic Jacobi eigensolver with accumulated rotations, following the
/// classical threshold scheme of Numerical Recipes section 11.1. Returns
/// unsorted eigenvalues and row-major-indexed eigenvector columns
/// (vectors[j * n + i] = component i of eigenvector j).
fn jacobi(m: &SymMatrix) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = m.order();
    let mut a = m.a.clone();
    // v is accumulated row-major; column j is eigenvector j.
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    let mut b = d.clone();
    let mut z = vec![0.0; n];

    let done = EIG_TOL_SCALE * m.max_abs();
    let mut off = off_diag_sum(&a, n);

    for sweep in 0..MAX_SWEEPS {
        if off <= done {
            // Transpose-copy columns out so eigenvector j is contiguous.
            let mut cols = vec![0.0; n * n];
            for j in 0..n {
                for i in 0..n {
                    cols[j * n + i] = v[i * n + j];
                }
            }
            return Ok((d, cols));
        }
        let tresh = if sweep < 3 {
            0.2 * off / (n * n) as f64
        } else {
            0.0
        };
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let g = 100.0 * apq.abs();
                // Skip rotations that can no longer change the diagonal.
                if sweep > 3 && d[p].abs() + g == d[p].abs() && d[q].abs() + g == d[q].abs() {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                if apq.abs() <= tresh {
                    continue;
                }
                let h = d[q] - d[p];
                let t = if h.abs() + g == h.abs() {
                    apq / h
                } else {
                    let theta = 0.5 * h / apq;
                    let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        t = -t;
                    }
                    t
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;
                z[p] -= h;
                z[q] += h;
                d[p] -= h;
                d[q] += h;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                let rotate = |a: &mut [f64], i1: usize, j1: usize, i2: usize, j2: usize| {
                    let g = a[i1 * n + j1];
                    let h = a[i2 * n + j2];
                    a[i1 * n + j1] = g - s * (h + g * tau);
                    a[i2 * n + j2] = h + s * (g - h * tau);
                    let x = a[i1 * n + j1];
                    a[j1 * n + i1] = x;
                    let y = a[i2 * n + j2];
                    a[j2 * n + i2] = y;
                };
                for j in 0..p {
                    rotate(&mut a, j, p, j, q);
                }
                for j in (p + 1)..q {
                    rotate(&mut a, p, j, j, q);
                }
                for j in (q + 1)..n {
                    rotate(&mut a, p, j, q, j);
                }
                for i in 0..n {
                    let gv = v[i * n + p];
                    let hv = v[i * n + q];
                    v[i * n + p] = gv - s * (hv + gv * tau);
                    v[i * n + q] = hv + s * (gv - hv * tau);
                }
            }
        }
        for i in 0..n {
            b[i] += z[i];
            d[i] = b[i];
            z[i] = 0.0;
        }
        off = off_diag_sum(&a, n);
    }

    Err(Error::NoConvergence {
        sweeps: MAX_SWEEPS,
        off,
    })
}

fn off_diag_sum(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            s += a[p * n + q].abs();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn eigen_all_ones_order_3() {
        let dec = EigenDecomposition::new(&SymMatrix::all_ones(3)).unwrap();
        let expect = [0.0, 0.0, 3.0];
        for (v, e) in dec.values().iter().zip(expect) {
            assert_close(*v, e, 1e-12);
        }
    }

    #[test]
    fn eigen_complete_graph_adjacency() {
        // A_{K3} = J - I has eigenvalues {-1, -1, 2}.
        let a = SymMatrix::from_fn(3, |i, j| if i == j { 0.0 } else { 1.0 });
        let dec = EigenDecomposition::new(&a).unwrap();
        let expect = [-1.0, -1.0, 2.0];
        for (v, e) in dec.values().iter().zip(expect) {
            assert_close(*v, e, 1e-12);
        }
        assert_eq!(dec.groups().len(), 2);
        assert_eq!(dec.groups()[0].len, 2);
    }

    #[test]
    fn eigen_cycle_4_adjacency() {
        // Hand expansion of the 4x4 characteristic polynomial gives
        // eigenvalues {-2, 0, 0, 2}.
        let adj = |i: usize, j: usize| {
            let d = (i as i32 - j as i32).rem_euclid(4);
            if d == 1 || d == 3 {
                1.0
            } else {
                0.0
            }
        };
        let dec = EigenDecomposition::new(&SymMatrix::from_fn(4, adj)).unwrap();
        let expect = [-2.0, 0.0, 0.0, 2.0];
        for (v, e) in dec.values().iter().zip(expect) {
            assert_close(*v, e, 1e-12);
        }
    }

    #[test]
    fn eigenvectors_orthonormal_and_reconstruct() {
        let m = SymMatrix::from_fn(5, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0);
        let dec = EigenDecomposition::new(&m).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let dot: f64 = dec
                    .vector(i)
                    .iter()
                    .zip(dec.vector(j))
                    .map(|(a, b)| a * b)
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_close(dot, expect, 1e-12);
            }
        }
        for i in 0..5 {
            for j in 0..5 {
                let rebuilt: f64 = (0..5)
                    .map(|k| dec.values()[k] * dec.vector(k)[i] * dec.vector(k)[j])
                    .sum();
                assert_close(rebuilt, m.get(i, j), 5.0 * 1e-10);
            }
        }
    }

    #[test]
    fn e_weights_sum_to_n() {
        let m = SymMatrix::from_fn(6, |i, j| if (i + j) % 3 == 0 { 1.0 } else { 0.0 });
        let dec = EigenDecomposition::new(&m).unwrap();
        let total: f64 = dec.groups().iter().map(|g| g.e_weight).sum();
        assert_close(total, 6.0, 1e-10);
    }

    #[test]
    fn compress_identity_and_all_ones() {
        let c = SymMatrix::identity(4).compress_to_e_perp().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_close(c.get(i, j), expect, 1e-12);
            }
        }
        let z = SymMatrix::all_ones(4).compress_to_e_perp().unwrap();
        assert!(z.max_abs() <= 1e-12);
    }

    #[test]
    fn compress_distance_of_k3() {
        // D_{K3} = J - I compresses to -I_2, so the constrained maximum is -1.
        let d = SymMatrix::from_fn(3, |i, j| if i == j { 0.0 } else { 1.0 });
        let c = d.compress_to_e_perp().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { -1.0 } else { 0.0 };
                assert_close(c.get(i, j), expect, 1e-12);
            }
        }
    }

    #[test]
    fn compress_rejects_order_one() {
        assert!(matches!(
            SymMatrix::identity(1).compress_to_e_perp(),
            Err(Error::CompressTooSmall(1))
        ));
    }

    #[test]
    fn sigma0_examples() {
        // A_{K3}: the eigenvalue 2 has eigenvector e, so sigma0 = {-1}.
        let k3 = SymMatrix::from_fn(3, |i, j| if i == j { 0.0 } else { 1.0 });
        let s = EigenDecomposition::new(&k3).unwrap().sigma0(SIGMA0_TOL);
        assert_eq!(s.len(), 1);
        assert_close(s[0], -1.0, 1e-10);

        // J_3: the eigenspace of 0 is exactly the hyperplane orthogonal to e.
        let s = EigenDecomposition::new(&SymMatrix::all_ones(3))
            .unwrap()
            .sigma0(SIGMA0_TOL);
        assert_eq!(s.len(), 1);
        assert_close(s[0], 0.0, 1e-10);

        // A_{P3}: eigenvector of 0 is (1, 0, -1), orthogonal to e; the
        // eigenvectors of +-sqrt(2) are not.
        let p3 = SymMatrix::from_fn(3, |i, j| if i + 1 == j || j + 1 == i { 1.0 } else { 0.0 });
        let s = EigenDecomposition::new(&p3).unwrap().sigma0(SIGMA0_TOL);
        assert_eq!(s.len(), 1);
        assert_close(s[0], 0.0, 1e-10);
    }

    #[test]
    fn resolvent_form_examples() {
        // 1x1 zero matrix at lambda = -2: <e, (0 + 2)^{-1} e> = 1/2.
        let dec = EigenDecomposition::new(&SymMatrix::zeros(1)).unwrap();
        assert_close(dec.resolvent_form(-2.0).unwrap(), 0.5, 1e-12);

        // A_{K2} at lambda = -3: e is the eigenvector of 1 with weight 2.
        let k2 = SymMatrix::from_fn(2, |i, j| if i == j { 0.0 } else { 1.0 });
        let dec = EigenDecomposition::new(&k2).unwrap();
        assert_close(dec.resolvent_form(-3.0).unwrap(), 0.5, 1e-12);
    }

    #[test]
    fn resolvent_matches_direct_solve_for_path_3() {
        // Direct oracle: solve (A + 2I) x = e by elimination, then <e, x>.
        // For A_{P3} the solution is (1/2, 0, 1/2), giving exactly 1.
        let p3 = SymMatrix::from_fn(3, |i, j| if i + 1 == j || j + 1 == i { 1.0 } else { 0.0 });
        let dec = EigenDecomposition::new(&p3).unwrap();
        let x = solve_shifted(&p3, -2.0);
        let direct: f64 = x.iter().sum();
        assert_close(direct, 1.0, 1e-12);
        assert_close(dec.resolvent_form(-2.0).unwrap(), direct, 1e-10);
    }

    #[test]
    fn resolvent_rejects_pole_proximity() {
        let k2 = SymMatrix::from_fn(2, |i, j| if i == j { 0.0 } else { 1.0 });
        let dec = EigenDecomposition::new(&k2).unwrap();
        assert!(matches!(
            dec.resolvent_form(1.0),
            Err(Error::PoleProximity { .. })
        ));
    }

    /// Gaussian elimination with partial pivoting for (M - lambda I) x = e;
    /// independent of the spectral expansion it cross-checks.
    fn solve_shifted(m: &SymMatrix, lambda: f64) -> Vec<f64> {
        let n = m.order();
        let mut a: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut row: Vec<f64> = (0..n).map(|j| m.get(i, j)).collect();
                row[i] -= lambda;
                row.push(1.0);
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
                .unwrap();
            a.swap(col, pivot);
            for row in (col + 1)..n {
                let f = a[row][col] / a[col][col];
                for k in col..=n {
                    a[row][k] -= f * a[col][k];
                }
            }
        }
        let mut x = vec![0.0; n];
        for row in (0..n).rev() {
            let mut s = a[row][n];
            for k in (row + 1)..n {
                s -= a[row][k] * x[k];
            }
            x[row] = s / a[row][row];
        }
        x
    }
}
