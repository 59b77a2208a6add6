//! Eigendecomposition of the Hamiltonian and grouping of degenerate levels.

use std::ops::Range;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::jacobi;

/// Dense real symmetric matrix driving both walks (`H = A` with unit rate).
#[derive(Clone, Debug, PartialEq)]
pub struct Hamiltonian {
    matrix: DMatrix<f64>,
}

impl Hamiltonian {
    /// Accepts any square matrix that is exactly symmetric.
    pub fn from_matrix(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() {
            return domain(format!(
                "Hamiltonian must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            ));
        }
        let n = matrix.nrows();
        for i in 0..n {
            for j in (i + 1)..n {
                if matrix[(i, j)] != matrix[(j, i)] {
                    return domain(format!("matrix is not symmetric at ({}, {})", i + 1, j + 1));
                }
            }
        }
        Ok(Self { matrix })
    }

    pub fn order(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    /// Rows sum to zero and the diagonal is non-negative.
    pub fn is_laplacian(&self) -> bool {
        self.matrix.row_iter().all(|r| r.sum() == 0.0)
            && self.matrix.diagonal().iter().all(|&d| d >= 0.0)
    }
}

/// Which dense symmetric eigensolver to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EigenSolver {
    /// Householder tridiagonalization followed by implicit QR (nalgebra).
    #[default]
    Householder,
    /// Cyclic Jacobi rotations.
    Jacobi,
}

/// Ascending eigenvalues with orthonormal eigenvectors as the columns of
/// `eigenvectors` (row = node, column = mode).
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
}

impl Spectrum {
    /// Wraps an externally computed decomposition. Eigenvalues must be
    /// ascending and the matrix must be `N x N`.
    pub fn from_parts(eigenvalues: Vec<f64>, eigenvectors: DMatrix<f64>) -> Result<Self> {
        let n = eigenvalues.len();
        if eigenvectors.nrows() != n || eigenvectors.ncols() != n {
            return domain(format!(
                "{n} eigenvalues but a {}x{} eigenvector matrix",
                eigenvectors.nrows(),
                eigenvectors.ncols()
            ));
        }
        if eigenvalues.windows(2).any(|w| w[0].partial_cmp(&w[1]).is_none_or(|o| o.is_gt())) {
            return domain("eigenvalues must be finite and ascending");
        }
        Ok(Self {
            eigenvalues,
            eigenvectors,
        })
    }

    pub fn order(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    /// `⟨node|q_mode⟩` with a 1-based node and 0-based mode.
    pub fn component(&self, node: usize, mode: usize) -> f64 {
        self.eigenvectors[(node - 1, mode)]
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if node == 0 || node > self.order() {
            return domain(format!("node {node} is outside 1..={}", self.order()));
        }
        Ok(())
    }

    /// Largest eigenvalue magnitude.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, e| m.max(e.abs()))
    }

    /// `max |H - Q diag(E) Qᵀ|`.
    pub fn reconstruction_error(&self, h: &Hamiltonian) -> f64 {
        let q = &self.eigenvectors;
        let scaled = q * DMatrix::from_diagonal(&DVector::from_column_slice(&self.eigenvalues));
        (scaled * q.transpose() - h.matrix()).abs().max()
    }

    /// `max |QᵀQ - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.order();
        (self.eigenvectors.tr_mul(&self.eigenvectors) - DMatrix::identity(n, n))
            .abs()
            .max()
    }

    /// Default degeneracy tolerance, `1e-8 · max(1, |E_N|)`.
    pub fn default_degeneracy_tolerance(&self) -> f64 {
        1e-8 * self.eigenvalues.last().map_or(1.0, |e| e.abs().max(1.0))
    }
}

pub fn eigendecompose(h: &Hamiltonian) -> Result<Spectrum> {
    eigendecompose_with(h, EigenSolver::default())
}

pub fn eigendecompose_with(h: &Hamiltonian, solver: EigenSolver) -> Result<Spectrum> {
    let n = h.order();
    let (values, vectors) = match solver {
        EigenSolver::Householder => {
            let eig = SymmetricEigen::try_new(h.matrix().clone(), f64::EPSILON, 1000 * n.max(1))
                .ok_or(Error::Numeric { order: n })?;
            (eig.eigenvalues.as_slice().to_vec(), eig.eigenvectors)
        }
        EigenSolver::Jacobi => jacobi::jacobi_eigen(h.matrix(), jacobi::MAX_SWEEPS)
            .ok_or(Error::Numeric { order: n })?,
    };
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric { order: n });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let eigenvalues = order.iter().map(|&i| values[i]).collect();
    let mut eigenvectors = DMatrix::<f64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = vectors.column(src).into_owned();
        // first clearly nonzero component positive
        if let Some(&lead) = col.iter().find(|x| x.abs() > 1e-8) {
            if lead < 0.0 {
                col.neg_mut();
            }
        }
        eigenvectors.set_column(dst, &col);
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Consecutive runs of (numerically) equal eigenvalues.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenspaceGrouping {
    groups: Vec<Range<usize>>,
    tolerance: f64,
    order: usize,
}

impl EigenspaceGrouping {
    /// Ranges of 0-based mode indices.
    pub fn groups(&self) -> &[Range<usize>] {
        &self.groups
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.len()).collect()
    }
}

/// Starts a new group whenever the gap to the previous eigenvalue exceeds
/// `tol`.
pub fn group_degenerate(s: &Spectrum, tol: f64) -> Result<EigenspaceGrouping> {
    group_values(s.eigenvalues(), tol)
}

pub fn group_values(values: &[f64], tol: f64) -> Result<EigenspaceGrouping> {
    if tol.is_nan() || tol <= 0.0 {
        return domain(format!("degeneracy tolerance must be positive, got {tol}"));
    }
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tol {
            groups.push(start..i);
            start = i;
        }
    }
    Ok(EigenspaceGrouping {
        groups,
        tolerance: tol,
        order: values.len(),
    })
}

/// Grouping with [`Spectrum::default_degeneracy_tolerance`].
pub fn group_degenerate_default(s: &Spectrum) -> EigenspaceGrouping {
    group_degenerate(s, s.default_degeneracy_tolerance()).expect("default tolerance is positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Network;

    #[test]
    fn k4_spectrum() {
        let h = Network::generate(1).unwrap().laplacian();
        for solver in [EigenSolver::Householder, EigenSolver::Jacobi] {
            let s = eigendecompose_with(&h, solver).unwrap();
            for (got, want) in s.eigenvalues().iter().zip([0.0, 4.0, 4.0, 4.0]) {
                assert!((got - want).abs() < 1e-12, "{solver:?}: {got}");
            }
            let g = group_degenerate(&s, 1e-8).unwrap();
            assert_eq!(g.sizes(), vec![1, 3]);
        }
    }

    #[test]
    fn identity_has_double_eigenvalue() {
        let h = Hamiltonian::from_matrix(DMatrix::identity(2, 2)).unwrap();
        let s = eigendecompose(&h).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 1.0]);
        assert!(s.orthonormality_error() < 1e-15);
    }

    #[test]
    fn trace_at_g3_is_twice_the_edge_count() {
        let h = Network::generate(3).unwrap().laplacian();
        let s = eigendecompose(&h).unwrap();
        let sum: f64 = s.eigenvalues().iter().sum();
        assert_eq!(h.trace(), 84.0);
        assert!((sum - 84.0).abs() < 1e-9 * 84.0);
    }

    #[test]
    fn zero_mode_is_uniform_and_simple() {
        let net = Network::generate(3).unwrap();
        let s = eigendecompose(&net.laplacian()).unwrap();
        assert!(s.eigenvalues()[0].abs() < 1e-10);
        assert!(s.eigenvalues()[1] > 1e-3);
        let u = 1.0 / (16f64).sqrt();
        for k in 1..=16 {
            assert!((s.component(k, 0).abs() - u).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_asymmetric_input() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 1.0]);
        assert!(matches!(Hamiltonian::from_matrix(m), Err(Error::Domain(_))));
        assert!(Hamiltonian::from_matrix(DMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn grouping_edge_cases() {
        let g = group_values(&[0.0, 1.0, 2.0], 1e-8).unwrap();
        assert_eq!(g.sizes(), vec![1, 1, 1]);
        let g = group_values(&[0.0, 1e-12, 5.0], 1e-8).unwrap();
        assert_eq!(g.groups(), &[0..2, 2..3]);
        assert!(group_values(&[0.0], 0.0).is_err());
        assert!(group_values(&[0.0], -1.0).is_err());
        assert!(group_values(&[0.0], f64::NAN).is_err());
    }

    #[test]
    fn decomposition_is_deterministic() {
        let h = Network::generate(4).unwrap().laplacian();
        assert_eq!(eigendecompose(&h).unwrap(), eigendecompose(&h).unwrap());
    }

    #[test]
    fn from_parts_validates_shape_and_order() {
        assert!(Spectrum::from_parts(vec![1.0, 0.0], DMatrix::identity(2, 2)).is_err());
        assert!(Spectrum::from_parts(vec![0.0, 1.0], DMatrix::identity(3, 3)).is_err());
        assert!(Spectrum::from_parts(vec![0.0, 1.0], DMatrix::identity(2, 2)).is_ok());
    }
}
