//! Cyclic Jacobi eigenvalue iteration for dense real symmetric matrices.
//!
//! Slower than the Householder/QR path but independent of it, which makes it
//! the second route when cross-checking eigenbasis-invariant quantities.

use nalgebra::DMatrix;

/// Upper bound on full sweeps; quadratic convergence normally needs < 15.
pub const MAX_SWEEPS: usize = 100;

/// Returns `(eigenvalues, eigenvectors)` with eigenvectors as columns, in
/// the order the iteration leaves them (unsorted). `None` if the sweep
/// budget runs out.
pub fn jacobi_eigen(a: &DMatrix<f64>, max_sweeps: usize) -> Option<(Vec<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix must be square");
    let mut a = a.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);

    for _ in 0..max_sweeps {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)] * a[(p, q)])
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * 1e-2 * scale {
            return Some(((0..n).map(|i| a[(i, i)]).collect(), v));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonalizes_a_small_symmetric_matrix() {
        let m = DMatrix::from_row_slice(3, 3, &[2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0]);
        let (mut vals, vecs) = jacobi_eigen(&m, MAX_SWEEPS).unwrap();
        let recon = &vecs * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vals.clone()))
            * vecs.transpose();
        assert!((recon - &m).abs().max() < 1e-13);
        vals.sort_by(f64::total_cmp);
        let r2 = std::f64::consts::SQRT_2;
        for (got, want) in vals.iter().zip([2.0 - r2, 2.0, 2.0 + r2]) {
            assert!((got - want).abs() < 1e-13);
        }
    }

    #[test]
    fn diagonal_input_converges_immediately() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![3.0, 1.0]));
        let (vals, vecs) = jacobi_eigen(&m, 1).unwrap();
        assert_eq!(vals, vec![3.0, 1.0]);
        assert_eq!(vecs, DMatrix::identity(2, 2));
    }
}
