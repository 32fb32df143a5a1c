//! Numerical linear algebra for dense complex matrices. Everything is
//! hand-rolled: the crate has no external solver dependencies.

mod eig;
mod hermitian;
mod qr;

pub use eig::eigenvalues;
pub use hermitian::{eigh, eigh_values, top_eigenpair};
pub use qr::{
    givens, inverse, qr_full, qr_r, qr_r_banded, rank, sigma_min, sigma_min_banded,
    sigma_min_from_r, solve_upper, solve_upper_adjoint,
};

use crate::matrix::ComplexMatrix;
use num_complex::Complex64;

/// Largest singular value (spectral norm), via the top eigenvalue of M*M.
pub fn sigma_max(a: &ComplexMatrix) -> f64 {
    if a.rows() == 0 || a.cols() == 0 {
        return 0.0;
    }
    let gram = a.conjugate_transpose().matmul(a);
    let vals = eigh_values(&gram);
    vals.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// All singular values (descending) via the Jordan-Wielandt embedding
/// [[0, A*],[A, 0]], whose eigenvalues are the +/- singular values. This is
/// a deliberately independent route from the QR-based `sigma_min`.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let (m, n) = (a.rows(), a.cols());
    let k = m.min(n);
    if k == 0 {
        return Vec::new();
    }
    let dim = m + n;
    let mut jw = ComplexMatrix::zeros(dim, dim);
    for i in 0..m {
        for j in 0..n {
            jw[(n + i, j)] = a[(i, j)];
            jw[(j, n + i)] = a[(i, j)].conj();
        }
    }
    let vals = eigh_values(&jw);
    let mut out: Vec<f64> = vals.iter().rev().take(k).map(|&x| x.max(0.0)).collect();
    out.sort_by(|x, y| y.partial_cmp(x).unwrap());
    out
}

/// Operator 2-norm of the difference of two equally sized matrices.
pub fn opnorm_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    sigma_max(&(a - b))
}

/// Multiset distance between two eigenvalue lists: greedy matching is not
/// robust, so this uses the symmetric Hausdorff distance, which is the right
/// notion for the spectral-set comparisons in this crate.
pub fn spectrum_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    crate::decomposition::hausdorff_points(a, b).unwrap_or(f64::INFINITY)
}
