//! Shared input builders for the benchmark targets.

use num_complex::Complex64;
use spectrolab_core::matrix::ComplexMatrix;

/// Deterministic pseudo-random complex matrix (LCG).
pub fn random_matrix(n: usize, seed: u64) -> ComplexMatrix {
    let mut state = seed;
    let mut next = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 33) as f64 / (1u64 << 31) as f64) - 0.5
    };
    ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(next(), next()))
}

pub fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
    let m = random_matrix(n, seed);
    let mh = m.conjugate_transpose();
    ComplexMatrix::from_fn(n, n, |i, j| (m[(i, j)] + mh[(i, j)]) * Complex64::new(0.5, 0.0))
}
