//! Polynomial hull and numerical-range regions:
//! hull(p,H) = {λ : |p(λ)| <= ||p(H)||} and
//! num(p,H) = {λ : p(λ) in nr[p(H)]}, each rasterized on a grid window.
//!
//! Membership for num uses the certified inner polygon of nr[p(H)], so the
//! inclusion num ⊆ hull holds pointwise up to rounding (every inner vertex
//! is a Rayleigh quotient, hence of modulus at most ||p(H)||).

use num_complex::Complex64;

use crate::error::Result;
use crate::grid::{evaluate_grid, GridWindow};
use crate::linalg;
use crate::matrix::ComplexMatrix;
use crate::spectral::numrange::numerical_range;
use crate::spectral::region::GridMask;

/// hull(p, H): raw value |p(λ)|, threshold ||p(H)||.
pub fn hull_region(
    m: &ComplexMatrix,
    poly: &[Complex64],
    window: &GridWindow,
    workers: usize,
) -> Result<GridMask> {
    let pm = m.polynomial(poly);
    let norm = linalg::sigma_max(&pm);
    let sigma = evaluate_grid(window, workers, |lambda| eval_scalar(poly, lambda).norm());
    Ok(GridMask {
        window: *window,
        sigma,
        eps: norm,
    })
}

/// num(p, H): raw value = signed distance of p(λ) to the inner polygon of
/// nr[p(H)] (0 inside), threshold 0 — so the stored mask is
/// {λ : p(λ) in inner polygon} with a small positive tolerance folded in.
pub fn num_region(
    m: &ComplexMatrix,
    poly: &[Complex64],
    window: &GridWindow,
    angle_count: usize,
    workers: usize,
) -> Result<GridMask> {
    let pm = m.polynomial(poly);
    let nr = numerical_range(&pm, angle_count)?;
    let tol = 1e-9 * (1.0 + linalg::sigma_max(&pm));
    let sigma = evaluate_grid(window, workers, |lambda| {
        let w = eval_scalar(poly, lambda);
        if nr.contains_inner(w, tol) {
            0.0
        } else {
            1.0
        }
    });
    Ok(GridMask {
        window: *window,
        sigma,
        eps: 0.5,
    })
}

pub(crate) fn eval_scalar(poly: &[Complex64], lambda: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in poly.iter().rev() {
        acc = acc * lambda + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::numrange::NumericalRange;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(n: usize, seed: u64) -> ComplexMatrix {
        let mut state = seed;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as f64 / (1u64 << 31) as f64) - 0.5
        };
        ComplexMatrix::from_fn(n, n, |_, _| c(next(), next()))
    }

    #[test]
    fn identity_polynomial_hull_is_norm_disk() {
        let m = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(-2.0, 0.0)]);
        let window = GridWindow::new(-3.0, 3.0, -3.0, 3.0, 41, 41).unwrap();
        let p = [c(0.0, 0.0), c(1.0, 0.0)]; // p(λ) = λ
        let mask = hull_region(&m, &p, &window, 1).unwrap();
        // normal matrix: ||M|| = 2, so hull = disk of radius 2
        for (i, z) in window.points().enumerate() {
            if (z.norm() - 2.0).abs() > 1e-9 {
                assert_eq!(mask.member(i), z.norm() <= 2.0, "at {z}");
            }
        }
    }

    #[test]
    fn squared_jordan_block_hull_collapses() {
        // p(λ) = λ² annihilates J_2, so hull(p, J_2) = {λ : λ² = 0} = {0}
        let j = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let p = [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let window = GridWindow::new(-1.0, 1.0, -1.0, 1.0, 41, 41).unwrap();
        let mask = hull_region(&j, &p, &window, 1).unwrap();
        assert!(mask.eps < 1e-14, "||p(J)|| must vanish");
        for (i, z) in window.points().enumerate() {
            assert_eq!(mask.member(i), z.norm() == 0.0, "at {z}");
        }
    }

    #[test]
    fn chain_sp_num_hull_on_random_matrices() {
        let window = GridWindow::new(-2.5, 2.5, -2.5, 2.5, 31, 31).unwrap();
        for seed in 1..6 {
            let m = random_matrix(5, seed);
            let p = [c(0.3, 0.1), c(-0.5, 0.0), c(1.0, 0.0)];
            let num = num_region(&m, &p, &window, 360, 2).unwrap();
            let hull = hull_region(&m, &p, &window, 2).unwrap();
            // num ⊆ hull at every grid point
            assert!(num.subset_of(&hull), "seed {seed}: num ⊄ hull");
            // every eigenvalue lies in num (membership via the polynomial map)
            let pm = m.polynomial(&p);
            let nr: NumericalRange = numerical_range(&pm, 360).unwrap();
            for lam in linalg::eigenvalues(&m).unwrap() {
                let w = eval_scalar(&p, lam);
                assert!(
                    nr.contains_inner(w, 1e-7 * (1.0 + linalg::sigma_max(&pm))),
                    "seed {seed}: eigenvalue image {w} outside num"
                );
            }
        }
    }
}
