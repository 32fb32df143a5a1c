//! C*-algebraic spectral sets of complex matrices and operator polynomials:
//! spectrum, ε-pseudospectrum, numerical range, hull(p,·), num(p,·), and the
//! essential variants computed through reductions.

mod element;
mod hullnum;
mod numrange;
mod polynomial;
mod pseudospectrum;
mod region;

pub use element::{
    element_numerical_range, element_psp_grid, element_spectrum, essential_sigma, SigmaSelector,
};
pub use hullnum::{hull_region, num_region};
pub use numrange::{
    convex_hull, numerical_range, point_in_convex_polygon, polygon_hausdorff, NumericalRange,
};
pub use polynomial::{zero_spectrum, OperatorPolynomial};
pub use pseudospectrum::{matrix_pseudospectrum, pseudospectrum};
pub use region::{EigenvalueSet, GridMask, SpectralRegion};

use crate::error::Result;
use crate::grid::GridWindow;
use crate::linalg;
use crate::matrix::ComplexMatrix;
use num_complex::Complex64;

/// Eigenvalues with multiplicity. Thin wrapper packaging the eigensolver
/// output as a spectral region.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<EigenvalueSet> {
    Ok(EigenvalueSet::from_points(spectrum_points(m)?))
}

/// Eigenvalue multiset, routing Hermitian input to the symmetric solver.
/// The general QR path resolves multiple eigenvalues only to sqrt(eps);
/// the Jacobi path keeps Hermitian ones at full precision.
pub fn spectrum_points(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let tol = 1e-12 * (1.0 + m.max_abs());
    if m.is_hermitian(tol) {
        Ok(linalg::eigh_values(m)
            .into_iter()
            .map(|x| Complex64::new(x, 0.0))
            .collect())
    } else {
        linalg::eigenvalues(m)
    }
}

/// Smallest singular value, the resolvent-norm evaluator: for invertible M,
/// ||M^{-1}|| = 1/sigma_min(M).
pub fn sigma_min(m: &ComplexMatrix) -> f64 {
    linalg::sigma_min(m)
}

/// Window auto-sizing: 1.5x the bounding box of the (outer) numerical range
/// polygon, padded when the range is degenerate (normal/Hermitian cases).
pub fn auto_window(m: &ComplexMatrix, nx: usize, ny: usize) -> Result<GridWindow> {
    let nr = numerical_range(m, 64)?;
    let pts: Vec<Complex64> = nr.outer.clone();
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in &pts {
        xmin = xmin.min(p.re);
        xmax = xmax.max(p.re);
        ymin = ymin.min(p.im);
        ymax = ymax.max(p.im);
    }
    let cx = 0.5 * (xmin + xmax);
    let cy = 0.5 * (ymin + ymax);
    let scale = ((xmax - xmin).max(ymax - ymin)).max(1e-3);
    let hw = 0.75 * scale.max(xmax - xmin);
    let hh = 0.75 * scale.max(ymax - ymin);
    GridWindow::new(cx - hw, cx + hw, cy - hh, cy + hh, nx, ny)
}
