//! ε-pseudospectra of operator polynomials on grids: the closed region
//! {λ : sigma_min(E(λ)) ≤ ε}, equivalently ||E(λ)^{-1}|| ≥ 1/ε with the
//! convention that the norm is infinite at singular points. Masks are
//! closed because the defining inequality in the pseudospectrum definition
//! is non-strict.

use crate::error::{Error, Result};
use crate::grid::{evaluate_grid, GridWindow};
use crate::linalg;
use crate::matrix::ComplexMatrix;
use crate::spectral::polynomial::OperatorPolynomial;
use crate::spectral::region::GridMask;

/// Pseudospectrum of an operator polynomial over a grid window. The raw
/// sigma_min values are retained so other thresholds can be re-applied.
pub fn pseudospectrum(
    p: &OperatorPolynomial,
    eps: f64,
    window: &GridWindow,
    workers: usize,
) -> Result<GridMask> {
    if !(eps > 0.0) {
        return Err(Error::InvalidModel("pseudospectrum needs eps > 0".into()));
    }
    let sigma = evaluate_grid(window, workers, |lambda| linalg::sigma_min(&p.eval(lambda)));
    Ok(GridMask {
        window: *window,
        sigma,
        eps,
    })
}

/// Standard linear case: pseudospectrum of the matrix itself.
pub fn matrix_pseudospectrum(
    m: &ComplexMatrix,
    eps: f64,
    window: &GridWindow,
    workers: usize,
) -> Result<GridMask> {
    pseudospectrum(&OperatorPolynomial::linear(m.clone()), eps, window, workers)
}
