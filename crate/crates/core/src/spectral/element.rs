//! Spectral sets of algebra elements. A finite groupoid algebra splits as a
//! direct sum over orbits with a faithful regular representation per orbit,
//! so every Σ is computed through one representative per orbit: spectra are
//! unions, pseudospectrum raw values are minima, numerical ranges come from
//! the direct sum. The essential Σ-spectrum is Σ of the reduction to an
//! invariant boundary subset, and is always contained in Σ.

use num_complex::Complex64;

use crate::error::Result;
use crate::grid::{evaluate_grid, GridWindow};
use crate::groupoid::UnitSubset;
use crate::kernel::Kernel;
use crate::linalg;
use crate::matrix::ComplexMatrix;
use crate::spectral::numrange::{numerical_range, NumericalRange};
use crate::spectral::region::{EigenvalueSet, GridMask, SpectralRegion};

#[derive(Clone, Copy, Debug)]
pub enum SigmaSelector {
    Spectrum,
    Pseudospectrum { eps: f64 },
    NumericalRange { angles: usize },
}

fn orbit_reps(f: &Kernel) -> Result<Vec<ComplexMatrix>> {
    f.carrier()
        .groupoid()
        .orbit_representatives()
        .into_iter()
        .map(|x| f.regular_rep(x))
        .collect()
}

/// Spectrum of the element: union over orbits of the eigenvalues of the
/// per-orbit regular representations (multiplicities are those of the
/// direct sum).
pub fn element_spectrum(f: &Kernel) -> Result<EigenvalueSet> {
    let mut all = Vec::new();
    for rep in orbit_reps(f)? {
        all.extend(crate::spectral::spectrum_points(&rep)?);
    }
    Ok(EigenvalueSet::from_points(all))
}

/// Pseudospectrum raw grid of the element: sigma(λ) is the minimum over
/// orbit representations of sigma_min(Π(f) - λ), matching the reduced norm
/// of the resolvent.
pub fn element_psp_grid(
    f: &Kernel,
    eps: f64,
    window: &GridWindow,
    workers: usize,
) -> Result<GridMask> {
    let reps = orbit_reps(f)?;
    let sigma = evaluate_grid(window, workers, |lambda| {
        reps.iter()
            .map(|rep| {
                let shifted = ComplexMatrix::from_fn(rep.dim(), rep.dim(), |i, j| {
                    rep[(i, j)] - if i == j { lambda } else { Complex64::new(0.0, 0.0) }
                });
                linalg::sigma_min(&shifted)
            })
            .fold(f64::INFINITY, f64::min)
    });
    Ok(GridMask {
        window: *window,
        sigma,
        eps,
    })
}

/// Numerical range of the element: the range of the direct sum of the
/// per-orbit representations.
pub fn element_numerical_range(f: &Kernel, angles: usize) -> Result<NumericalRange> {
    let reps = orbit_reps(f)?;
    let mut sum = reps[0].clone();
    for rep in reps.iter().skip(1) {
        sum = sum.direct_sum(rep);
    }
    numerical_range(&sum, angles)
}

#[derive(Clone, Debug)]
pub struct EssentialReport {
    pub region: SpectralRegion,
    /// Whether Σ_ess ⊆ Σ held within tolerance.
    pub inclusion_ok: bool,
    /// Worst violation of the inclusion (0 when clean).
    pub inclusion_gap: f64,
}

/// Essential Σ-spectrum with respect to the ideal of the open invariant
/// complement: Σ applied to the reduction of f onto the invariant subset
/// `x_inf`. The inclusion Σ_ess ⊆ Σ is verified and reported.
pub fn essential_sigma(
    f: &Kernel,
    x_inf: &UnitSubset,
    selector: SigmaSelector,
    window: Option<&GridWindow>,
    workers: usize,
) -> Result<EssentialReport> {
    let reduced = f.reduce(x_inf)?;
    match selector {
        SigmaSelector::Spectrum => {
            let ess = element_spectrum(&reduced)?;
            let full = element_spectrum(f)?;
            let gap = directed_point_gap(&ess.values(), &full.values());
            Ok(EssentialReport {
                inclusion_ok: gap < 1e-9 * scale_of(&full.values()),
                inclusion_gap: gap,
                region: SpectralRegion::Points(ess),
            })
        }
        SigmaSelector::Pseudospectrum { eps } => {
            let w = window.expect("pseudospectrum selector needs a window");
            let ess = element_psp_grid(&reduced, eps, w, workers)?;
            let full = element_psp_grid(f, eps, w, workers)?;
            // quotients increase resolvent sigma: sigma_ess >= sigma_full
            let gap = ess
                .sigma
                .iter()
                .zip(full.sigma.iter())
                .map(|(e, f)| (f - e).max(0.0))
                .fold(0.0, f64::max);
            Ok(EssentialReport {
                inclusion_ok: gap < 1e-9 * (1.0 + f.reduced_norm()),
                inclusion_gap: gap,
                region: SpectralRegion::Mask(ess),
            })
        }
        SigmaSelector::NumericalRange { angles } => {
            let ess = element_numerical_range(&reduced, angles)?;
            let full = element_numerical_range(f, angles)?;
            let gap = ess
                .support
                .iter()
                .zip(full.support.iter())
                .map(|(&(_, de), &(_, df))| (de - df).max(0.0))
                .fold(0.0, f64::max);
            Ok(EssentialReport {
                inclusion_ok: gap < 1e-9 * (1.0 + f.reduced_norm()),
                inclusion_gap: gap,
                region: SpectralRegion::Polygons {
                    inner: ess.inner,
                    outer: ess.outer,
                },
            })
        }
    }
}

fn scale_of(points: &[Complex64]) -> f64 {
    points.iter().map(|z| z.norm()).fold(1.0, f64::max)
}

/// sup over a of dist(a, B); 0 when A ⊆ B as point sets.
fn directed_point_gap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .map(|&x| b.iter().map(|&y| (x - y).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}
