//! Spectral region representations: finite eigenvalue sets, convex polygon
//! pairs, and boolean grid masks that keep their raw sigma_min values so
//! thresholds can be re-applied without recomputation.

use num_complex::Complex64;

use crate::grid::GridWindow;

#[derive(Clone, Debug)]
pub struct EigenvalueSet {
    points: Vec<(Complex64, usize)>,
}

impl EigenvalueSet {
    /// Groups a raw multiset into (value, multiplicity) pairs; values within
    /// `1e-9 * scale` of each other are merged. Points are sorted by
    /// (re, im) for reproducible output.
    pub fn from_points(mut raw: Vec<Complex64>) -> Self {
        raw.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        let scale = raw.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let tol = 1e-9 * scale;
        let mut points: Vec<(Complex64, usize)> = Vec::new();
        for z in raw {
            match points.last_mut() {
                Some((w, m)) if (z - *w).norm() <= tol => *m += 1,
                _ => points.push((z, 1)),
            }
        }
        Self { points }
    }

    pub fn points(&self) -> &[(Complex64, usize)] {
        &self.points
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.points.iter().map(|&(z, _)| z).collect()
    }

    /// Full multiset, eigenvalues repeated by multiplicity.
    pub fn with_multiplicity(&self) -> Vec<Complex64> {
        self.points
            .iter()
            .flat_map(|&(z, m)| std::iter::repeat(z).take(m))
            .collect()
    }

    pub fn total(&self) -> usize {
        self.points.iter().map(|&(_, m)| m).sum()
    }
}

/// Grid mask over a window: raw sigma_min samples plus the boolean
/// membership at level eps.
#[derive(Clone, Debug)]
pub struct GridMask {
    pub window: GridWindow,
    pub sigma: Vec<f64>,
    pub eps: f64,
}

impl GridMask {
    pub fn member(&self, idx: usize) -> bool {
        self.sigma[idx] <= self.eps
    }

    pub fn members(&self) -> Vec<bool> {
        self.sigma.iter().map(|&s| s <= self.eps).collect()
    }

    /// Re-applies a different threshold to the stored raw values.
    pub fn rethreshold(&self, eps: f64) -> GridMask {
        GridMask {
            window: self.window,
            sigma: self.sigma.clone(),
            eps,
        }
    }

    pub fn member_points(&self) -> Vec<Complex64> {
        (0..self.sigma.len())
            .filter(|&i| self.member(i))
            .map(|i| self.window.point(i))
            .collect()
    }

    /// Pointwise mask inclusion (nesting check).
    pub fn subset_of(&self, other: &GridMask) -> bool {
        assert_eq!(self.window, other.window);
        (0..self.sigma.len()).all(|i| !self.member(i) || other.member(i))
    }
}

#[derive(Clone, Debug)]
pub enum SpectralRegion {
    Points(EigenvalueSet),
    Polygons {
        inner: Vec<Complex64>,
        outer: Vec<Complex64>,
    },
    Mask(GridMask),
}
