//! Band operators on discrete metric spaces, cofinite compressions, and the
//! finite-rank identity behind the Decomposition Principle:
//! pSTj - (pSj)(pTj) = p S p_perp T j, with rank bounded by the number of
//! removed points.

mod fredholm;
mod toeplitz;

pub use fredholm::{
    decomposition_compare, fredholm_indicator, CompareReport, CompareRow, FredholmReport,
    FredholmRow, DEFAULT_TAU,
};
pub use toeplitz::{
    circulant, schrodinger, toeplitz, winding_number, PotentialKind, SymbolSequence,
    TruncationFamily, TruncationModel,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::ComplexMatrix;

/// Finite metric space: explicit distances or a Z-window with the lattice
/// metric |i - j|.
#[derive(Clone, Debug)]
pub struct DiscreteMetricSpace {
    n: usize,
    dist: Vec<f64>,
}

impl DiscreteMetricSpace {
    pub fn z_window(n: usize) -> Self {
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                dist[i * n + j] = (i as f64 - j as f64).abs();
            }
        }
        Self { n, dist }
    }

    pub fn from_distances(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidModel("distance matrix not square".into()));
        }
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                dist[i * n + j] = rows[i][j];
            }
        }
        let space = Self { n, dist };
        space.validate()?;
        Ok(space)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            if self.dist(i, i) != 0.0 {
                return Err(Error::InvalidModel(format!("d({i},{i}) != 0")));
            }
            for j in 0..n {
                if i != j && !(self.dist(i, j) > 0.0) {
                    return Err(Error::InvalidModel(format!("d({i},{j}) not positive")));
                }
                if (self.dist(i, j) - self.dist(j, i)).abs() > 0.0 {
                    return Err(Error::InvalidModel(format!("d({i},{j}) not symmetric")));
                }
                for k in 0..n {
                    if self.dist(i, j) > self.dist(i, k) + self.dist(k, j) + 1e-12 {
                        return Err(Error::InvalidModel(format!(
                            "triangle inequality fails at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    /// Uniform discreteness gap: the smallest off-diagonal distance.
    pub fn gap(&self) -> f64 {
        let mut g = f64::INFINITY;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    g = g.min(self.dist(i, j));
                }
            }
        }
        g
    }

    /// Bounded-geometry constant N_r: the largest cardinality of a closed
    /// ball of radius r.
    pub fn ball_bound(&self, r: f64) -> usize {
        (0..self.n)
            .map(|i| (0..self.n).filter(|&j| self.dist(i, j) <= r).count())
            .max()
            .unwrap_or(0)
    }
}

/// Minimal band width consistent with the zero pattern, and the largest
/// entry modulus.
pub fn band_width(space: &DiscreteMetricSpace, h: &ComplexMatrix) -> (f64, f64) {
    assert_eq!(space.len(), h.dim(), "operator does not match space");
    let mut r: f64 = 0.0;
    let mut max_entry: f64 = 0.0;
    for i in 0..space.len() {
        for j in 0..space.len() {
            let v = h[(i, j)].norm();
            if v > 0.0 {
                r = r.max(space.dist(i, j));
                max_entry = max_entry.max(v);
            }
        }
    }
    (r, max_entry)
}

/// Compression p H j onto the kept index set (order preserved).
pub fn compress(h: &ComplexMatrix, keep: &[usize]) -> Result<ComplexMatrix> {
    if keep.is_empty() {
        return Err(Error::EmptySubset);
    }
    Ok(h.submatrix(keep, keep))
}

#[derive(Clone, Debug)]
pub struct FiniteRankReport {
    pub residual: f64,
    pub rank: usize,
    pub rank_bound: usize,
}

/// The compression identity pSTj - (pSj)(pTj) = p S p_perp T j, verified
/// numerically, with the rank of the correction term.
pub fn finite_rank_identity(
    s: &ComplexMatrix,
    t: &ComplexMatrix,
    keep: &[usize],
) -> Result<FiniteRankReport> {
    let n = s.dim();
    assert_eq!(t.dim(), n, "S and T must act on the same space");
    if keep.is_empty() {
        return Err(Error::EmptySubset);
    }
    let comp: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    let pstj = s.matmul(t).submatrix(keep, keep);
    let psj_ptj = s.submatrix(keep, keep).matmul(&t.submatrix(keep, keep));
    let correction = s.submatrix(keep, &comp).matmul(&t.submatrix(&comp, keep));
    let lhs = &(&pstj - &psj_ptj) - &correction;
    let scale = 1.0 + linalg::sigma_max(s) * linalg::sigma_max(t);
    Ok(FiniteRankReport {
        residual: lhs.max_abs() / scale,
        rank: linalg::rank(&correction),
        rank_bound: comp.len(),
    })
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff_points(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let directed = |x: &[Complex64], y: &[Complex64]| {
        x.iter()
            .map(|&p| y.iter().map(|&q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    Ok(directed(a, b).max(directed(b, a)))
}
