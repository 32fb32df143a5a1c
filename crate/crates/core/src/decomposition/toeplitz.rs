//! Finite sections of Z-models: Toeplitz matrices of a finitely supported
//! symbol, their circulant (periodized) cousins, and discrete Schrödinger
//! operators. The symbol curve ψ̂(θ) = Σ ψ(a) e^{iaθ} is the predicted
//! essential spectrum of every cofinite Toeplitz compression.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolSequence {
    coeffs: BTreeMap<i64, Complex64>,
}

impl SymbolSequence {
    pub fn new(pairs: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let coeffs = pairs
            .into_iter()
            .filter(|&(_, v)| v != Complex64::new(0.0, 0.0))
            .collect();
        Self { coeffs }
    }

    pub fn delta(offset: i64) -> Self {
        Self::new([(offset, Complex64::new(1.0, 0.0))])
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Complex64> {
        &self.coeffs
    }

    pub fn value(&self, offset: i64) -> Complex64 {
        self.coeffs
            .get(&offset)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Largest |offset| in the support; 0 for the zero symbol.
    pub fn band_width(&self) -> i64 {
        self.coeffs.keys().map(|&a| a.abs()).max().unwrap_or(0)
    }

    /// ψ̂(θ) = Σ_a ψ(a) e^{iaθ}.
    pub fn symbol_at(&self, theta: f64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&a, &v)| v * Complex64::from_polar(1.0, a as f64 * theta))
            .sum()
    }

    /// Sampled symbol curve {ψ̂(2πk/samples)}.
    pub fn curve(&self, samples: usize) -> Vec<Complex64> {
        assert!(samples >= 16, "symbol curve needs at least 16 samples");
        (0..samples)
            .map(|k| self.symbol_at(std::f64::consts::TAU * k as f64 / samples as f64))
            .collect()
    }

    /// Distance from a point to the sampled symbol curve.
    pub fn curve_distance(&self, lambda: Complex64, samples: usize) -> f64 {
        self.curve(samples)
            .into_iter()
            .map(|z| (z - lambda).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Winding number of the symbol curve around λ, sampled at `samples`
/// points. For λ off the curve this is the Fredholm index obstruction of
/// the Toeplitz operator: index T(ψ - λ) = -winding.
pub fn winding_number(psi: &SymbolSequence, lambda: Complex64, samples: usize) -> i64 {
    let curve = psi.curve(samples);
    let mut total = 0.0;
    for k in 0..samples {
        let a = curve[k] - lambda;
        let b = curve[(k + 1) % samples] - lambda;
        total += (b / a).arg();
    }
    (total / std::f64::consts::TAU).round() as i64
}

/// Toeplitz section T_N(ψ)[j,k] = ψ(j-k). Requires support inside (-N, N).
pub fn toeplitz(psi: &SymbolSequence, n: usize) -> Result<ComplexMatrix> {
    if psi.band_width() >= n as i64 {
        return Err(Error::SupportTooWide(n));
    }
    Ok(ComplexMatrix::from_fn(n, n, |j, k| {
        psi.value(j as i64 - k as i64)
    }))
}

/// Circulant periodization: indices wrap mod N.
pub fn circulant(psi: &SymbolSequence, n: usize) -> Result<ComplexMatrix> {
    if psi.band_width() >= n as i64 {
        return Err(Error::SupportTooWide(n));
    }
    let mut m = ComplexMatrix::zeros(n, n);
    for (&a, &v) in psi.coeffs() {
        for k in 0..n {
            let j = (k as i64 + a).rem_euclid(n as i64) as usize;
            m[(j, k)] += v;
        }
    }
    Ok(m)
}

/// Discrete Schrödinger section: hopping 1 on the first off-diagonals plus
/// the diagonal potential V(0), ..., V(N-1).
pub fn schrodinger(potential: &[Complex64], n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |j, k| {
        if j == k {
            potential.get(j).copied().unwrap_or(Complex64::new(0.0, 0.0))
        } else if j.abs_diff(k) == 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

#[derive(Clone, Debug)]
pub enum PotentialKind {
    /// Finitely supported values at window indices 0, 1, ...; zero beyond.
    Compact(Vec<Complex64>),
    /// V(n) = amplitude * cos(2π β n + phase).
    AlmostPeriodic { amplitude: f64, beta: f64, phase: f64 },
}

impl PotentialKind {
    pub fn sample(&self, n: usize) -> Vec<Complex64> {
        match self {
            PotentialKind::Compact(v) => {
                let mut out = vec![Complex64::new(0.0, 0.0); n];
                for (i, &x) in v.iter().enumerate().take(n) {
                    out[i] = x;
                }
                out
            }
            PotentialKind::AlmostPeriodic { amplitude, beta, phase } => (0..n)
                .map(|k| {
                    Complex64::new(
                        amplitude * (std::f64::consts::TAU * beta * k as f64 + phase).cos(),
                        0.0,
                    )
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum TruncationModel {
    Toeplitz(SymbolSequence),
    Circulant(SymbolSequence),
    Schrodinger(PotentialKind),
}

/// Generator of finite sections H_N over a size schedule. For Toeplitz and
/// Schrödinger models the sections are nested: H_N is the leading principal
/// submatrix of H_N' for N < N'.
#[derive(Clone, Debug)]
pub struct TruncationFamily {
    pub model: TruncationModel,
    pub sizes: Vec<usize>,
}

impl TruncationFamily {
    pub fn new(model: TruncationModel, sizes: Vec<usize>) -> Result<Self> {
        if sizes.len() < 2 {
            return Err(Error::ScheduleTooShort {
                need: 2,
                got: sizes.len(),
            });
        }
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != sizes.len() {
            return Err(Error::InvalidModel("schedule sizes must be strictly increasing".into()));
        }
        Ok(Self {
            model,
            sizes: sorted,
        })
    }

    pub fn section(&self, n: usize) -> Result<ComplexMatrix> {
        match &self.model {
            TruncationModel::Toeplitz(psi) => toeplitz(psi, n),
            TruncationModel::Circulant(psi) => circulant(psi, n),
            TruncationModel::Schrodinger(p) => Ok(schrodinger(&p.sample(n), n)),
        }
    }

    /// Band width of every section (lattice metric).
    pub fn band_width(&self) -> usize {
        match &self.model {
            TruncationModel::Toeplitz(psi) | TruncationModel::Circulant(psi) => {
                psi.band_width() as usize
            }
            TruncationModel::Schrodinger(_) => 1,
        }
    }

    /// Analytic symbol curve when the model has one (Toeplitz/circulant),
    /// or the Schrödinger curve of the free part plus potential range hint.
    pub fn symbol(&self) -> Option<&SymbolSequence> {
        match &self.model {
            TruncationModel::Toeplitz(psi) | TruncationModel::Circulant(psi) => Some(psi),
            TruncationModel::Schrodinger(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn delta_zero_is_identity() {
        let t = toeplitz(&SymbolSequence::delta(0), 5).unwrap();
        assert_eq!(t, ComplexMatrix::identity(5));
        let cm = circulant(&SymbolSequence::delta(0), 5).unwrap();
        assert_eq!(cm, ComplexMatrix::identity(5));
    }

    #[test]
    fn circulant_eigenvalues_are_symbol_samples() {
        let psi = SymbolSequence::new([(1, c(1.0, 0.0)), (-2, c(0.5, 0.0)), (0, c(0.2, 0.3))]);
        let n = 16;
        let m = circulant(&psi, n).unwrap();
        let eigs = linalg::eigenvalues(&m).unwrap();
        let samples = psi.curve(n);
        let d = crate::decomposition::hausdorff_points(&eigs, &samples).unwrap();
        assert!(d < 1e-12, "circulant spectrum vs DFT of symbol: {d}");
    }

    #[test]
    fn shift_sections_are_nilpotent_while_curve_is_circle() {
        let psi = SymbolSequence::delta(1);
        let n = 6;
        let t = toeplitz(&psi, n).unwrap();
        let eigs = linalg::eigenvalues(&t).unwrap();
        // the section is nilpotent; computed eigenvalues cluster at 0 within
        // the eps^(1/n) Jordan sensitivity
        for z in &eigs {
            assert!(z.norm() < 1e-2, "shift section eigenvalue {z}");
        }
        // while the symbol curve is the whole unit circle
        for z in psi.curve(64) {
            assert!((z.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn symbol_curve_examples() {
        // delta_0 -> the single point 1
        let p0 = SymbolSequence::delta(0);
        for z in p0.curve(16) {
            assert!((z - c(1.0, 0.0)).norm() < 1e-15);
        }
        // delta_1 + delta_-1 -> 2cos θ, the segment [-2, 2]
        let hop = SymbolSequence::new([(1, c(1.0, 0.0)), (-1, c(1.0, 0.0))]);
        for (k, z) in hop.curve(64).iter().enumerate() {
            let theta = std::f64::consts::TAU * k as f64 / 64.0;
            assert!((z - c(2.0 * theta.cos(), 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn sections_nest() {
        let psi = SymbolSequence::new([(1, c(1.0, 0.0)), (-1, c(0.3, -0.2)), (2, c(0.1, 0.0))]);
        let family = TruncationFamily::new(TruncationModel::Toeplitz(psi), vec![8, 16]).unwrap();
        let small = family.section(8).unwrap();
        let big = family.section(16).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(small[(i, j)], big[(i, j)]);
            }
        }
        let pot = PotentialKind::AlmostPeriodic { amplitude: 1.0, beta: 0.381966, phase: 0.4 };
        let family = TruncationFamily::new(TruncationModel::Schrodinger(pot), vec![8, 16]).unwrap();
        let small = family.section(8).unwrap();
        let big = family.section(16).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(small[(i, j)], big[(i, j)]);
            }
        }
    }

    #[test]
    fn winding_of_shift_symbol() {
        let psi = SymbolSequence::delta(1); // unit circle
        assert_eq!(winding_number(&psi, c(0.0, 0.0), 256), 1);
        assert_eq!(winding_number(&psi, c(0.5, 0.0), 256), 1);
        assert_eq!(winding_number(&psi, c(2.0, 0.0), 256), 0);
        let inv = SymbolSequence::delta(-1);
        assert_eq!(winding_number(&inv, c(0.0, 0.0), 256), -1);
    }

    #[test]
    fn support_too_wide_rejected() {
        let psi = SymbolSequence::new([(5, c(1.0, 0.0))]);
        assert!(toeplitz(&psi, 5).is_err());
        assert!(toeplitz(&psi, 6).is_ok());
    }
}
