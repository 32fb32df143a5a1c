//! The twisted pseudo-differential operator Op_x(Φ) on ℓ²(G):
//! entries M[a,b] = Ω_x(b, ab⁻¹) Σ_θ w_θ Tr[Φ(θ_b(x), θ) π_θ(ab⁻¹)],
//! and the discrete magnetic (Harper) model on the finite torus.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::ComplexMatrix;

use super::{DualData, Symbol, TwistedAction};

/// Assembles Op_x(Φ) directly from the quantization formula. The θ-sums
/// are memoized per point of X reached from x.
pub fn op_x(
    ta: &TwistedAction,
    dual: &DualData,
    symbol: &Symbol,
    x: usize,
) -> Result<ComplexMatrix> {
    let ng = ta.group.order();
    if x >= ta.n_points {
        return Err(Error::UnknownUnit(x));
    }
    if symbol.entries.len() != ta.n_points {
        return Err(Error::InvalidModel("symbol not defined on all of X".into()));
    }
    for row in &symbol.entries {
        if row.len() != dual.irreps.len() {
            return Err(Error::InvalidModel("symbol missing irreps".into()));
        }
        for (theta, m) in row.iter().enumerate() {
            if m.rows() != dual.irreps[theta].dim || m.cols() != dual.irreps[theta].dim {
                return Err(Error::InvalidModel("symbol block dimension mismatch".into()));
            }
        }
    }
    // memoized partial inverse Fourier transform at the points θ_b(x)
    let mut cached: Vec<Option<Vec<Complex64>>> = vec![None; ta.n_points];
    let table = |y: usize, cache: &mut Vec<Option<Vec<Complex64>>>| -> Vec<Complex64> {
        if let Some(v) = &cache[y] {
            return v.clone();
        }
        let v: Vec<Complex64> = (0..ng)
            .map(|g| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (theta, irr) in dual.irreps.iter().enumerate() {
                    let w = dual.plancherel_weight(theta, ng);
                    let phi = &symbol.entries[y][theta];
                    let pi = &irr.matrices[g];
                    let mut tr = Complex64::new(0.0, 0.0);
                    for i in 0..irr.dim {
                        for k in 0..irr.dim {
                            tr += phi[(i, k)] * pi[(k, i)];
                        }
                    }
                    acc += tr * w;
                }
                acc
            })
            .collect();
        cache[y] = Some(v.clone());
        v
    };
    let mut m = ComplexMatrix::zeros(ng, ng);
    for b in 0..ng {
        let y = ta.theta(b, x);
        let row_table = table(y, &mut cached);
        for a in 0..ng {
            let g = ta.group.mul(a, ta.group.inv(b));
            m[(a, b)] = ta.omega_x(x, b, g) * row_table[g];
        }
    }
    Ok(m)
}

/// (id ⊗ F^{-1})(Φ): the kernel on the transformation groupoid whose arrows
/// (x, a) are indexed x·|G| + a, matching `build_transformation_groupoid`.
pub fn symbol_to_kernel(ta: &TwistedAction, dual: &DualData, symbol: &Symbol) -> Vec<Complex64> {
    let ng = ta.group.order();
    let mut values = vec![Complex64::new(0.0, 0.0); ta.n_points * ng];
    for x in 0..ta.n_points {
        let inv = super::fourier::fourier_inv(dual, ng, &symbol.entries[x]);
        for a in 0..ng {
            values[x * ng + a] = inv[a];
        }
    }
    values
}

/// Discrete magnetic Laplacian on the torus Z_n x Z_n with flux α = p/q:
/// the quantization of the nearest-neighbor hopping symbol under the
/// magnetic cocycle Ω(a,b) = exp(2πi α a₂ b₁). Flux quantization requires
/// q | n; the operator is Hermitian.
#[derive(Clone, Debug)]
pub struct HarperModel {
    pub p: i64,
    pub q: i64,
    pub n: usize,
}

impl HarperModel {
    pub fn new(p: i64, q: i64, n: usize) -> Result<Self> {
        if q <= 0 || n == 0 {
            return Err(Error::InvalidModel("harper needs q > 0, n > 0".into()));
        }
        if n % q as usize != 0 {
            return Err(Error::FluxQuantization { q: q as usize, n });
        }
        Ok(Self { p, q, n })
    }

    pub fn twisted_action(&self) -> TwistedAction {
        let group = crate::group::cyclic_squared(self.n);
        let action = group.translation_action();
        TwistedAction {
            n_points: group.order(),
            action,
            group,
            omega: super::Omega::MagneticTorus {
                p: self.p,
                q: self.q,
                n: self.n,
            },
        }
    }

    /// The n² x n² operator matrix at any base point (the magnetic cocycle
    /// and the hopping symbol are translation invariant, so the matrix does
    /// not depend on x).
    pub fn matrix(&self) -> ComplexMatrix {
        let n = self.n;
        let order = n * n;
        let ta = self.twisted_action();
        let idx = |a1: usize, a2: usize| a1 * n + a2;
        let mut m = ComplexMatrix::zeros(order, order);
        let hops: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
        for b1 in 0..n {
            for b2 in 0..n {
                let b = idx(b1, b2);
                for &(h1, h2) in &hops {
                    let a1 = (b1 as i64 + h1).rem_euclid(n as i64) as usize;
                    let a2 = (b2 as i64 + h2).rem_euclid(n as i64) as usize;
                    let a = idx(a1, a2);
                    let g = idx(
                        (h1.rem_euclid(n as i64)) as usize,
                        (h2.rem_euclid(n as i64)) as usize,
                    );
                    m[(a, b)] = ta.omega_x(0, b, g);
                }
            }
        }
        m
    }

    /// Spectrum of the q x q magnetic Bloch matrices, collected over the
    /// full momentum grid. This is the analytic oracle for `matrix`.
    pub fn bloch_eigenvalues(&self) -> Vec<f64> {
        let n = self.n;
        let q = self.q as usize;
        let alpha = self.p as f64 / self.q as f64;
        let mut all = Vec::with_capacity(n * n);
        for n1 in 0..n {
            let k1 = std::f64::consts::TAU * n1 as f64 / n as f64;
            for n2 in 0..n / q {
                let k2 = std::f64::consts::TAU * n2 as f64 / n as f64;
                let mut b = ComplexMatrix::zeros(q, q);
                for m in 0..q {
                    b[(m, m)] = Complex64::new(
                        2.0 * (std::f64::consts::TAU * alpha * m as f64 - k1).cos(),
                        0.0,
                    );
                    let up = (m + 1) % q;
                    let down = (m + q - 1) % q;
                    b[(m, up)] += Complex64::from_polar(1.0, k2);
                    b[(m, down)] += Complex64::from_polar(1.0, -k2);
                }
                all.extend(linalg::eigh_values(&b));
            }
        }
        all
    }
}

/// Convenience wrappers matching the CLI surface.
pub fn harper_model(p: i64, q: i64, n: usize) -> Result<ComplexMatrix> {
    Ok(HarperModel::new(p, q, n)?.matrix())
}

pub fn harper_bloch_eigenvalues(p: i64, q: i64, n: usize) -> Result<Vec<f64>> {
    Ok(HarperModel::new(p, q, n)?.bloch_eigenvalues())
}
