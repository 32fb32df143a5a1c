//! Fourier transform on a finite group with counting Haar measure:
//! F(u)(θ) = Σ_a u(a) π_θ(a)*, inverted by
//! u(a) = Σ_θ (d_θ/|G|) Tr[ψ(θ) π_θ(a)]. With these normalizations δ_e is
//! the convolution unit and the Plancherel identity
//! ||u||² = Σ_θ w_θ ||F(u)(θ)||²_HS holds exactly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::ComplexMatrix;

use super::DualData;

pub fn fourier(dual: &DualData, u: &[Complex64]) -> Vec<ComplexMatrix> {
    dual.irreps
        .iter()
        .map(|irr| {
            let mut acc = ComplexMatrix::zeros(irr.dim, irr.dim);
            for (a, &ua) in u.iter().enumerate() {
                if ua == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let pi = &irr.matrices[a];
                for i in 0..irr.dim {
                    for j in 0..irr.dim {
                        // π(a)* entry (i, j) = conj(π(a)[j, i])
                        acc[(i, j)] += ua * pi[(j, i)].conj();
                    }
                }
            }
            acc
        })
        .collect()
}

pub fn fourier_inv(dual: &DualData, group_order: usize, psi: &[ComplexMatrix]) -> Vec<Complex64> {
    (0..group_order)
        .map(|a| {
            psi.iter()
                .enumerate()
                .map(|(theta, mat)| {
                    let irr = &dual.irreps[theta];
                    let w = dual.plancherel_weight(theta, group_order);
                    let mut tr = Complex64::new(0.0, 0.0);
                    for i in 0..irr.dim {
                        for k in 0..irr.dim {
                            tr += mat[(i, k)] * irr.matrices[a][(k, i)];
                        }
                    }
                    tr * w
                })
                .sum()
        })
        .collect()
}

/// Σ_θ w_θ ||ψ(θ)||²_HS, the Plancherel norm squared.
pub fn plancherel_norm_sq(dual: &DualData, group_order: usize, psi: &[ComplexMatrix]) -> f64 {
    psi.iter()
        .enumerate()
        .map(|(theta, m)| dual.plancherel_weight(theta, group_order) * m.frobenius_norm().powi(2))
        .sum()
}

#[derive(Clone, Debug)]
pub struct DualReport {
    pub homomorphism_residual: f64,
    pub unitarity_residual: f64,
    pub dim_sq_sum: usize,
    pub plancherel_residual: f64,
    pub roundtrip_residual: f64,
}

/// Validates a dual table: each irrep a unitary homomorphism, Peter-Weyl
/// completeness Σ d² = |G|, Plancherel isometry and Fourier round-trip on a
/// deterministic probe vector.
pub fn validate_dual(group: &FiniteGroup, dual: &DualData) -> Result<DualReport> {
    let n = group.order();
    let mut hom: f64 = 0.0;
    let mut unit: f64 = 0.0;
    for irr in &dual.irreps {
        if irr.matrices.len() != n {
            return Err(Error::InvalidModel("irrep table length != |G|".into()));
        }
        for a in 0..n {
            let pa = &irr.matrices[a];
            if pa.rows() != irr.dim || pa.cols() != irr.dim {
                return Err(Error::InvalidModel("irrep matrix dimension".into()));
            }
            let gram = pa.conjugate_transpose().matmul(pa);
            unit = unit.max((&gram - &ComplexMatrix::identity(irr.dim)).max_abs());
            for b in 0..n {
                let prod = pa.matmul(&irr.matrices[b]);
                let tabled = &irr.matrices[group.mul(a, b)];
                hom = hom.max((&prod - tabled).max_abs());
            }
        }
    }
    if unit > 1e-12 {
        return Err(Error::InvalidModel(format!(
            "irrep not unitary (residual {unit:.2e})"
        )));
    }
    if hom > 1e-12 {
        return Err(Error::InvalidModel(format!(
            "irrep not a homomorphism (residual {hom:.2e})"
        )));
    }
    let dim_sq_sum = dual.total_dim_sq();
    if dim_sq_sum != n {
        return Err(Error::InvalidModel(format!(
            "Peter-Weyl completeness fails: sum d² = {dim_sq_sum}, |G| = {n}"
        )));
    }
    // probe: a deterministic pseudo-random vector
    let mut state = 0x5deece66d_u64;
    let u: Vec<Complex64> = (0..n)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let re = ((state >> 33) as f64 / (1u64 << 31) as f64) - 0.5;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let im = ((state >> 33) as f64 / (1u64 << 31) as f64) - 0.5;
            Complex64::new(re, im)
        })
        .collect();
    let hat = fourier(dual, &u);
    let norm_time: f64 = u.iter().map(|z| z.norm_sqr()).sum();
    let norm_freq = plancherel_norm_sq(dual, n, &hat);
    let plancherel_residual = (norm_time - norm_freq).abs() / norm_time.max(1.0);
    let back = fourier_inv(dual, n, &hat);
    let roundtrip_residual = u
        .iter()
        .zip(back.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(DualReport {
        homomorphism_residual: hom,
        unitarity_residual: unit,
        dim_sq_sum,
        plancherel_residual,
        roundtrip_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::super::duals::{cyclic_dual, dihedral4_dual, quaternion8_dual};
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn delta_e_transforms_to_identity() {
        let (g, dual) = cyclic_dual(6);
        let mut u = vec![c(0.0, 0.0); 6];
        u[g.identity()] = c(1.0, 0.0);
        for m in fourier(&dual, &u) {
            assert!((&m - &ComplexMatrix::identity(m.dim())).max_abs() < 1e-15);
        }
    }

    #[test]
    fn cyclic_reduces_to_dft() {
        let n = 8;
        let (_, dual) = cyclic_dual(n);
        let u: Vec<Complex64> = (0..n).map(|k| c(k as f64, (k * k) as f64 * 0.1)).collect();
        let hat = fourier(&dual, &u);
        for k in 0..n {
            let direct: Complex64 = (0..n)
                .map(|a| {
                    u[a] * Complex64::from_polar(
                        1.0,
                        -std::f64::consts::TAU * (k * a) as f64 / n as f64,
                    )
                })
                .sum();
            assert!((hat[k][(0, 0)] - direct).norm() < 1e-10);
        }
    }

    #[test]
    fn d4_and_q8_roundtrip() {
        for (g, dual) in [dihedral4_dual(), quaternion8_dual()] {
            let report = validate_dual(&g, &dual).unwrap();
            assert_eq!(report.dim_sq_sum, 8);
            assert!(report.roundtrip_residual < 1e-12, "{report:?}");
            assert!(report.plancherel_residual < 1e-12, "{report:?}");
        }
    }

    #[test]
    fn convolution_becomes_block_product() {
        // F(u * v) = F(v) F(u) with convolution (u*v)(a) = Σ_b u(ab^{-1}) v(b)
        let (g, dual) = dihedral4_dual();
        let n = g.order();
        let u: Vec<Complex64> = (0..n).map(|k| c(0.3 * k as f64 - 1.0, 0.2)).collect();
        let v: Vec<Complex64> = (0..n).map(|k| c(0.1, 0.5 - 0.1 * k as f64)).collect();
        let conv: Vec<Complex64> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| u[g.mul(a, g.inv(b))] * v[b])
                    .sum()
            })
            .collect();
        let fu = fourier(&dual, &u);
        let fv = fourier(&dual, &v);
        let fc = fourier(&dual, &conv);
        for theta in 0..dual.irreps.len() {
            let prod = fv[theta].matmul(&fu[theta]);
            assert!(
                (&prod - &fc[theta]).max_abs() < 1e-12,
                "block {theta} mismatch"
            );
        }
    }
}
