//! Shipped unitary duals: Z_N, Z_N x Z_N, D_4, Q_8. Nonabelian duals are
//! hand-coded tables; there is no general irrep computation here.

use num_complex::Complex64;

use crate::group::{self, FiniteGroup};
use crate::matrix::ComplexMatrix;

use super::{DualData, Irrep};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn phase(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

fn scalar(z: Complex64) -> ComplexMatrix {
    ComplexMatrix::new(1, 1, vec![z])
}

/// Characters of Z_n: π_k(a) = e^{2πi k a / n}.
pub fn cyclic_dual(n: usize) -> (FiniteGroup, DualData) {
    let g = group::cyclic(n);
    let irreps = (0..n)
        .map(|k| Irrep {
            dim: 1,
            matrices: (0..n)
                .map(|a| scalar(phase(std::f64::consts::TAU * (k * a) as f64 / n as f64)))
                .collect(),
        })
        .collect();
    (g, DualData { irreps })
}

/// Characters of Z_n x Z_n indexed (k1, k2) -> k1*n + k2.
pub fn cyclic_squared_dual(n: usize) -> (FiniteGroup, DualData) {
    let g = group::cyclic_squared(n);
    let order = n * n;
    let irreps = (0..order)
        .map(|k| {
            let (k1, k2) = (k / n, k % n);
            Irrep {
                dim: 1,
                matrices: (0..order)
                    .map(|a| {
                        let (a1, a2) = (a / n, a % n);
                        scalar(phase(
                            std::f64::consts::TAU * ((k1 * a1 + k2 * a2) % n) as f64 / n as f64,
                        ))
                    })
                    .collect(),
            }
        })
        .collect();
    (g, DualData { irreps })
}

/// D_4: four characters (r, s) -> (±1, ±1) and one 2-dimensional irrep
/// r -> diag(i, -i), s -> [[0,1],[1,0]].
pub fn dihedral4_dual() -> (FiniteGroup, DualData) {
    let g = group::dihedral4();
    let mut irreps = Vec::with_capacity(5);
    for (chi_r, chi_s) in [(1.0f64, 1.0f64), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        let matrices = (0..8)
            .map(|idx| {
                let (j, k) = (idx % 4, idx / 4);
                scalar(c(chi_r.powi(j as i32) * chi_s.powi(k as i32), 0.0))
            })
            .collect();
        irreps.push(Irrep { dim: 1, matrices });
    }
    let r_mat = ComplexMatrix::new(2, 2, vec![c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)]);
    let s_mat = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    let matrices = (0..8)
        .map(|idx| {
            let (j, k) = (idx % 4, idx / 4);
            let mut m = ComplexMatrix::identity(2);
            for _ in 0..j {
                m = m.matmul(&r_mat);
            }
            if k == 1 {
                m = m.matmul(&s_mat);
            }
            m
        })
        .collect();
    irreps.push(Irrep { dim: 2, matrices });
    (g, DualData { irreps })
}

/// Q_8: four characters through the quotient by {±1} and one 2-dimensional
/// irrep i -> diag(i, -i), j -> [[0,1],[-1,0]].
pub fn quaternion8_dual() -> (FiniteGroup, DualData) {
    let g = group::quaternion8();
    // element indexing from group::quaternion8: sign bit + axis*2
    let axis_of = |idx: usize| idx / 2;
    let sign_of = |idx: usize| if idx % 2 == 0 { 1.0 } else { -1.0 };
    let mut irreps = Vec::with_capacity(5);
    for (chi_i, chi_j) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        let chi_axis = [1.0, chi_i, chi_j, chi_i * chi_j];
        let matrices = (0..8)
            .map(|idx| scalar(c(chi_axis[axis_of(idx)], 0.0)))
            .collect();
        irreps.push(Irrep { dim: 1, matrices });
    }
    let u = [
        ComplexMatrix::identity(2),
        ComplexMatrix::new(2, 2, vec![c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)]),
        ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]),
        ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(0.0, 0.0)]),
    ];
    let matrices = (0..8)
        .map(|idx| u[axis_of(idx)].scale(c(sign_of(idx), 0.0)))
        .collect();
    irreps.push(Irrep { dim: 2, matrices });
    (g, DualData { irreps })
}

#[cfg(test)]
mod tests {
    use super::super::fourier::validate_dual;
    use super::*;

    #[test]
    fn all_shipped_duals_validate() {
        for (g, dual) in [
            cyclic_dual(1),
            cyclic_dual(7),
            cyclic_squared_dual(3),
            dihedral4_dual(),
            quaternion8_dual(),
        ] {
            let report = validate_dual(&g, &dual).unwrap();
            assert_eq!(report.dim_sq_sum, g.order());
            assert!(report.roundtrip_residual < 1e-11, "{report:?}");
        }
    }
}
