//! Operator polynomials E(λ) = E_0 + λE_1 + ... + λ^n E_n and their
//! 0-spectrum via block companion linearization.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::ComplexMatrix;

#[derive(Clone, Debug)]
pub struct OperatorPolynomial {
    coeffs: Vec<ComplexMatrix>,
}

impl OperatorPolynomial {
    pub fn new(coeffs: Vec<ComplexMatrix>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidModel("polynomial needs coefficients".into()));
        }
        let d = coeffs[0].dim();
        if coeffs.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::InvalidModel(
                "coefficient matrices must share one square dimension".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// The standard linear case E(λ) = E - λ·1.
    pub fn linear(e: ComplexMatrix) -> Self {
        let n = e.dim();
        let minus_id = ComplexMatrix::identity(n).scale(Complex64::new(-1.0, 0.0));
        Self {
            coeffs: vec![e, minus_id],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn matrix_dim(&self) -> usize {
        self.coeffs[0].dim()
    }

    pub fn coeffs(&self) -> &[ComplexMatrix] {
        &self.coeffs
    }

    /// E(λ) by Horner's rule.
    pub fn eval(&self, lambda: Complex64) -> ComplexMatrix {
        let mut acc = self.coeffs[self.coeffs.len() - 1].clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.scale(lambda);
            acc = &acc + c;
        }
        acc
    }
}

/// λ with E(λ) singular, via companion linearization after inverting the
/// leading coefficient. A leading coefficient with conditioning below 1e-12
/// is treated as a degenerate pencil.
pub fn zero_spectrum(p: &OperatorPolynomial) -> Result<Vec<Complex64>> {
    let d = p.matrix_dim();
    let n = p.degree();
    if n == 0 {
        // constant pencil: empty when invertible, degenerate otherwise
        let sigma = linalg::sigma_min(&p.coeffs()[0]);
        let smax = linalg::sigma_max(&p.coeffs()[0]);
        if smax == 0.0 || sigma / smax < 1e-12 {
            return Err(Error::DegeneratePencil {
                conditioning: if smax == 0.0 { 0.0 } else { sigma / smax },
            });
        }
        return Ok(Vec::new());
    }
    let lead = &p.coeffs()[n];
    let smin = linalg::sigma_min(lead);
    let smax = linalg::sigma_max(lead);
    let conditioning = if smax == 0.0 { 0.0 } else { smin / smax };
    if conditioning < 1e-12 {
        return Err(Error::DegeneratePencil { conditioning });
    }
    let lead_inv = linalg::inverse(lead).ok_or(Error::DegeneratePencil { conditioning })?;
    // monic coefficients A_k = E_n^{-1} E_k
    let monic: Vec<ComplexMatrix> = (0..n).map(|k| lead_inv.matmul(&p.coeffs()[k])).collect();
    // block companion: subdiagonal identities, last block row -A_0 .. -A_{n-1}
    let dim = d * n;
    let mut companion = ComplexMatrix::zeros(dim, dim);
    for blk in 0..n.saturating_sub(1) {
        for i in 0..d {
            companion[(blk * d + i, (blk + 1) * d + i)] = Complex64::new(1.0, 0.0);
        }
    }
    for (k, a) in monic.iter().enumerate() {
        for i in 0..d {
            for j in 0..d {
                companion[((n - 1) * d + i, k * d + j)] = -a[(i, j)];
            }
        }
    }
    linalg::eigenvalues(&companion)
}
