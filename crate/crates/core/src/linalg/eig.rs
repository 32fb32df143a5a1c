//! Dense complex eigensolver: Parlett-Reinsch balancing, Householder
//! Hessenberg reduction, explicit single-shift QR with deflation.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::qr::givens;
use crate::matrix::ComplexMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const RADIX: f64 = 2.0;

/// Eigenvalues with multiplicity of a square complex matrix. The iteration
/// cap is 30n sweeps; exceeding it yields `NumericalFailure` carrying the
/// eigenvalues deflated so far.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = a.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = a.clone();
    balance(&mut h);
    hessenberg(&mut h);
    qr_iterate(&mut h)
}

/// Diagonal similarity scaling equalizing row/column norms (Parlett-Reinsch).
fn balance(a: &mut ComplexMatrix) {
    let n = a.dim();
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c: f64 = (0..n).filter(|&j| j != i).map(|j| a[(j, i)].norm()).sum();
            let r: f64 = (0..n).filter(|&j| j != i).map(|j| a[(i, j)].norm()).sum();
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            let g = r * RADIX;
            while c >= g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s && f != 1.0 {
                converged = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] = a[(i, j)] * inv;
                }
                for j in 0..n {
                    a[(j, i)] = a[(j, i)] * f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// In-place unitary reduction to upper Hessenberg form.
fn hessenberg(a: &mut ComplexMatrix) {
    let n = a.dim();
    if n < 3 {
        return;
    }
    let mut v = vec![ZERO; n];
    for k in 0..n - 2 {
        for i in k + 1..n {
            v[i] = a[(i, k)];
        }
        let norm: f64 = v[k + 1..].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = v[k + 1];
        let phase = if x0 == ZERO {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        v[k + 1] = x0 - alpha;
        let vnorm2: f64 = v[k + 1..].iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = Complex64::new(2.0 / vnorm2, 0.0);
        a[(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[(i, k)] = ZERO;
        }
        // left: A <- (I - beta v v*) A on columns k+1..
        for j in k + 1..n {
            let mut dot = ZERO;
            for i in k + 1..n {
                dot += v[i].conj() * a[(i, j)];
            }
            dot *= beta;
            for i in k + 1..n {
                let upd = v[i] * dot;
                a[(i, j)] -= upd;
            }
        }
        // right: A <- A (I - beta v v*)
        for i in 0..n {
            let mut dot = ZERO;
            for j in k + 1..n {
                dot += a[(i, j)] * v[j];
            }
            dot *= beta;
            for j in k + 1..n {
                let upd = dot * v[j].conj();
                a[(i, j)] -= upd;
            }
        }
    }
}

/// Eigenvalues of a 2x2 complex matrix, cancellation-safe.
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let s = (a + d) * Complex64::new(0.5, 0.0);
    let det = a * d - b * c;
    let disc = (s * s - det).sqrt();
    let l1 = s + disc;
    let l2 = s - disc;
    if l1.norm() >= l2.norm() {
        if l1 == ZERO {
            (l1, l2)
        } else {
            (l1, det / l1)
        }
    } else if l2 == ZERO {
        (l2, l1)
    } else {
        (l2, det / l2)
    }
}

fn qr_iterate(h: &mut ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = h.dim();
    let mut eigs: Vec<Complex64> = Vec::with_capacity(n);
    let fallback_scale = h.frobenius_norm().max(f64::MIN_POSITIVE);
    let max_total = 30 * n;
    let mut total_sweeps = 0usize;
    let mut hi = n - 1;
    let mut block_sweeps = 0usize;
    loop {
        // deflation scan: find start of the active block ending at hi
        let mut lo = 0;
        let mut l = hi;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let mut tst = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if tst == 0.0 {
                tst = fallback_scale;
            }
            if sub <= f64::EPSILON * tst {
                h[(l, l - 1)] = ZERO;
                lo = l;
                break;
            }
            l -= 1;
        }
        if lo == hi {
            eigs.push(h[(hi, hi)]);
            if hi == 0 {
                break;
            }
            hi -= 1;
            block_sweeps = 0;
            continue;
        }
        if lo == hi - 1 {
            let (l1, l2) = eig2(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)]);
            eigs.push(l1);
            eigs.push(l2);
            if hi == 1 {
                break;
            }
            hi -= 2;
            block_sweeps = 0;
            continue;
        }
        if total_sweeps >= max_total {
            return Err(Error::NumericalFailure {
                converged: eigs.len(),
                total: n,
                partial: eigs,
            });
        }
        total_sweeps += 1;
        block_sweeps += 1;
        let shift = if block_sweeps % 10 == 0 {
            // exceptional shift to break cycling
            let extra = if hi >= lo + 2 { h[(hi - 1, hi - 2)].norm() } else { 0.0 };
            h[(hi, hi)] + Complex64::new(h[(hi, hi - 1)].norm() + extra, 0.0)
        } else {
            let (l1, l2) = eig2(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)]);
            let target = h[(hi, hi)];
            if (l1 - target).norm() <= (l2 - target).norm() {
                l1
            } else {
                l2
            }
        };
        sweep(h, lo, hi, shift);
    }
    Ok(eigs)
}

/// Explicit single-shift QR step on the Hessenberg block [lo..=hi].
fn sweep(h: &mut ComplexMatrix, lo: usize, hi: usize, shift: Complex64) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    let mut rotations: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
    for i in lo..hi {
        let (c, s, r) = givens(h[(i, i)], h[(i + 1, i)]);
        h[(i, i)] = r;
        h[(i + 1, i)] = ZERO;
        for j in i + 1..=hi {
            let x = h[(i, j)];
            let y = h[(i + 1, j)];
            h[(i, j)] = Complex64::new(c, 0.0) * x + s * y;
            h[(i + 1, j)] = -s.conj() * x + Complex64::new(c, 0.0) * y;
        }
        rotations.push((c, s));
    }
    for (idx, &(c, s)) in rotations.iter().enumerate() {
        let col = lo + idx;
        // right-multiply by the adjoint rotation on columns (col, col+1)
        let top = (col + 1).min(hi);
        for i in lo..=top {
            let x = h[(i, col)];
            let y = h[(i, col + 1)];
            h[(i, col)] = x * Complex64::new(c, 0.0) + y * s.conj();
            h[(i, col + 1)] = -x * s + y * Complex64::new(c, 0.0);
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qr::sigma_min;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted_by_re_im(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| {
            (a.re, a.im)
                .partial_cmp(&(b.re, b.im))
                .unwrap()
        });
        v
    }

    #[test]
    fn identity_and_diagonal() {
        let id = ComplexMatrix::identity(3);
        let e = eigenvalues(&id).unwrap();
        assert!(e.iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-13));

        let d = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 2.0), c(-3.0, 0.0)]);
        let got = sorted_by_re_im(eigenvalues(&d).unwrap());
        let want = sorted_by_re_im(vec![c(1.0, 0.0), c(0.0, 2.0), c(-3.0, 0.0)]);
        for (g, w) in got.iter().zip(want.iter()) {
            assert!((g - w).norm() < 1e-12);
        }
    }

    #[test]
    fn companion_of_quadratic() {
        // companion of l^2 - 3l + 2 has roots {1, 2}
        let m = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0), c(3.0, 0.0)]);
        let got = sorted_by_re_im(eigenvalues(&m).unwrap());
        assert!((got[0] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((got[1] - c(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn backward_stability_contract() {
        let mut state = 42u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as f64 / (1u64 << 31) as f64) - 0.5
        };
        for trial in 0..5 {
            let n = 6 + trial;
            let a = ComplexMatrix::from_fn(n, n, |_, _| c(next(), next()));
            let norm = a.frobenius_norm();
            let eigs = eigenvalues(&a).unwrap();
            assert_eq!(eigs.len(), n);
            // trace residual
            let sum: Complex64 = eigs.iter().sum();
            assert!((sum - a.trace()).norm() < 1e-10 * (1.0 + norm));
            // each eigenvalue makes A - lambda I nearly singular
            for &lam in &eigs {
                let shifted = ComplexMatrix::from_fn(n, n, |i, j| {
                    a[(i, j)] - if i == j { lam } else { ZERO }
                });
                assert!(
                    sigma_min(&shifted) <= 1e-8 * norm,
                    "trial {trial}: sigma_min too large for eigenvalue {lam}"
                );
            }
        }
    }

    #[test]
    fn defective_jordan_block() {
        // 4x4 Jordan block at 0.5: eigenvalue cluster around 0.5 with
        // radius on the order of eps^(1/4)
        let n = 4;
        let a = ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j {
                c(0.5, 0.0)
            } else if j == i + 1 {
                c(1.0, 0.0)
            } else {
                ZERO
            }
        });
        let eigs = eigenvalues(&a).unwrap();
        let spread = f64::EPSILON.powf(1.0 / n as f64);
        for z in eigs {
            assert!((z - c(0.5, 0.0)).norm() < 20.0 * spread);
        }
    }

    #[test]
    fn nilpotent_lower_shift_converges() {
        let n = 6;
        let a = ComplexMatrix::from_fn(n, n, |i, j| if i == j + 1 { c(1.0, 0.0) } else { ZERO });
        let eigs = eigenvalues(&a).unwrap();
        for z in eigs {
            assert!(z.norm() < 1e-2, "eigenvalue {z} of nilpotent shift too large");
        }
    }

    #[test]
    fn balanced_badly_scaled_matrix() {
        let a = ComplexMatrix::new(
            3,
            3,
            vec![
                c(1.0, 0.0),
                c(1e8, 0.0),
                c(0.0, 0.0),
                c(1e-8, 0.0),
                c(2.0, 0.0),
                c(1e8, 0.0),
                c(0.0, 0.0),
                c(1e-8, 0.0),
                c(3.0, 0.0),
            ],
        );
        let got = sorted_by_re_im(eigenvalues(&a).unwrap());
        // exact eigenvalues of [[1,1,0],[1,2,1],[0,1,3]] after symmetrized scaling
        let sym = ComplexMatrix::new(
            3,
            3,
            vec![
                c(1.0, 0.0),
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(2.0, 0.0),
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(3.0, 0.0),
            ],
        );
        let want = sorted_by_re_im(eigenvalues(&sym).unwrap());
        for (g, w) in got.iter().zip(want.iter()) {
            assert!((g - w).norm() < 1e-9, "balancing failed: {g} vs {w}");
        }
    }
}
