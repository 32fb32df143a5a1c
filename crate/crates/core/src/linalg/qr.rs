//! Householder and Givens QR factorizations, triangular solves, and the
//! smallest-singular-value evaluator used by the pseudospectrum grids.

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Reduces a copy of `a` to its upper-triangular QR factor by Householder
/// reflections, discarding Q.
pub fn qr_r(a: &ComplexMatrix) -> ComplexMatrix {
    let mut r = a.clone();
    let (m, n) = (r.rows(), r.cols());
    let steps = n.min(m.saturating_sub(1));
    let mut v = vec![ZERO; m];
    for k in 0..steps {
        reflect_column(&mut r, k, k, &mut v);
    }
    zero_below_diagonal(&mut r);
    r
}

/// Full QR factorization with Q assembled explicitly.
pub fn qr_full(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut r = a.clone();
    let steps = n.min(m.saturating_sub(1));
    let mut reflectors: Vec<(usize, Vec<Complex64>, f64)> = Vec::with_capacity(steps);
    let mut v = vec![ZERO; m];
    for k in 0..steps {
        let beta = reflect_column(&mut r, k, k, &mut v);
        reflectors.push((k, v[k..].to_vec(), beta));
    }
    zero_below_diagonal(&mut r);
    // Q = H_0 H_1 ... H_{s-1}
    let mut q = ComplexMatrix::identity(m);
    for (k, w, beta) in reflectors.iter().rev() {
        if *beta == 0.0 {
            continue;
        }
        for col in 0..m {
            let mut dot = ZERO;
            for (i, wi) in w.iter().enumerate() {
                dot += wi.conj() * q[(k + i, col)];
            }
            dot *= Complex64::new(*beta, 0.0);
            for (i, wi) in w.iter().enumerate() {
                let upd = wi * dot;
                q[(k + i, col)] -= upd;
            }
        }
    }
    (q, r)
}

/// Applies the Householder reflector that zeroes column `col` below `row`,
/// updating all columns to the right. Returns beta; the reflector vector is
/// written into `v[row..]`.
fn reflect_column(r: &mut ComplexMatrix, row: usize, col: usize, v: &mut [Complex64]) -> f64 {
    let m = r.rows();
    let n = r.cols();
    for i in row..m {
        v[i] = r[(i, col)];
    }
    let norm = vec_norm(&v[row..]);
    if norm == 0.0 {
        return 0.0;
    }
    let x0 = v[row];
    let phase = if x0 == ZERO {
        Complex64::new(1.0, 0.0)
    } else {
        x0 / x0.norm()
    };
    let alpha = -phase * norm;
    v[row] = x0 - alpha;
    let vnorm2: f64 = v[row..].iter().map(|z| z.norm_sqr()).sum();
    if vnorm2 == 0.0 {
        return 0.0;
    }
    let beta = 2.0 / vnorm2;
    r[(row, col)] = alpha;
    for i in row + 1..m {
        r[(i, col)] = ZERO;
    }
    for j in col + 1..n {
        let mut dot = ZERO;
        for i in row..m {
            dot += v[i].conj() * r[(i, j)];
        }
        dot *= Complex64::new(beta, 0.0);
        for i in row..m {
            let upd = v[i] * dot;
            r[(i, j)] -= upd;
        }
    }
    beta
}

fn zero_below_diagonal(r: &mut ComplexMatrix) {
    for i in 1..r.rows() {
        for j in 0..i.min(r.cols()) {
            r[(i, j)] = ZERO;
        }
    }
}

/// Complex Givens rotation: returns (c, s) with c real such that
/// [c, s; -conj(s), c] * [a; b] = [r; 0].
pub fn givens(a: Complex64, b: Complex64) -> (f64, Complex64, Complex64) {
    if b == ZERO {
        return (1.0, ZERO, a);
    }
    if a == ZERO {
        let s = b.conj() / b.norm();
        return (0.0, s, Complex64::new(b.norm(), 0.0));
    }
    let na = a.norm();
    let nu = (na * na + b.norm_sqr()).sqrt();
    let c = na / nu;
    let phase = a / na;
    let s = phase * b.conj() / nu;
    (c, s, phase * nu)
}

/// QR factor of a banded matrix by Givens rotations. `lower` and `upper` are
/// the bandwidths of `a`; the result has upper bandwidth at most
/// `lower + upper`. Storage stays dense, only the band is touched.
pub fn qr_r_banded(a: &ComplexMatrix, lower: usize, upper: usize) -> ComplexMatrix {
    let mut r = a.clone();
    let n = r.dim();
    let reach = lower + upper;
    for j in 0..n {
        let last = (j + lower).min(n - 1);
        for i in j + 1..=last {
            if r[(i, j)] == ZERO {
                continue;
            }
            let (c, s, rr) = givens(r[(j, j)], r[(i, j)]);
            r[(j, j)] = rr;
            r[(i, j)] = ZERO;
            let hi = (j + reach).min(n - 1);
            for k in j + 1..=hi {
                let x = r[(j, k)];
                let y = r[(i, k)];
                r[(j, k)] = Complex64::new(c, 0.0) * x + s * y;
                r[(i, k)] = -s.conj() * x + Complex64::new(c, 0.0) * y;
            }
        }
    }
    r
}

/// Back substitution for upper-triangular `r`: solves `r x = b`.
/// `band` bounds the upper bandwidth (pass `r.dim()` for dense).
pub fn solve_upper(r: &ComplexMatrix, b: &[Complex64], band: usize) -> Vec<Complex64> {
    let n = r.dim();
    let mut x = b.to_vec();
    for i in (0..n).rev() {
        let hi = (i + band).min(n - 1);
        let mut acc = x[i];
        for j in i + 1..=hi {
            acc -= r[(i, j)] * x[j];
        }
        x[i] = acc / r[(i, i)];
    }
    x
}

/// Forward substitution for the adjoint: solves `r* x = b` with `r` upper
/// triangular (so `r*` is lower triangular).
pub fn solve_upper_adjoint(r: &ComplexMatrix, b: &[Complex64], band: usize) -> Vec<Complex64> {
    let n = r.dim();
    let mut x = b.to_vec();
    for i in 0..n {
        let lo = i.saturating_sub(band);
        let mut acc = x[i];
        for j in lo..i {
            acc -= r[(j, i)].conj() * x[j];
        }
        x[i] = acc / r[(i, i)].conj();
    }
    x
}

/// Smallest singular value of a square matrix.
///
/// Two regimes: away from singularity the smallest eigenvalue of the Gram
/// matrix (Jacobi) is used — its accuracy does not degrade when singular
/// values cluster, which inverse iteration cannot guarantee. Near
/// singularity the Gram route loses half the digits, so the value is
/// refined by inverse iteration on the QR factor, which converges fast
/// precisely when the smallest singular value is isolated below the rest.
pub fn sigma_min(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    if n == 0 {
        return 0.0;
    }
    let gram = a.conjugate_transpose().matmul(a);
    let vals = super::hermitian::eigh_values(&gram);
    let sigma = vals.first().copied().unwrap_or(0.0).max(0.0).sqrt();
    let scale = vals.last().copied().unwrap_or(0.0).max(0.0).sqrt();
    if scale == 0.0 {
        return 0.0;
    }
    if sigma > 1e-5 * scale {
        return sigma;
    }
    let r = qr_r(a);
    sigma_min_from_r(&r, n)
}

/// Smallest singular value of a banded square matrix via Givens QR.
pub fn sigma_min_banded(a: &ComplexMatrix, lower: usize, upper: usize) -> f64 {
    let r = qr_r_banded(a, lower, upper);
    sigma_min_from_r(&r, lower + upper)
}

/// Inverse iteration on an upper-triangular factor. The iterates converge to
/// 1/sigma_min^2 from below, so the returned estimate decreases to sigma_min.
pub fn sigma_min_from_r(r: &ComplexMatrix, band: usize) -> f64 {
    let n = r.dim();
    if n == 0 {
        return 0.0;
    }
    let scale = r.max_abs();
    if scale == 0.0 {
        return 0.0;
    }
    let floor = scale * 1e-290;
    for i in 0..n {
        if r[(i, i)].norm() < floor {
            return 0.0;
        }
    }
    let ones: Vec<Complex64> = vec![Complex64::new(1.0, 0.0); n];
    let mut lcg: u64 = 0x9e3779b97f4a7c15;
    let jitter: Vec<Complex64> = (0..n)
        .map(|_| {
            lcg = lcg.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let re = ((lcg >> 33) as f64 / (1u64 << 31) as f64) - 0.5;
            lcg = lcg.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let im = ((lcg >> 33) as f64 / (1u64 << 31) as f64) - 0.5;
            Complex64::new(re, im)
        })
        .collect();
    let a = inverse_iteration(r, band, &ones);
    let b = inverse_iteration(r, band, &jitter);
    a.min(b)
}

fn inverse_iteration(r: &ComplexMatrix, band: usize, start: &[Complex64]) -> f64 {
    let mut v = start.to_vec();
    let nv = vec_norm(&v);
    if nv == 0.0 {
        return f64::INFINITY;
    }
    for z in v.iter_mut() {
        *z /= nv;
    }
    let mut sigma = f64::INFINITY;
    // generous cap: each step is O(n * band), and clustered singular values
    // slow the geometric convergence down
    for _ in 0..1500 {
        let w = solve_upper_adjoint(r, &v, band);
        let z = solve_upper(r, &w, band);
        let nz = vec_norm(&z);
        if !nz.is_finite() {
            return 0.0;
        }
        if nz == 0.0 {
            return sigma.min(vec_norm(&w));
        }
        let next = 1.0 / nz.sqrt();
        let done = (sigma - next).abs() <= 1e-14 * next;
        sigma = next;
        v = z;
        for x in v.iter_mut() {
            *x /= nz;
        }
        if done {
            break;
        }
    }
    sigma
}

/// Numerical rank by column-pivoted Householder QR.
pub fn rank(a: &ComplexMatrix) -> usize {
    let (m, n) = (a.rows(), a.cols());
    if m == 0 || n == 0 {
        return 0;
    }
    let mut r = a.clone();
    let mut v = vec![ZERO; m];
    let kmax = m.min(n);
    for k in 0..kmax {
        // pivot: remaining column of largest norm
        let mut best = k;
        let mut best_norm = 0.0;
        for j in k..n {
            let nj: f64 = (k..m).map(|i| r[(i, j)].norm_sqr()).sum();
            if nj > best_norm {
                best_norm = nj;
                best = j;
            }
        }
        if best != k {
            for i in 0..m {
                let tmp = r[(i, k)];
                r[(i, k)] = r[(i, best)];
                r[(i, best)] = tmp;
            }
        }
        if best_norm == 0.0 {
            break;
        }
        if k < m - 1 {
            reflect_column(&mut r, k, k, &mut v);
        }
    }
    let tol = (m.max(n) as f64) * f64::EPSILON * r[(0, 0)].norm();
    (0..kmax).filter(|&i| r[(i, i)].norm() > tol).count()
}

/// Matrix inverse via QR; `None` if numerically singular.
pub fn inverse(a: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = a.dim();
    let (q, r) = qr_full(a);
    let scale = r.max_abs();
    for i in 0..n {
        if r[(i, i)].norm() <= scale * f64::EPSILON * n as f64 {
            return None;
        }
    }
    let qh = q.conjugate_transpose();
    let mut out = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let col: Vec<Complex64> = (0..n).map(|i| qh[(i, j)]).collect();
        let x = solve_upper(&r, &col, n);
        for i in 0..n {
            out[(i, j)] = x[i];
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample(n: usize, seed: u64) -> ComplexMatrix {
        let mut state = seed;
        ComplexMatrix::from_fn(n, n, |_, _| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let re = ((state >> 33) as f64 / (1u64 << 31) as f64) - 0.5;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let im = ((state >> 33) as f64 / (1u64 << 31) as f64) - 0.5;
            c(re, im)
        })
    }

    #[test]
    fn qr_reconstructs() {
        let a = sample(7, 3);
        let (q, r) = qr_full(&a);
        let qa = q.matmul(&r);
        assert!((&qa - &a).max_abs() < 1e-13);
        let qhq = q.conjugate_transpose().matmul(&q);
        assert!((&qhq - &ComplexMatrix::identity(7)).max_abs() < 1e-13);
    }

    #[test]
    fn sigma_min_identity_and_diag() {
        assert!((sigma_min(&ComplexMatrix::identity(5)) - 1.0).abs() < 1e-12);
        let d = ComplexMatrix::diagonal(&[c(3.0, 0.0), c(0.5, 0.0)]);
        assert!((sigma_min(&d) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn sigma_min_singular_is_zero() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)]);
        assert!(sigma_min(&a) < 1e-14);
    }

    #[test]
    fn sigma_min_matches_inverse_norm() {
        // sigma_min(M) * ||M^{-1}|| = 1 for invertible M
        for seed in 1..6 {
            let a = sample(6, seed);
            let s = sigma_min(&a);
            if s <= 1e-8 {
                continue;
            }
            let inv = inverse(&a).unwrap();
            let m = crate::linalg::sigma_max(&inv);
            assert!(
                (s * m - 1.0).abs() < 1e-10,
                "seed {seed}: sigma_min*||inv|| = {}",
                s * m
            );
        }
    }

    #[test]
    fn banded_qr_matches_dense() {
        let n = 40;
        let a = ComplexMatrix::from_fn(n, n, |i, j| {
            let d = i as i64 - j as i64;
            if d.abs() <= 2 {
                c(1.0 / (1.0 + d.abs() as f64), 0.3 * d as f64)
            } else {
                c(0.0, 0.0)
            }
        });
        let shifted = ComplexMatrix::from_fn(n, n, |i, j| {
            a[(i, j)] - if i == j { c(0.7, 0.2) } else { c(0.0, 0.0) }
        });
        let dense = sigma_min(&shifted);
        let banded = sigma_min_banded(&shifted, 2, 2);
        assert!((dense - banded).abs() < 1e-11 * (1.0 + dense));
    }

    #[test]
    fn jordan_block_shifted_sigma() {
        // closed-form value for the 2x2 Jordan block at lambda = 0.25
        let j = ComplexMatrix::new(2, 2, vec![c(-0.25, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(-0.25, 0.0)]);
        let expected = ((1.125 - 1.25f64.sqrt()) / 2.0).sqrt();
        assert!((sigma_min(&j) - expected).abs() < 1e-12);
    }

    #[test]
    fn rank_of_outer_product() {
        let u = sample(6, 11);
        let mut a = ComplexMatrix::zeros(6, 6);
        for i in 0..6 {
            for j in 0..6 {
                a[(i, j)] = u[(i, 0)] * u[(j, 1)].conj() + u[(i, 2)] * u[(j, 3)].conj();
            }
        }
        assert_eq!(rank(&a), 2);
        assert_eq!(rank(&ComplexMatrix::zeros(4, 4)), 0);
        assert_eq!(rank(&ComplexMatrix::identity(5)), 5);
    }
}
