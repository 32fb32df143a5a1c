//! Complex Hermitian eigensolver (cyclic Jacobi).

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;

const MAX_SWEEPS: usize = 40;

/// Eigenvalues (ascending) of a Hermitian matrix.
pub fn eigh_values(a: &ComplexMatrix) -> Vec<f64> {
    jacobi(a, false).0
}

/// Eigenvalues (ascending) and a unitary matrix of eigenvectors (columns).
pub fn eigh(a: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let (vals, vecs) = jacobi(a, true);
    (vals, vecs.expect("vectors requested"))
}

/// Largest eigenvalue with its eigenvector.
pub fn top_eigenpair(a: &ComplexMatrix) -> (f64, Vec<Complex64>) {
    let n = a.dim();
    let (vals, vecs) = eigh(a);
    let v = (0..n).map(|i| vecs[(i, n - 1)]).collect();
    (vals[n - 1], v)
}

fn off_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(input: &ComplexMatrix, want_vectors: bool) -> (Vec<f64>, Option<ComplexMatrix>) {
    let n = input.dim();
    let mut a = input.clone();
    let mut v = if want_vectors {
        Some(ComplexMatrix::identity(n))
    } else {
        None
    };
    let scale = a.frobenius_norm();
    if n > 1 && scale > 0.0 {
        let tol = f64::EPSILON * scale;
        for _ in 0..MAX_SWEEPS {
            if off_norm(&a) <= tol {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, v.as_mut(), p, q);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vecs = v.map(|m| ComplexMatrix::from_fn(n, n, |i, j| m[(i, order[j])]));
    (vals, vecs)
}

/// One Jacobi rotation annihilating the (p,q) entry. The complex phase of
/// a_pq is absorbed first so the remaining 2x2 problem is real symmetric.
fn rotate(a: &mut ComplexMatrix, mut v: Option<&mut ComplexMatrix>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    if g <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let u = apq / g;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = a.dim();
    // columns: A <- A V, with V[:,p] = (c, -conj(u) s), V[:,q] = (s, conj(u) c)
    let su = s * u.conj();
    let cu = c * u.conj();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * su;
        a[(k, q)] = akp * s + akq * cu;
    }
    // rows: A <- V* A
    let us = u * s;
    let uc = u * c;
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * us;
        a[(q, k)] = apk * s + aqk * uc;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    if let Some(vm) = v.as_mut() {
        for k in 0..n {
            let vkp = vm[(k, p)];
            let vkq = vm[(k, q)];
            vm[(k, p)] = vkp * c - vkq * su;
            vm[(k, q)] = vkp * s + vkq * cu;
        }
    }
}
