//! Numerical range by the support-function method: for each angle θ the top
//! eigenpair of the Hermitian part of e^{-iθ}M yields one certified boundary
//! point (inner vertex) and one supporting half-plane (outer constraint).
//! The inner polygon is contained in the range, the outer contains it, and
//! their Hausdorff gap vanishes as the angle count grows.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::ComplexMatrix;

#[derive(Clone, Debug)]
pub struct NumericalRange {
    /// Convex polygon of certified range points <Mv, v>.
    pub inner: Vec<Complex64>,
    /// Intersection of supporting half-planes, a convex superset.
    pub outer: Vec<Complex64>,
    /// Support function samples (theta, max eigenvalue of Re(e^{-iθ}M)).
    pub support: Vec<(f64, f64)>,
}

impl NumericalRange {
    /// Membership in the outer approximation, tested directly against every
    /// supporting half-plane Re(e^{-iθ}z) <= d. This stays robust when the
    /// range degenerates to a segment and the outer polygon is a sliver.
    pub fn contains_outer(&self, z: Complex64, tol: f64) -> bool {
        self.support
            .iter()
            .all(|&(theta, d)| (z * Complex64::from_polar(1.0, -theta)).re <= d + tol)
    }

    /// Membership in the certified inner polygon.
    pub fn contains_inner(&self, z: Complex64, tol: f64) -> bool {
        point_in_convex_polygon(z, &self.inner, tol)
    }
}

pub fn numerical_range(m: &ComplexMatrix, angle_count: usize) -> Result<NumericalRange> {
    if angle_count < 3 {
        return Err(Error::InvalidModel("numerical range needs >= 3 angles".into()));
    }
    let n = m.dim();
    if n == 0 {
        return Err(Error::InvalidModel("empty matrix".into()));
    }
    let mut inner_raw = Vec::with_capacity(angle_count);
    let mut support = Vec::with_capacity(angle_count);
    for k in 0..angle_count {
        let theta = std::f64::consts::TAU * k as f64 / angle_count as f64;
        let h = m.rotated_hermitian_part(theta);
        let (lam, v) = linalg::top_eigenpair(&h);
        support.push((theta, lam));
        // boundary point <Mv, v>
        let mv = m.mul_vec(&v);
        let p: Complex64 = mv
            .iter()
            .zip(v.iter())
            .map(|(a, b)| b.conj() * a)
            .sum();
        inner_raw.push(p);
    }
    let inner = convex_hull(&inner_raw);
    let outer = half_plane_intersection(&support);
    Ok(NumericalRange {
        inner,
        outer,
        support,
    })
}

/// Andrew monotone chain; returns the hull in counterclockwise order.
/// Degenerate inputs (all collinear) return the extreme segment.
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = points.to_vec();
    pts.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    pts.dedup_by(|a, b| (*a - *b).norm() == 0.0);
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let cross = |o: Complex64, a: Complex64, b: Complex64| {
        (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
    };
    let mut lower: Vec<Complex64> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Complex64> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Vertices of the intersection of half-planes Re(e^{-iθ}z) <= d, taken at
/// consecutive support angles.
fn half_plane_intersection(support: &[(f64, f64)]) -> Vec<Complex64> {
    let m = support.len();
    let mut verts = Vec::with_capacity(m);
    for k in 0..m {
        let (t1, d1) = support[k];
        let (t2, d2) = support[(k + 1) % m];
        // solve cos(t) x + sin(t) y = d for both constraints
        let det = (t2 - t1).sin();
        if det.abs() < 1e-12 {
            continue;
        }
        let x = (d1 * t2.sin() - d2 * t1.sin()) / det;
        let y = (d2 * t1.cos() - d1 * t2.cos()) / det;
        verts.push(Complex64::new(x, y));
    }
    verts
}

/// Signed test: is z inside the convex polygon (counterclockwise vertices),
/// within tolerance `tol` (points within tol outside the boundary pass)?
pub fn point_in_convex_polygon(z: Complex64, polygon: &[Complex64], tol: f64) -> bool {
    match polygon.len() {
        0 => false,
        1 => (z - polygon[0]).norm() <= tol,
        2 => point_segment_distance(z, polygon[0], polygon[1]) <= tol,
        _ => {
            for k in 0..polygon.len() {
                let a = polygon[k];
                let b = polygon[(k + 1) % polygon.len()];
                let edge = b - a;
                let len = edge.norm();
                if len == 0.0 {
                    continue;
                }
                // outward normal points right of the edge for CCW order
                let cross = edge.re * (z.im - a.im) - edge.im * (z.re - a.re);
                if cross / len < -tol {
                    return false;
                }
            }
            true
        }
    }
}

fn point_segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let denom = ab.norm_sqr();
    if denom == 0.0 {
        return (z - a).norm();
    }
    let t = ((z - a).re * ab.re + (z - a).im * ab.im) / denom;
    let t = t.clamp(0.0, 1.0);
    (z - (a + ab.scale(t))).norm()
}

fn point_polygon_distance(z: Complex64, poly: &[Complex64]) -> f64 {
    if poly.is_empty() {
        return f64::INFINITY;
    }
    if poly.len() == 1 {
        return (z - poly[0]).norm();
    }
    if point_in_convex_polygon(z, poly, 0.0) {
        return 0.0;
    }
    (0..poly.len())
        .map(|k| point_segment_distance(z, poly[k], poly[(k + 1) % poly.len()]))
        .fold(f64::INFINITY, f64::min)
}

/// Symmetric Hausdorff distance between two convex polygons, treating them
/// as filled sets. For convex sets this is attained at vertices, measured
/// against the whole other polygon (edges included).
pub fn polygon_hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    let d_ab = a
        .iter()
        .map(|&z| point_polygon_distance(z, b))
        .fold(0.0, f64::max);
    let d_ba = b
        .iter()
        .map(|&z| point_polygon_distance(z, a))
        .fold(0.0, f64::max);
    d_ab.max(d_ba)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hermitian_range_is_segment_of_extreme_eigenvalues() {
        let m = ComplexMatrix::diagonal(&[c(-1.0, 0.0), c(2.0, 0.0)]);
        let nr = numerical_range(&m, 64).unwrap();
        let (mut lo, mut hi) = (f64::MAX, f64::MIN);
        let mut max_imag: f64 = 0.0;
        for p in &nr.inner {
            lo = lo.min(p.re);
            hi = hi.max(p.re);
            max_imag = max_imag.max(p.im.abs());
        }
        assert!((lo + 1.0).abs() < 1e-10);
        assert!((hi - 2.0).abs() < 1e-10);
        assert!(max_imag < 1e-10);
    }

    #[test]
    fn jordan_block_range_is_half_disk_radius() {
        // nr(J_2) is the closed disk of radius 1/2
        let j = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let nr = numerical_range(&j, 720).unwrap();
        for p in &nr.inner {
            assert!(p.norm() <= 0.5 + 1e-12);
        }
        let max_inner = nr.inner.iter().map(|p| p.norm()).fold(0.0, f64::max);
        assert!((max_inner - 0.5).abs() < 1e-3);
        // all supporting distances are 1/2
        for &(_, d) in &nr.support {
            assert!((d - 0.5).abs() < 1e-10);
        }
    }

    #[test]
    fn eigenvalues_inside_outer_polygon() {
        let mut state = 5u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as f64 / (1u64 << 31) as f64) - 0.5
        };
        for _ in 0..5 {
            let m = ComplexMatrix::from_fn(5, 5, |_, _| c(next(), next()));
            let nr = numerical_range(&m, 180).unwrap();
            for lam in linalg::eigenvalues(&m).unwrap() {
                assert!(
                    nr.contains_outer(lam, 1e-9),
                    "eigenvalue {lam} escaped the outer polygon"
                );
            }
        }
    }

    #[test]
    fn inner_polygon_is_convex_and_inside_outer() {
        let m = ComplexMatrix::from_fn(4, 4, |i, j| c((i + 2 * j) as f64 * 0.3, (i as f64 - j as f64) * 0.7));
        let nr = numerical_range(&m, 90).unwrap();
        // convexity: the hull of the inner polygon is itself
        assert_eq!(convex_hull(&nr.inner).len(), nr.inner.len());
        for p in &nr.inner {
            assert!(nr.contains_outer(*p, 1e-9));
        }
    }

    #[test]
    fn gap_shrinks_with_angle_count() {
        let m = ComplexMatrix::from_fn(3, 3, |i, j| c(((i * 3 + j) % 5) as f64 - 1.0, (i as f64) * 0.4));
        let coarse = numerical_range(&m, 24).unwrap();
        let fine = numerical_range(&m, 720).unwrap();
        let gap_coarse = polygon_hausdorff(&coarse.inner, &coarse.outer);
        let gap_fine = polygon_hausdorff(&fine.inner, &fine.outer);
        assert!(gap_fine < gap_coarse / 10.0, "{gap_fine} vs {gap_coarse}");
    }

    #[test]
    fn polygon_hausdorff_basics() {
        let square: Vec<Complex64> = vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)];
        assert_eq!(polygon_hausdorff(&square, &square), 0.0);
        let shifted: Vec<Complex64> = square.iter().map(|p| p + c(0.25, 0.0)).collect();
        assert!((polygon_hausdorff(&square, &shifted) - 0.25).abs() < 1e-12);
    }
}
