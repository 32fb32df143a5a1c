//! Property tests for the algebraic invariants: cocycle identities of
//! coboundaries, associativity and anti-multiplicativity of the twisted
//! convolution, restriction contraction, and pseudospectrum nesting.

use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;

use spectrolab_core::cocycle::{validate_cocycle, Cocycle};
use spectrolab_core::grid::GridWindow;
use spectrolab_core::groupoid::{build_pair_groupoid, UnitSubset};
use spectrolab_core::kernel::{Carrier, Kernel};
use spectrolab_core::matrix::ComplexMatrix;
use spectrolab_core::spectral::matrix_pseudospectrum;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn phases(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    proptest::collection::vec(0.0f64..std::f64::consts::TAU, n)
        .prop_map(|ts| ts.into_iter().map(|t| Complex64::from_polar(1.0, t)).collect())
}

fn kernels(n_arrows: usize) -> impl Strategy<Value = Vec<Complex64>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n_arrows)
        .prop_map(|vs| vs.into_iter().map(|(re, im)| c(re, im)).collect())
}

fn twisted_carrier(n: usize, sigma: Vec<Complex64>) -> Arc<Carrier> {
    let g = build_pair_groupoid(n);
    let omega = Cocycle::coboundary(&g, sigma).unwrap();
    Carrier::with_cocycle(g, omega)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coboundaries_satisfy_the_cocycle_identity(sigma in phases(16)) {
        let g = build_pair_groupoid(4);
        let omega = Cocycle::coboundary(&g, sigma).unwrap();
        let report = validate_cocycle(&g, &omega);
        prop_assert!(report.ok, "{report:?}");
        prop_assert!(report.max_identity_residual < 1e-12);
    }

    #[test]
    fn convolution_is_associative(
        sigma in phases(9),
        f in kernels(9),
        g in kernels(9),
        h in kernels(9),
    ) {
        let carrier = twisted_carrier(3, sigma);
        let kf = Kernel::new(carrier.clone(), f).unwrap();
        let kg = Kernel::new(carrier.clone(), g).unwrap();
        let kh = Kernel::new(carrier, h).unwrap();
        let left = kf.convolve(&kg).unwrap().convolve(&kh).unwrap();
        let right = kf.convolve(&kg.convolve(&kh).unwrap()).unwrap();
        for (a, b) in left.values().iter().zip(right.values().iter()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn involution_reverses_products(
        sigma in phases(16),
        f in kernels(16),
        g in kernels(16),
    ) {
        let carrier = twisted_carrier(4, sigma);
        let kf = Kernel::new(carrier.clone(), f).unwrap();
        let kg = Kernel::new(carrier, g).unwrap();
        let left = kf.convolve(&kg).unwrap().involution();
        let right = kg.involution().convolve(&kf.involution()).unwrap();
        for (a, b) in left.values().iter().zip(right.values().iter()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn restriction_contracts_the_reduced_norm(
        f in kernels(25),
        keep in 1usize..=5,
    ) {
        let carrier = Carrier::plain(build_pair_groupoid(5));
        let kf = Kernel::new(carrier, f).unwrap();
        let y = UnitSubset::new(0..keep);
        let rf = kf.restrict_to(&y).unwrap();
        prop_assert!(rf.reduced_norm() <= kf.reduced_norm() + 1e-12);
    }

    #[test]
    fn pseudospectrum_masks_nest(
        entries in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 9),
        eps1 in 0.01f64..0.5,
        eps2 in 0.01f64..0.5,
    ) {
        let m = ComplexMatrix::new(
            3,
            3,
            entries.into_iter().map(|(re, im)| c(re, im)).collect(),
        );
        let window = GridWindow::new(-2.0, 2.0, -2.0, 2.0, 11, 11).unwrap();
        let (lo, hi) = if eps1 <= eps2 { (eps1, eps2) } else { (eps2, eps1) };
        let small = matrix_pseudospectrum(&m, lo, &window, 1).unwrap();
        let large = small.rethreshold(hi);
        prop_assert!(small.subset_of(&large));
        // recomputing at the larger threshold gives the identical raw grid
        let recomputed = matrix_pseudospectrum(&m, hi, &window, 1).unwrap();
        prop_assert_eq!(small.sigma, recomputed.sigma);
    }
}
