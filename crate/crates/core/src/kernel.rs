//! The twisted convolution *-algebra on kernels and its regular
//! representations as dense complex matrices.
//!
//! A kernel is a complex function on arrows, carried by a fixed
//! (groupoid, cocycle, Haar) triple. Convolution uses
//! (f ⋆ g)(xi) = Σ_{eta in fiber d(xi)} f(xi eta^{-1}) g(eta) omega(xi eta^{-1}, eta) w(eta),
//! involution f*(xi) = conj(omega(xi, xi^{-1})) conj(f(xi^{-1})), and the
//! regular representation at x acts on the d-fiber of x. Weighted Haar
//! systems are orthonormalized by the diagonal similarity diag(sqrt w), so
//! matrix adjoints agree with the algebra involution.

use std::sync::Arc;

use num_complex::Complex64;

use crate::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, HaarSystem, RestrictionMap, UnitSubset};
use crate::linalg;
use crate::matrix::ComplexMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// The data a kernel lives over. Kernels may only be combined when they
/// share a carrier (same pointer or structurally equal).
#[derive(Debug, PartialEq)]
pub struct Carrier {
    groupoid: FiniteGroupoid,
    cocycle: Cocycle,
    haar: HaarSystem,
}

impl Carrier {
    pub fn new(groupoid: FiniteGroupoid, cocycle: Cocycle, haar: HaarSystem) -> Result<Arc<Self>> {
        haar.validate(&groupoid)?;
        Ok(Arc::new(Self {
            groupoid,
            cocycle,
            haar,
        }))
    }

    /// Counting Haar system and trivial cocycle.
    pub fn plain(groupoid: FiniteGroupoid) -> Arc<Self> {
        let haar = HaarSystem::counting(groupoid.n_arrows());
        Arc::new(Self {
            groupoid,
            cocycle: Cocycle::Trivial,
            haar,
        })
    }

    /// Counting Haar system with the given cocycle.
    pub fn with_cocycle(groupoid: FiniteGroupoid, cocycle: Cocycle) -> Arc<Self> {
        let haar = HaarSystem::counting(groupoid.n_arrows());
        Arc::new(Self {
            groupoid,
            cocycle,
            haar,
        })
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn haar(&self) -> &HaarSystem {
        &self.haar
    }

    fn omega(&self, xi: usize, eta: usize) -> Complex64 {
        self.cocycle
            .value(&self.groupoid, xi, eta)
            .expect("cocycle defined on composable pairs")
    }

    /// Restricted carrier on Ξ(M) together with the index map.
    pub fn restrict(self: &Arc<Self>, m: &UnitSubset) -> Result<(Arc<Carrier>, RestrictionMap)> {
        let (g, map) = self.groupoid.restrict(m)?;
        let cocycle = self.cocycle.restrict(&self.groupoid, &map)?;
        let haar = self.haar.restrict(&map);
        Ok((
            Arc::new(Carrier {
                groupoid: g,
                cocycle,
                haar,
            }),
            map,
        ))
    }
}

#[derive(Clone, Debug)]
pub struct Kernel {
    carrier: Arc<Carrier>,
    values: Vec<Complex64>,
}

impl Kernel {
    pub fn new(carrier: Arc<Carrier>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != carrier.groupoid.n_arrows() {
            return Err(Error::InvalidModel(
                "kernel value count != arrow count".into(),
            ));
        }
        Ok(Self { carrier, values })
    }

    pub fn zero(carrier: Arc<Carrier>) -> Self {
        let n = carrier.groupoid.n_arrows();
        Self {
            carrier,
            values: vec![ZERO; n],
        }
    }

    /// The kernel which is 1 on unit arrows and 0 elsewhere; with counting
    /// Haar this is the unit of the algebra.
    pub fn delta_unit(carrier: Arc<Carrier>) -> Self {
        let mut k = Self::zero(carrier);
        for x in 0..k.carrier.groupoid.n_units() {
            let a = k.carrier.groupoid.unit_arrow(x);
            k.values[a] = ONE;
        }
        k
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, arrow: usize) -> Complex64 {
        self.values[arrow]
    }

    pub fn set(&mut self, arrow: usize, v: Complex64) {
        self.values[arrow] = v;
    }

    fn same_carrier(&self, other: &Kernel) -> bool {
        Arc::ptr_eq(&self.carrier, &other.carrier) || *self.carrier == *other.carrier
    }

    pub fn add(&self, other: &Kernel) -> Result<Kernel> {
        if !self.same_carrier(other) {
            return Err(Error::MismatchedCarriers);
        }
        Ok(Kernel {
            carrier: self.carrier.clone(),
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: Complex64) -> Kernel {
        Kernel {
            carrier: self.carrier.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Twisted convolution f ⋆_omega g.
    pub fn convolve(&self, other: &Kernel) -> Result<Kernel> {
        if !self.same_carrier(other) {
            return Err(Error::MismatchedCarriers);
        }
        let g = &self.carrier.groupoid;
        let haar = &self.carrier.haar;
        let mut out = vec![ZERO; g.n_arrows()];
        for xi in 0..g.n_arrows() {
            let mut acc = ZERO;
            for &eta in g.fiber(g.source(xi)) {
                let gv = other.values[eta];
                if gv == ZERO {
                    continue;
                }
                let left = g.compose(xi, g.inverse(eta)).expect("same d-fiber");
                let fv = self.values[left];
                if fv == ZERO {
                    continue;
                }
                acc += fv * gv * self.carrier.omega(left, eta) * haar.weight(eta);
            }
            out[xi] = acc;
        }
        Ok(Kernel {
            carrier: self.carrier.clone(),
            values: out,
        })
    }

    /// Involution f*(xi) = conj(omega(xi, xi^{-1})) conj(f(xi^{-1})).
    pub fn involution(&self) -> Kernel {
        let g = &self.carrier.groupoid;
        let values = (0..g.n_arrows())
            .map(|xi| {
                let inv = g.inverse(xi);
                self.carrier.omega(xi, inv).conj() * self.values[inv].conj()
            })
            .collect();
        Kernel {
            carrier: self.carrier.clone(),
            values,
        }
    }

    /// Regular representation at the unit x, on the d-fiber basis sorted by
    /// (range unit, arrow id). Entries are
    /// f(xi eta^{-1}) omega(xi eta^{-1}, eta) sqrt(w(xi) w(eta)),
    /// the diag(sqrt w) similarity making the matrix adjoint match the
    /// algebra involution.
    pub fn regular_rep(&self, x: usize) -> Result<ComplexMatrix> {
        let g = &self.carrier.groupoid;
        if x >= g.n_units() {
            return Err(Error::UnknownUnit(x));
        }
        let fiber = g.fiber(x);
        let haar = &self.carrier.haar;
        let m = fiber.len();
        let mut out = ComplexMatrix::zeros(m, m);
        for (i, &xi) in fiber.iter().enumerate() {
            for (j, &eta) in fiber.iter().enumerate() {
                let left = g.compose(xi, g.inverse(eta)).expect("same d-fiber");
                let fv = self.values[left];
                if fv == ZERO {
                    continue;
                }
                let w = (haar.weight(xi) * haar.weight(eta)).sqrt();
                out[(i, j)] = fv * self.carrier.omega(left, eta) * w;
            }
        }
        Ok(out)
    }

    /// Reduced norm: sup over units of the operator norm of the regular
    /// representation. Along an orbit the representations are unitarily
    /// equivalent, so one representative per orbit suffices.
    pub fn reduced_norm(&self) -> f64 {
        self.carrier
            .groupoid
            .orbit_representatives()
            .into_iter()
            .map(|x| linalg::sigma_max(&self.regular_rep(x).expect("valid unit")))
            .fold(0.0, f64::max)
    }

    /// Reduction to an invariant subset: the C*-epimorphism rho_A acting as
    /// restriction of kernels. Requires A invariant.
    pub fn reduce(&self, a: &UnitSubset) -> Result<Kernel> {
        if !a.is_invariant(&self.carrier.groupoid) {
            return Err(Error::InvarianceRequired(a.iter().copied().collect()));
        }
        self.restrict_to(a)
    }

    /// Non-invariant restriction to a tame subset: linear, involutive, and
    /// contractive but not multiplicative in general.
    pub fn restrict_to(&self, y: &UnitSubset) -> Result<Kernel> {
        let (carrier, map) = self.carrier.restrict(y)?;
        let values = map.arrow_old.iter().map(|&a| self.values[a]).collect();
        Ok(Kernel { carrier, values })
    }

    /// Zero-extension of a kernel on a restricted carrier back to a kernel
    /// on the ambient carrier.
    pub fn extend_by_zero(&self, ambient: &Arc<Carrier>, map: &RestrictionMap) -> Kernel {
        let mut out = Kernel::zero(ambient.clone());
        for (new, &old) in map.arrow_old.iter().enumerate() {
            out.values[old] = self.values[new];
        }
        out
    }

    /// Support check: true when every nonzero value sits on an arrow of the
    /// restricted groupoid Ξ(Y).
    pub fn supported_in(&self, y: &UnitSubset) -> bool {
        let g = &self.carrier.groupoid;
        self.values.iter().enumerate().all(|(a, v)| {
            *v == ZERO || (y.contains(g.source(a)) && y.contains(g.range(a)))
        })
    }
}

/// Conditional expectation residuals (Y clopen): with g supported in Ξ(Y),
/// R(f ⋆ g~) = R(f) ⋆_Y R(g~) and R(g~ ⋆ f) = R(g~) ⋆_Y R(f) hold exactly.
/// `g_on_y` is given on the ambient carrier with support inside Ξ(Y).
/// Returns the two sup-norm residuals.
pub fn conditional_expectation_check(
    f: &Kernel,
    g_on_y: &Kernel,
    y: &UnitSubset,
) -> Result<(f64, f64)> {
    if !g_on_y.supported_in(y) {
        let g = &g_on_y.carrier.groupoid;
        let witness = g_on_y
            .values
            .iter()
            .enumerate()
            .find(|(a, v)| {
                **v != ZERO && !(y.contains(g.source(*a)) && y.contains(g.range(*a)))
            })
            .map(|(a, _)| a)
            .unwrap_or(0);
        return Err(Error::SupportOutsideRestriction(witness));
    }
    let rf = f.restrict_to(y)?;
    let rg = g_on_y.restrict_to(y)?;
    let left = f.convolve(g_on_y)?.restrict_to(y)?;
    let left_expected = rf.convolve(&rg)?;
    let right = g_on_y.convolve(f)?.restrict_to(y)?;
    let right_expected = rg.convolve(&rf)?;
    let sup = |a: &Kernel, b: &Kernel| {
        a.values
            .iter()
            .zip(b.values.iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    };
    Ok((sup(&left, &left_expected), sup(&right, &right_expected)))
}

#[derive(Clone, Debug)]
pub struct FaithfulnessReport {
    /// Dimension of the null space of f -> Pi_x(f).
    pub kernel_dim: usize,
    /// Representation rank (dimension of the image).
    pub rank: usize,
    /// Whether the orbit of x is the whole unit space (dense at this scale).
    pub orbit_dense: bool,
    pub faithful: bool,
}

/// Kernel dimension and faithfulness of the linear map f -> Pi_x(f),
/// computed from the rank of the (fiber² x arrows) coefficient matrix.
pub fn faithfulness_rank(carrier: &Arc<Carrier>, x: usize) -> Result<FaithfulnessReport> {
    let g = carrier.groupoid();
    if x >= g.n_units() {
        return Err(Error::UnknownUnit(x));
    }
    let fiber = g.fiber(x);
    let m = fiber.len();
    let n_arrows = g.n_arrows();
    let haar = carrier.haar();
    let mut coeff = ComplexMatrix::zeros(m * m, n_arrows);
    for (i, &xi) in fiber.iter().enumerate() {
        for (j, &eta) in fiber.iter().enumerate() {
            let left = g.compose(xi, g.inverse(eta)).expect("same d-fiber");
            let w = (haar.weight(xi) * haar.weight(eta)).sqrt();
            let val = carrier.omega(left, eta) * w;
            coeff[(i * m + j, left)] += val;
        }
    }
    let rank = linalg::rank(&coeff);
    let kernel_dim = n_arrows - rank;
    let orbit_dense = g.orbit_of(x).len() == g.n_units();
    Ok(FaithfulnessReport {
        kernel_dim,
        rank,
        orbit_dense,
        faithful: orbit_dense && kernel_dim == 0,
    })
}
