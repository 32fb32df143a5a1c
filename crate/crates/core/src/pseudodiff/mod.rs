//! Finite-group Fourier analysis and the twisted pseudo-differential
//! quantization Op_x, tied to the convolution algebra through the
//! factorization Op_x(Φ) = Π_x[(id ⊗ F^{-1})(Φ)].

mod duals;
mod fourier;
mod opx;

pub use duals::{cyclic_dual, cyclic_squared_dual, dihedral4_dual, quaternion8_dual};
pub use fourier::{fourier, fourier_inv, plancherel_norm_sq, validate_dual, DualReport};
pub use opx::{
    harper_bloch_eigenvalues, harper_model, op_x, symbol_to_kernel, HarperModel,
};

use num_complex::Complex64;

use crate::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::groupoid::{build_transformation_groupoid, FiniteGroupoid};
use crate::matrix::ComplexMatrix;

/// One irreducible unitary representation as a table of matrices.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub dim: usize,
    /// matrices[a] = π(a), indexed by group element.
    pub matrices: Vec<ComplexMatrix>,
}

/// A complete set of irreducibles with Plancherel weights d_θ/|G|.
#[derive(Clone, Debug)]
pub struct DualData {
    pub irreps: Vec<Irrep>,
}

impl DualData {
    pub fn plancherel_weight(&self, theta: usize, group_order: usize) -> f64 {
        self.irreps[theta].dim as f64 / group_order as f64
    }

    pub fn total_dim_sq(&self) -> usize {
        self.irreps.iter().map(|r| r.dim * r.dim).sum()
    }
}

/// A twisted action (θ, Ω) of a finite group on a finite set X: a left
/// action table together with a 2-cocycle of the opposite group valued in
/// unit-modulus functions on X.
#[derive(Clone, Debug)]
pub struct TwistedAction {
    pub group: FiniteGroup,
    pub n_points: usize,
    /// action[a][x] = θ_a(x)
    pub action: Vec<Vec<usize>>,
    pub omega: Omega,
}

#[derive(Clone, Debug)]
pub enum Omega {
    Trivial,
    /// Ω = δ¹Λ: Ω_x(a,b) = Λ(a)(x) Λ(b)(θ_a(x)) / Λ(ba)(x); lambda[a][x].
    Coboundary { lambda: Vec<Vec<Complex64>> },
    /// Explicit table values[a][b][x].
    Table { values: Vec<Vec<Vec<Complex64>>> },
    /// Magnetic cocycle on the discrete torus Z_n x Z_n:
    /// Ω(a,b) = exp(2πi (p/q) a_2 b_1), requiring q | n (flux quantization).
    MagneticTorus { p: i64, q: i64, n: usize },
}

impl TwistedAction {
    pub fn untwisted(group: FiniteGroup, action: Vec<Vec<usize>>, n_points: usize) -> Self {
        Self {
            group,
            n_points,
            action,
            omega: Omega::Trivial,
        }
    }

    /// Normalizes Λ(e) to the constant 1, which the cocycle normalization
    /// Ω(a,e) = 1 = Ω(e,a) requires.
    pub fn with_coboundary(
        group: FiniteGroup,
        action: Vec<Vec<usize>>,
        n_points: usize,
        mut lambda: Vec<Vec<Complex64>>,
    ) -> Result<Self> {
        if lambda.len() != group.order() || lambda.iter().any(|row| row.len() != n_points) {
            return Err(Error::InvalidModel("lambda table shape".into()));
        }
        for row in &lambda {
            for v in row {
                if (v.norm() - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidModel("lambda must be unit modulus".into()));
                }
            }
        }
        let e = group.identity();
        for v in lambda[e].iter_mut() {
            *v = Complex64::new(1.0, 0.0);
        }
        Ok(Self {
            group,
            n_points,
            action,
            omega: Omega::Coboundary { lambda },
        })
    }

    pub fn theta(&self, a: usize, x: usize) -> usize {
        self.action[a][x]
    }

    /// Ω_x(a, b).
    pub fn omega_x(&self, x: usize, a: usize, b: usize) -> Complex64 {
        match &self.omega {
            Omega::Trivial => Complex64::new(1.0, 0.0),
            Omega::Coboundary { lambda } => {
                let ba = self.group.mul(b, a);
                lambda[a][x] * lambda[b][self.theta(a, x)] / lambda[ba][x]
            }
            Omega::Table { values } => values[a][b][x],
            Omega::MagneticTorus { p, q, n } => {
                let n = *n as i64;
                // group elements of Z_n x Z_n are indexed a_1 * n + a_2
                let a2 = (a as i64) % n;
                let b1 = (b as i64) / n;
                let m = (p * a2 * b1).rem_euclid(*q);
                Complex64::from_polar(1.0, std::f64::consts::TAU * m as f64 / *q as f64)
            }
        }
    }

    /// The transformation groupoid X ⋊ G.
    pub fn groupoid(&self) -> Result<FiniteGroupoid> {
        build_transformation_groupoid(&self.group, &self.action, self.n_points)
    }

    /// The groupoid 2-cocycle of the transformation groupoid induced by Ω:
    /// omega((θ_a(x), b), (x, a)) = Ω_x(a, b). Coboundaries map to
    /// coboundaries via sigma(x, a) = Λ(a)(x).
    pub fn groupoid_cocycle(&self) -> Result<(FiniteGroupoid, Cocycle)> {
        let g = self.groupoid()?;
        let ng = self.group.order();
        let cocycle = match &self.omega {
            Omega::Trivial => Cocycle::Trivial,
            Omega::Coboundary { lambda } => {
                let sigma = (0..g.n_arrows())
                    .map(|arrow| {
                        let x = arrow / ng;
                        let a = arrow % ng;
                        lambda[a][x]
                    })
                    .collect();
                Cocycle::coboundary(&g, sigma)?
            }
            _ => Cocycle::table_from(&g, |xi, eta| {
                // eta = (x, a), xi = (θ_a(x), b)
                let (x, a) = (eta / ng, eta % ng);
                let b = xi % ng;
                self.omega_x(x, a, b)
            }),
        };
        Ok((g, cocycle))
    }
}

#[derive(Clone, Debug)]
pub struct TwistedActionReport {
    pub ok: bool,
    pub max_residual: f64,
    /// first violating (a, b, c, x) of the twisted-action cocycle identity
    pub witness: Option<(usize, usize, usize, usize)>,
}

/// Exhaustive check of Ω(a,b) Ω(ba,c) = Θ_a[Ω(b,c)] Ω(a,cb) together with
/// the normalization Ω(a,e) = 1 = Ω(e,a) and unit modulus.
pub fn validate_twisted_action(ta: &TwistedAction) -> TwistedActionReport {
    let ng = ta.group.order();
    let e = ta.group.identity();
    let mut report = TwistedActionReport {
        ok: true,
        max_residual: 0.0,
        witness: None,
    };
    let fail = |r: &mut TwistedActionReport, w: (usize, usize, usize, usize), res: f64| {
        if r.witness.is_none() {
            r.witness = Some(w);
        }
        r.ok = false;
        r.max_residual = r.max_residual.max(res);
    };
    for a in 0..ng {
        for x in 0..ta.n_points {
            let va = ta.omega_x(x, a, e);
            let vb = ta.omega_x(x, e, a);
            let dev = (va - Complex64::new(1.0, 0.0))
                .norm()
                .max((vb - Complex64::new(1.0, 0.0)).norm());
            if dev > 1e-12 {
                fail(&mut report, (a, e, e, x), dev);
            }
        }
    }
    for a in 0..ng {
        for b in 0..ng {
            let ba = ta.group.mul(b, a);
            for c in 0..ng {
                let cb = ta.group.mul(c, b);
                for x in 0..ta.n_points {
                    let lhs = ta.omega_x(x, a, b) * ta.omega_x(x, ba, c);
                    let rhs = ta.omega_x(ta.theta(a, x), b, c) * ta.omega_x(x, a, cb);
                    let res = (lhs - rhs).norm();
                    report.max_residual = report.max_residual.max(res);
                    if res > 1e-12 {
                        fail(&mut report, (a, b, c, x), res);
                    }
                    let modulus = (ta.omega_x(x, a, b).norm() - 1.0).abs();
                    if modulus > 1e-12 {
                        fail(&mut report, (a, b, c, x), modulus);
                    }
                }
            }
        }
    }
    report
}

/// Symbol Φ: (point of X, irrep) -> d_θ x d_θ matrix. Potentials are the
/// θ-independent scalar case.
#[derive(Clone, Debug)]
pub struct Symbol {
    /// entries[x][theta]
    pub entries: Vec<Vec<ComplexMatrix>>,
}

impl Symbol {
    pub fn new(entries: Vec<Vec<ComplexMatrix>>) -> Self {
        Self { entries }
    }

    /// x-independent symbol Φ(x, θ) = F(ψ)(θ) of a group kernel ψ.
    pub fn from_group_kernel(
        dual: &DualData,
        psi: &[Complex64],
        n_points: usize,
    ) -> Symbol {
        let hat = fourier::fourier(dual, psi);
        Symbol {
            entries: (0..n_points).map(|_| hat.clone()).collect(),
        }
    }

    /// Potential symbol Φ(x, θ) = V(x) · Id.
    pub fn potential(dual: &DualData, v: &[Complex64]) -> Symbol {
        let entries = v
            .iter()
            .map(|&vx| {
                dual.irreps
                    .iter()
                    .map(|irr| ComplexMatrix::identity(irr.dim).scale(vx))
                    .collect()
            })
            .collect();
        Symbol { entries }
    }

    pub fn add(&self, other: &Symbol) -> Symbol {
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.iter().zip(b.iter()).map(|(x, y)| x + y).collect())
            .collect();
        Symbol { entries }
    }
}
