//! 2-cocycles on finite groupoids: unit-modulus values on composable pairs
//! satisfying the cocycle identity and normalized on unit arrows.
//!
//! Values are stored as Complex64 with |value| = 1 up to 1e-12; validation
//! uses that tolerance throughout.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, RestrictionMap};

pub const COCYCLE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum Cocycle {
    Trivial,
    /// Coboundary of sigma: omega(xi, eta) = sigma(xi) sigma(eta) / sigma(xi eta).
    Coboundary { sigma: Vec<Complex64> },
    /// Explicit table over composable pairs.
    Table {
        values: HashMap<(usize, usize), Complex64>,
    },
}

impl Cocycle {
    pub fn trivial() -> Self {
        Cocycle::Trivial
    }

    /// Coboundary of a unit-modulus function on arrows. sigma is normalized
    /// to 1 on unit arrows first, which is what makes the normalization
    /// identity omega(x, eta) = 1 = omega(xi, x) hold.
    pub fn coboundary(g: &FiniteGroupoid, mut sigma: Vec<Complex64>) -> Result<Self> {
        if sigma.len() != g.n_arrows() {
            return Err(Error::InvalidCocycle("sigma length != arrow count".into()));
        }
        for (a, s) in sigma.iter().enumerate() {
            if (s.norm() - 1.0).abs() > COCYCLE_TOL {
                return Err(Error::InvalidCocycle(format!(
                    "|sigma({a})| = {} is not 1",
                    s.norm()
                )));
            }
        }
        for x in 0..g.n_units() {
            sigma[g.unit_arrow(x)] = Complex64::new(1.0, 0.0);
        }
        Ok(Cocycle::Coboundary { sigma })
    }

    /// Materializes a table cocycle from a function on composable pairs.
    pub fn table_from(g: &FiniteGroupoid, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut values = HashMap::new();
        for (xi, eta, _) in g.composable_pairs() {
            values.insert((xi, eta), f(xi, eta));
        }
        Cocycle::Table { values }
    }

    /// omega(xi, eta) on a composable pair.
    pub fn value(&self, g: &FiniteGroupoid, xi: usize, eta: usize) -> Result<Complex64> {
        match self {
            Cocycle::Trivial => Ok(Complex64::new(1.0, 0.0)),
            Cocycle::Coboundary { sigma } => {
                let prod = g
                    .compose(xi, eta)
                    .ok_or(Error::MissingCocyclePair(xi, eta))?;
                Ok(sigma[xi] * sigma[eta] / sigma[prod])
            }
            Cocycle::Table { values } => values
                .get(&(xi, eta))
                .copied()
                .ok_or(Error::MissingCocyclePair(xi, eta)),
        }
    }

    /// Restriction to a restricted groupoid, in the new arrow indexing.
    pub fn restrict(&self, g: &FiniteGroupoid, map: &RestrictionMap) -> Result<Cocycle> {
        match self {
            Cocycle::Trivial => Ok(Cocycle::Trivial),
            Cocycle::Coboundary { sigma } => Ok(Cocycle::Coboundary {
                sigma: map.arrow_old.iter().map(|&a| sigma[a]).collect(),
            }),
            Cocycle::Table { values } => {
                let _ = g;
                let mut restricted = HashMap::new();
                for (&(a, b), &v) in values.iter() {
                    if let (Some(&na), Some(&nb)) = (map.arrow_new.get(&a), map.arrow_new.get(&b)) {
                        restricted.insert((na, nb), v);
                    }
                }
                Ok(Cocycle::Table { values: restricted })
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum CocycleViolation {
    Modulus { pair: (usize, usize), deviation: f64 },
    Normalization { pair: (usize, usize) },
    Identity { triple: (usize, usize, usize), residual: f64 },
    MissingPair { pair: (usize, usize) },
}

#[derive(Clone, Debug)]
pub struct CocycleReport {
    pub ok: bool,
    pub max_modulus_deviation: f64,
    pub max_identity_residual: f64,
    pub first_violation: Option<CocycleViolation>,
}

/// Exhaustive validation of the cocycle identity
/// omega(xi,eta) omega(xi·eta, zeta) = omega(eta,zeta) omega(xi, eta·zeta)
/// together with unit normalization and unit modulus. Reports the first
/// violating triple and the maximal modulus deviation.
pub fn validate_cocycle(g: &FiniteGroupoid, omega: &Cocycle) -> CocycleReport {
    let mut report = CocycleReport {
        ok: true,
        max_modulus_deviation: 0.0,
        max_identity_residual: 0.0,
        first_violation: None,
    };
    let fail = |report: &mut CocycleReport, v: CocycleViolation| {
        if report.first_violation.is_none() {
            report.first_violation = Some(v);
        }
        report.ok = false;
    };
    let pairs: Vec<(usize, usize, usize)> = g.composable_pairs().collect();
    for &(xi, eta, _) in &pairs {
        match omega.value(g, xi, eta) {
            Ok(v) => {
                let dev = (v.norm() - 1.0).abs();
                report.max_modulus_deviation = report.max_modulus_deviation.max(dev);
                if dev > COCYCLE_TOL {
                    fail(&mut report, CocycleViolation::Modulus { pair: (xi, eta), deviation: dev });
                }
            }
            Err(_) => {
                fail(&mut report, CocycleViolation::MissingPair { pair: (xi, eta) });
                return report;
            }
        }
    }
    // normalization on pairs involving unit arrows
    for &(xi, eta, _) in &pairs {
        let unit_left = xi == g.unit_arrow(g.range(eta));
        let unit_right = eta == g.unit_arrow(g.source(xi));
        if unit_left || unit_right {
            let v = omega.value(g, xi, eta).unwrap();
            if (v - Complex64::new(1.0, 0.0)).norm() > COCYCLE_TOL {
                fail(&mut report, CocycleViolation::Normalization { pair: (xi, eta) });
            }
        }
    }
    // cocycle identity on all composable triples
    for &(xi, eta, xi_eta) in &pairs {
        for zeta in 0..g.n_arrows() {
            if g.source(eta) != g.range(zeta) {
                continue;
            }
            let eta_zeta = g.compose(eta, zeta).unwrap();
            let lhs = omega.value(g, xi, eta).unwrap() * omega.value(g, xi_eta, zeta).unwrap();
            let rhs = omega.value(g, eta, zeta).unwrap() * omega.value(g, xi, eta_zeta).unwrap();
            let res = (lhs - rhs).norm();
            report.max_identity_residual = report.max_identity_residual.max(res);
            if res > COCYCLE_TOL {
                fail(
                    &mut report,
                    CocycleViolation::Identity { triple: (xi, eta, zeta), residual: res },
                );
            }
        }
    }
    report
}
