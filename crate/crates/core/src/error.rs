//! Error type shared across the crate.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("kernels live on different carriers (groupoid/cocycle/Haar must match)")]
    MismatchedCarriers,

    #[error("INVARIANCE_REQUIRED: unit subset {0:?} is not invariant")]
    InvarianceRequired(Vec<usize>),

    #[error("unknown unit {0}")]
    UnknownUnit(usize),

    #[error("unit subset is empty")]
    EmptySubset,

    #[error("point set is empty")]
    EmptySet,

    #[error("DEGENERATE_PENCIL: leading coefficient is singular (conditioning {conditioning:.3e})")]
    DegeneratePencil { conditioning: f64 },

    #[error("NUMERICAL_FAILURE: QR iteration did not converge ({converged} of {total} eigenvalues)")]
    NumericalFailure {
        converged: usize,
        total: usize,
        partial: Vec<Complex64>,
    },

    #[error("kernel has support outside the restricted groupoid (arrow {0})")]
    SupportOutsideRestriction(usize),

    #[error("groupoid axiom violated: {0}")]
    GroupoidAxiom(String),

    #[error("group axiom violated: {0}")]
    GroupAxiom(String),

    #[error("action axiom violated at (a={a}, b={b}, x={x})")]
    ActionAxiom { a: usize, b: usize, x: usize },

    #[error("cocycle invalid: {0}")]
    InvalidCocycle(String),

    #[error("degenerate window: {0}")]
    DegenerateWindow(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("composable pair ({0},{1}) missing from cocycle table")]
    MissingCocyclePair(usize, usize),

    #[error("truncation schedule too short: need at least {need}, got {got}")]
    ScheduleTooShort { need: usize, got: usize },

    #[error("flux denominator {q} does not divide lattice size {n}")]
    FluxQuantization { q: usize, n: usize },

    #[error("symbol support too wide for section size {0}")]
    SupportTooWide(usize),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
