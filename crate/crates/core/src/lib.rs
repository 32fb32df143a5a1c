//! Twisted groupoid convolution algebras realized as concrete complex
//! matrices, and C*-algebraic spectral sets (spectrum, ε-pseudospectra,
//! numerical ranges, polynomial hulls, essential variants) of the resulting
//! operators.
//!
//! The crate is organized around six pieces:
//!
//! * [`groupoid`] / [`cocycle`] — finite groupoids, Haar systems, 2-cocycles;
//! * [`kernel`] — the twisted convolution *-algebra and its regular
//!   representations;
//! * [`spectral`] — spectral sets of matrices and operator polynomials;
//! * [`decomposition`] — band operators, finite sections, compressions and
//!   the Decomposition Principle checks;
//! * [`pseudodiff`] — finite-group Fourier analysis and the twisted
//!   quantization Op_x, including the discrete magnetic Harper model;
//! * [`io`] — JSON model files and CSV/SVG emission for the CLI.
//!
//! All numerical linear algebra lives in [`linalg`] and is hand-rolled
//! (Householder QR, Hessenberg + shifted QR, Jacobi); there are no external
//! solver dependencies.

pub mod cocycle;
pub mod decomposition;
pub mod error;
pub mod grid;
pub mod group;
pub mod groupoid;
pub mod io;
pub mod kernel;
pub mod linalg;
pub mod matrix;
pub mod pseudodiff;
pub mod spectral;

pub use error::{Error, Result};
pub use grid::GridWindow;
pub use matrix::ComplexMatrix;

pub use num_complex::Complex64;
