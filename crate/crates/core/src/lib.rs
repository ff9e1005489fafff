//! Algebraic oscillator model built on the Heisenberg-Weyl superalgebra sh(2|2).
//!
//! The crate is organised bottom-up:
//!
//! - [`special`]: Charlier and Krawtchouk polynomials, terminating hypergeometric
//!   sums and log-space factorials, each with an exact-rational twin.
//! - [`fock`]: matrices of the superalgebra generators on a truncated Fock basis,
//!   together with the position, momentum and Hamiltonian operators.
//! - [`tridiag`]: a Sturm-sequence bisection eigensolver for symmetric tridiagonal
//!   matrices.
//! - [`spectral`]: the spectral problem of the position operator (recurrence,
//!   closed form and numerical diagonalisation).
//! - [`oscillator`]: wavefunctions, the Fourier kernel, observables and the limit
//!   from the finite sl(2|1) oscillator.

pub mod error;
pub mod fock;
pub mod oscillator;
pub mod special;
pub mod spectral;
pub mod tridiag;

pub use error::{Error, Result};
pub use fock::{FockTruncation, GeneratorId, ModelParams, OperatorMatrix};
pub use spectral::{SpectrumWindow, SupportPoint};
