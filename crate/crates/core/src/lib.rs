//! Constructive spectral theory and finite harmonic analysis.
//!
//! * [`linalg`]: dense complex matrices and eigen solvers
//! * [`schur`]: unitary triangularization `U* A U = B`
//! * [`spectral`]: eigenprojection resolution of normal matrices
//! * [`abelian`]: characters and Fourier transforms on finite abelian groups
//! * [`riesz`]: Gram-matrix certificates for finite vector families
//! * [`circle`]: Fourier series on the uniformly discretized unit circle

pub mod abelian;
pub mod circle;
pub mod error;
pub mod format;
pub mod linalg;
pub mod random;
pub mod riesz;
pub(crate) mod roots;
pub mod schur;
pub mod spectral;
pub mod validation;

pub use error::{Error, Result};
pub use linalg::{Matrix, Tolerance, C64};
