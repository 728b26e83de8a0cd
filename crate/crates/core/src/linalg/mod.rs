//! Dense complex linear algebra: matrices, inner products, orthonormal
//! completion, and the eigen solvers every other module builds on.

mod eigen;
mod matrix;
mod ortho;
pub mod qr;

pub use eigen::{
    adjoint, eigen_residual, eigenpair, frobenius_norm, hermitian_defect, hermitian_eig,
    hermitian_eig_with, operator_norm_est, HermitianEigen,
};
pub use matrix::{Matrix, Tolerance, C64};
pub use ortho::{
    extend_to_unitary, inner_product, orthonormalize, unitarity_defect, vector_norm,
    DEPENDENCE_THRESHOLD,
};
pub(crate) use ortho::dot;
