//! Seeded generators for test matrices, signals and vector families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{orthonormalize, Matrix, C64};

/// Deterministic generator used across the crate and the CLI.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian scalar (independent N(0,1) parts).
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn complex_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    (0..n).map(|_| complex_normal(rng)).collect()
}

pub fn complex_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Haar-like random unitary from Gram-Schmidt on Gaussian columns.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let cols: Vec<Vec<C64>> = (0..n).map(|_| complex_vector(rng, n)).collect();
        if let Ok(q) = orthonormalize(&cols, 1e-6) {
            let mut m = Matrix::zeros(n, n);
            for (j, c) in q.iter().enumerate() {
                m.set_column(j, c);
            }
            return m;
        }
    }
}

pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let a = complex_matrix(rng, n, n);
    Matrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5)
}

/// `V diag(eigenvalues) V*` for a random unitary `V`.
pub fn normal_with_spectrum<R: Rng + ?Sized>(rng: &mut R, eigenvalues: &[C64]) -> Matrix {
    let v = unitary(rng, eigenvalues.len());
    let d = Matrix::from_diag(eigenvalues);
    &(&v * &d) * &v.adjoint()
}
