//! Unitary triangularization `U* A U = B`.
//!
//! Two construction paths are provided. The deflation path follows the
//! classical inductive argument: find one eigenpair `(lambda, x)`, complete
//! `x` to a unitary `V`, and recurse on the trailing `(n-1) x (n-1)` block of
//! `V* A V`. The QR path reduces to Hessenberg form and runs shifted QR.
//! [`SchurMethod::Auto`] uses deflation up to [`DEFLATION_MAX_N`].

mod oracle;

pub use oracle::{char_poly_coefficients, char_poly_roots, multiset_distance, ORACLE_MAX_N};

use crate::error::{Error, Result};
use crate::linalg::{eigenpair, extend_to_unitary, qr, unitarity_defect, Matrix, Tolerance, C64};
use crate::random;

/// Largest size routed through the deflation path by [`SchurMethod::Auto`].
pub const DEFLATION_MAX_N: usize = 16;

/// Eigenpair attempts (one plain, the rest on randomly rotated copies).
const EIGENPAIR_ATTEMPTS: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SchurMethod {
    #[default]
    Auto,
    Deflation,
    Qr,
}

impl std::str::FromStr for SchurMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Self::Auto),
            "deflation" => Ok(Self::Deflation),
            "qr" => Ok(Self::Qr),
            other => Err(Error::Parse(format!("unknown Schur method `{other}`"))),
        }
    }
}

/// `u` unitary and `b` upper triangular with `u* a u = b`.
#[derive(Debug, Clone)]
pub struct SchurFactorization {
    pub u: Matrix,
    pub b: Matrix,
    /// `|A|_F` of the decomposed matrix.
    pub source_norm: f64,
}

impl SchurFactorization {
    /// Diagonal of `b`: the eigenvalues of the source, with multiplicity, in
    /// no particular order.
    pub fn eigenvalues(&self) -> Vec<C64> {
        self.b.diagonal()
    }

    /// `|u b u* - a|_F`
    pub fn reconstruction_error(&self, a: &Matrix) -> f64 {
        let back = &(&self.u * &self.b) * &self.u.adjoint();
        (&back - a).frobenius_norm()
    }

    /// `|u* a u - b|_F`
    pub fn similarity_error(&self, a: &Matrix) -> f64 {
        let c = &(&self.u.adjoint() * a) * &self.u;
        (&c - &self.b).frobenius_norm()
    }

    pub fn unitarity_defect(&self) -> f64 {
        unitarity_defect(&self.u)
    }

    /// Largest strictly-lower modulus of `b`.
    pub fn max_lower(&self) -> f64 {
        let n = self.b.rows();
        let mut m = 0.0f64;
        for i in 0..n {
            for j in 0..i {
                m = m.max(self.b[(i, j)].norm());
            }
        }
        m
    }

    /// Largest off-diagonal modulus of `b`.
    pub fn max_off_diagonal(&self) -> f64 {
        let n = self.b.rows();
        let mut m = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m = m.max(self.b[(i, j)].norm());
                }
            }
        }
        m
    }
}

pub fn schur_decompose(a: &Matrix, tol: &Tolerance) -> Result<SchurFactorization> {
    schur_decompose_with(a, tol, SchurMethod::Auto, 0)
}

/// `seed` drives the random rotations used when an eigenpair solve has to
/// be restarted; it has no effect when every first attempt succeeds.
pub fn schur_decompose_with(
    a: &Matrix,
    tol: &Tolerance,
    method: SchurMethod,
    seed: u64,
) -> Result<SchurFactorization> {
    let n = a.ensure_square()?;
    let source_norm = a.frobenius_norm();
    let (u, b) = match method {
        SchurMethod::Deflation => deflate(a, tol, seed)?,
        SchurMethod::Auto if n <= DEFLATION_MAX_N => deflate(a, tol, seed)?,
        SchurMethod::Auto | SchurMethod::Qr => qr::schur_qr(a, tol)?,
    };
    Ok(SchurFactorization { u, b, source_norm })
}

/// Eigenpair with restarts: after a failure the matrix is conjugated by a
/// seeded random unitary `W`, solved, and the eigenvector mapped back.
fn robust_eigenpair(a: &Matrix, tol: &Tolerance, seed: u64) -> Result<(C64, Matrix)> {
    let mut last = match eigenpair(a, tol) {
        Ok(pair) => return Ok(pair),
        Err(e) => e,
    };
    let mut rng = random::rng(seed);
    for _ in 1..EIGENPAIR_ATTEMPTS {
        let w = random::unitary(&mut rng, a.rows());
        let rotated = &(&w.adjoint() * a) * &w;
        match eigenpair(&rotated, tol) {
            Ok((lambda, y)) => return Ok((lambda, &w * &y)),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn deflate(a: &Matrix, tol: &Tolerance, seed: u64) -> Result<(Matrix, Matrix)> {
    let n = a.rows();
    if n == 1 {
        return Ok((Matrix::identity(1), a.clone()));
    }
    let (_, x) = robust_eigenpair(a, tol, seed)?;
    let v = extend_to_unitary(&x)?;
    let c = &(&v.adjoint() * a) * &v;
    let (u_sub, b_sub) = deflate(&c.trailing_block(1), tol, seed)?;

    let mut u_ext = Matrix::identity(n);
    let mut b = Matrix::zeros(n, n);
    // first column of c below the diagonal is the eigen residual; dropped
    b[(0, 0)] = c[(0, 0)];
    for j in 1..n {
        let mut acc = C64::new(0.0, 0.0);
        for k in 1..n {
            acc += c[(0, k)] * u_sub[(k - 1, j - 1)];
        }
        b[(0, j)] = acc;
        for i in 1..n {
            u_ext[(i, j)] = u_sub[(i - 1, j - 1)];
            b[(i, j)] = b_sub[(i - 1, j - 1)];
        }
    }
    Ok((&v * &u_ext, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn diagonal_input() {
        let a = Matrix::from_diag(&[r(1.0), r(2.0), r(3.0)]);
        for method in [SchurMethod::Deflation, SchurMethod::Qr] {
            let f = schur_decompose_with(&a, &Tolerance::default(), method, 0).unwrap();
            let d = multiset_distance(&f.eigenvalues(), &[r(1.0), r(2.0), r(3.0)]);
            assert!(d < 1e-12, "{method:?}");
            assert!(f.max_off_diagonal() < 1e-12);
            // u is a permutation with phases
            for i in 0..3 {
                let row_max = (0..3).map(|j| f.u[(i, j)].norm()).fold(0.0, f64::max);
                assert!((row_max - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn nilpotent_input() {
        let a = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        for method in [SchurMethod::Deflation, SchurMethod::Qr] {
            let f = schur_decompose_with(&a, &Tolerance::default(), method, 0).unwrap();
            for l in f.eigenvalues() {
                assert!(l.norm() < 1e-12);
            }
            assert!(f.reconstruction_error(&a) < 1e-12);
        }
    }

    #[test]
    fn one_by_one() {
        let a = Matrix::column_vector(&[C64::new(2.0, -1.0)]);
        let f = schur_decompose(&a, &Tolerance::default()).unwrap();
        assert_eq!(f.b, a);
    }

    #[test]
    fn rejects_rectangular() {
        let a = Matrix::zeros(2, 3);
        assert!(matches!(
            schur_decompose(&a, &Tolerance::default()),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn method_parsing() {
        assert_eq!("qr".parse::<SchurMethod>().unwrap(), SchurMethod::Qr);
        assert!("lu".parse::<SchurMethod>().is_err());
    }
}
