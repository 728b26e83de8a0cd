use super::matrix::{Matrix, Tolerance, C64};
use super::qr::schur_qr;
use crate::error::{Error, Result};

/// One eigenpair `(lambda, x)` of a square matrix with `|x| = 1`.
///
/// The vector is the leading Schur vector of a QR-computed Schur form. The
/// pair is accepted only if `|Ax - lambda x| <= tol.abs + tol.rel * |A|_F`;
/// otherwise `NoConvergence` tells the caller to retry from a rotated start.
pub fn eigenpair(a: &Matrix, tol: &Tolerance) -> Result<(C64, Matrix)> {
    a.ensure_square()?;
    let (q, t) = schur_qr(a, tol)?;
    let lambda = t[(0, 0)];
    let mut x = q.column(0);
    let nx = x.frobenius_norm();
    x = x.scale(C64::new(1.0 / nx, 0.0));
    if eigen_residual(a, lambda, &x) > tol.bound(a.frobenius_norm()) {
        return Err(Error::NoConvergence { iterations: 0 });
    }
    Ok((lambda, x))
}

/// `|Ax - lambda x|`
pub fn eigen_residual(a: &Matrix, lambda: C64, x: &Matrix) -> f64 {
    let ax = a * x;
    (&ax - &x.scale(lambda)).frobenius_norm()
}

/// Real eigenvalues (ascending) and unitary eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

impl HermitianEigen {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// `Q diag(f(lambda)) Q*`
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let q = &self.eigenvectors;
        let n = q.rows();
        let mut scaled = q.clone();
        for j in 0..n {
            let s = f(self.eigenvalues[j]);
            for i in 0..n {
                scaled[(i, j)] *= s;
            }
        }
        &scaled * &q.adjoint()
    }

    pub fn reconstruct(&self) -> Matrix {
        self.map(|l| l)
    }
}

/// `|H - H*|_F`
pub fn hermitian_defect(h: &Matrix) -> f64 {
    (h - &h.adjoint()).frobenius_norm()
}

/// [`hermitian_eig_with`] at the default tolerance.
pub fn hermitian_eig(h: &Matrix) -> Result<HermitianEigen> {
    hermitian_eig_with(h, &Tolerance::default())
}

/// Cyclic complex Jacobi iteration. Rejects inputs with
/// `|H - H*|_F > tol.abs + tol.rel * |H|_F`.
pub fn hermitian_eig_with(h: &Matrix, tol: &Tolerance) -> Result<HermitianEigen> {
    let n = h.ensure_square()?;
    let scale = h.frobenius_norm();
    let defect = hermitian_defect(h);
    let threshold = tol.bound(scale);
    if defect > threshold {
        return Err(Error::NotHermitian { defect, threshold });
    }

    let mut a = Matrix::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let mut v = Matrix::identity(n);
    let stop = f64::EPSILON * scale;

    for _sweep in 0..100 {
        let off = a.off_diagonal_norm();
        if off <= stop || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 || mag < 1e-3 * stop / n as f64 {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on (p, q)
                let jpp = C64::new(c, 0.0);
                let jpq = C64::new(s, 0.0);
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * jpp + akq * jqp;
                    a[(k, q)] = akp * jpq + akq * jqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * jpp + vkq * jqp;
                    v[(k, q)] = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

/// Largest singular value, `sqrt(lambda_max(M* M))`.
pub fn operator_norm_est(m: &Matrix) -> f64 {
    let gram = &m.adjoint() * m;
    let eig = hermitian_eig(&gram).expect("M*M is Hermitian by construction");
    eig.max().max(0.0).sqrt()
}

pub fn frobenius_norm(m: &Matrix) -> f64 {
    m.frobenius_norm()
}

pub fn adjoint(m: &Matrix) -> Matrix {
    m.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ortho::unitarity_defect;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn adjoint_examples() {
        let m = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert_eq!(adjoint(&m), Matrix::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]));
        let i = Matrix::column_vector(&[C64::new(0.0, 1.0)]);
        assert_eq!(adjoint(&i), Matrix::column_vector(&[C64::new(0.0, -1.0)]));
        assert_eq!(adjoint(&Matrix::identity(3)), Matrix::identity(3));
    }

    #[test]
    fn norm_examples() {
        let id = Matrix::identity(4);
        assert_eq!(frobenius_norm(&id), 2.0);
        assert!((operator_norm_est(&id) - 1.0).abs() < 1e-15);
        let z = Matrix::zeros(3, 3);
        assert_eq!((frobenius_norm(&z), operator_norm_est(&z)), (0.0, 0.0));
        let d = Matrix::from_diag(&[r(3.0), r(4.0)]);
        assert_eq!(frobenius_norm(&d), 5.0);
        assert!((operator_norm_est(&d) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn eigenpair_diagonal() {
        let a = Matrix::from_diag(&[r(2.0), r(5.0)]);
        let (l, x) = eigenpair(&a, &Tolerance::default()).unwrap();
        let k = if (l - r(2.0)).norm() < 1e-12 { 0 } else { 1 };
        assert!((l - r([2.0, 5.0][k])).norm() < 1e-12);
        assert!((x[(k, 0)].norm() - 1.0).abs() < 1e-12);
        assert!(x[(1 - k, 0)].norm() < 1e-12);
    }

    #[test]
    fn eigenpair_swap_matrix() {
        let a = Matrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let (l, x) = eigenpair(&a, &Tolerance::default()).unwrap();
        assert!((l - r(1.0)).norm() < 1e-12 || (l + r(1.0)).norm() < 1e-12);
        assert!(eigen_residual(&a, l, &x) < 1e-12);
    }

    #[test]
    fn hermitian_examples() {
        let e = hermitian_eig(&Matrix::identity(3)).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 1.0, 1.0]);

        let h = Matrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let e = hermitian_eig(&h).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 3.0).abs() < 1e-14);
        assert!(unitarity_defect(&e.eigenvectors) < 1e-14);
    }

    #[test]
    fn hermitian_complex_entries() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
        let h = Matrix::from_rows(&[
            vec![r(1.0), C64::new(0.0, 1.0)],
            vec![C64::new(0.0, -1.0), r(1.0)],
        ])
        .unwrap();
        let e = hermitian_eig(&h).unwrap();
        assert!(e.eigenvalues[0].abs() < 1e-14);
        assert!((e.eigenvalues[1] - 2.0).abs() < 1e-14);
        assert!((&e.reconstruct() - &h).frobenius_norm() < 1e-14);
    }

    #[test]
    fn hermitian_rejects_non_hermitian() {
        let a = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eig(&a), Err(Error::NotHermitian { .. })));
    }
}
