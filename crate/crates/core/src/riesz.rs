//! Riesz certificates for finite vector families.
//!
//! For a window `x_1..x_N` in `C^d` the optimal constants in
//! `A sum|c|^2 <= |sum c_n x_n|^2 <= B sum|c|^2` are the extreme eigenvalues
//! of the Gram matrix `G = U* U`, because `|sum c_n x_n|^2 = c* G c`. The certificate
//! bundles the Gram matrix, these bounds, the Bessel constant (top of the
//! frame operator spectrum, equal to `B`), the synthesis operator `U` with
//! `U e_n = x_n`, and the Hermitian square root `R` with `R* R = G`.
//! Verdicts apply to the window only, never to an infinite continuation.

use crate::error::{Error, Result};
use crate::linalg::{dot, hermitian_eig, HermitianEigen, Matrix, C64};

pub const DEFAULT_DEGENERATE_THRESHOLD: f64 = 1e-8;
/// Eigenvalues below this fraction of `lambda_max` do not count toward rank.
pub const RANK_THRESHOLD: f64 = 1e-10;
/// Slack allowed for negative Gram eigenvalues, relative to `|G|_F`.
pub const PSD_SLACK: f64 = 1e-10;
const ONB_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct VectorFamily {
    ambient_dim: usize,
    vectors: Vec<Matrix>,
}

impl VectorFamily {
    pub fn new(ambient_dim: usize, vectors: Vec<Matrix>) -> Result<Self> {
        if vectors.is_empty() || ambient_dim == 0 {
            return Err(Error::EmptyMatrix {
                rows: ambient_dim,
                cols: vectors.len(),
            });
        }
        if vectors.len() > ambient_dim {
            return Err(Error::dims(
                format!("at most {ambient_dim} vectors"),
                format!("{} vectors", vectors.len()),
            ));
        }
        for v in &vectors {
            if v.rows() != ambient_dim || v.cols() != 1 {
                return Err(Error::dims(
                    format!("{ambient_dim}x1"),
                    format!("{}x{}", v.rows(), v.cols()),
                ));
            }
        }
        Ok(Self { ambient_dim, vectors })
    }

    pub fn from_slices(ambient_dim: usize, vectors: &[Vec<C64>]) -> Result<Self> {
        let mut cols = Vec::with_capacity(vectors.len());
        for v in vectors {
            cols.push(Matrix::new(v.len(), 1, v.clone())?);
        }
        Self::new(ambient_dim, cols)
    }

    /// `{e_n + e_{n+1}}_{n=1..N}` in `C^{N+1}`.
    pub fn adjacent_sums(window: usize) -> Self {
        let d = window + 1;
        let vectors = (0..window)
            .map(|n| &Matrix::basis_vector(d, n) + &Matrix::basis_vector(d, n + 1))
            .collect();
        Self::new(d, vectors).expect("window fits its ambient space")
    }

    /// First `n` standard basis vectors of `C^d`.
    pub fn standard(d: usize, n: usize) -> Self {
        Self::new(d, (0..n).map(|i| Matrix::basis_vector(d, i)).collect())
            .expect("standard family fits")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Matrix] {
        &self.vectors
    }

    /// `sum c_n x_n`
    pub fn combine(&self, coefficients: &[C64]) -> Result<Matrix> {
        if coefficients.len() != self.len() {
            return Err(Error::dims(
                format!("{} coefficients", self.len()),
                format!("{}", coefficients.len()),
            ));
        }
        let mut out = Matrix::zeros(self.ambient_dim, 1);
        for (c, x) in coefficients.iter().zip(&self.vectors) {
            out = &out + &x.scale(*c);
        }
        Ok(out)
    }

    /// `sum_n |<x, x_n>|^2`
    pub fn analysis_energy(&self, x: &Matrix) -> Result<f64> {
        if x.rows() != self.ambient_dim || x.cols() != 1 {
            return Err(Error::dims(format!("{}x1", self.ambient_dim), format!("{}x{}", x.rows(), x.cols())));
        }
        Ok(self.vectors.iter().map(|v| dot(x.data(), v.data()).norm_sqr()).sum())
    }
}

/// Gram matrix `G = U* U`, i.e. `G_ij = x_i* x_j = <x_j, x_i>`, so that
/// `|sum c_n x_n|^2 = c* G c`. Its transpose holds `<x_i, x_j>`; both share
/// one spectrum.
pub fn gram_matrix(fam: &VectorFamily) -> Matrix {
    let n = fam.len();
    Matrix::from_fn(n, n, |i, j| dot(fam.vectors[j].data(), fam.vectors[i].data()))
}

/// Frame operator `S = sum x_n x_n*` on `C^d`.
pub fn frame_operator(fam: &VectorFamily) -> Matrix {
    let d = fam.ambient_dim;
    let mut s = Matrix::zeros(d, d);
    for v in &fam.vectors {
        for i in 0..d {
            for j in 0..d {
                s[(i, j)] += v[(i, 0)] * v[(j, 0)].conj();
            }
        }
    }
    s
}

fn gram_spectrum(fam: &VectorFamily) -> HermitianEigen {
    hermitian_eig(&gram_matrix(fam)).expect("Gram matrices are Hermitian by construction")
}

/// Optimal lower and upper Riesz constants `(A, B)`: extreme Gram eigenvalues.
pub fn frame_bounds(fam: &VectorFamily) -> (f64, f64) {
    let eig = gram_spectrum(fam);
    (eig.min().max(0.0), eig.max().max(0.0))
}

/// Least `B` with `sum |<x, x_n>|^2 <= B |x|^2`, i.e. `lambda_max(S)`.
pub fn bessel_constant(fam: &VectorFamily) -> f64 {
    hermitian_eig(&frame_operator(fam))
        .expect("frame operator is Hermitian by construction")
        .max()
        .max(0.0)
}

/// Unit vector attaining the Bessel constant (top eigenvector of `S`).
pub fn bessel_extremal_vector(fam: &VectorFamily) -> Matrix {
    let eig = hermitian_eig(&frame_operator(fam)).expect("frame operator is Hermitian");
    eig.eigenvectors.column(fam.ambient_dim - 1)
}

/// Synthesis operator `U` (`d x N`) with `U e_n = x_n`, written in the
/// coordinates of `onb` (standard basis when `None`).
pub fn synthesis_operator(fam: &VectorFamily, onb: Option<&[Matrix]>) -> Result<Matrix> {
    let d = fam.ambient_dim;
    let n = fam.len();
    let Some(onb) = onb else {
        return Matrix::from_columns(&fam.vectors);
    };
    if onb.len() != d {
        return Err(Error::dims(format!("{d} basis vectors"), format!("{}", onb.len())));
    }
    let basis = Matrix::from_columns(onb)?;
    if basis.rows() != d {
        return Err(Error::dims(format!("{d}x1"), format!("{}x1", basis.rows())));
    }
    let defect = crate::linalg::unitarity_defect(&basis);
    if defect > ONB_TOLERANCE {
        return Err(Error::NotOrthonormal { defect });
    }
    Ok(Matrix::from_fn(d, n, |k, j| {
        dot(fam.vectors[j].data(), onb[k].data())
    }))
}

/// Hermitian square root `R = Q diag(sqrt(lambda)) Q*` of a PSD Gram matrix.
pub fn r_factorization(gram: &Matrix) -> Result<Matrix> {
    let eig = hermitian_eig(gram)?;
    let floor = -PSD_SLACK * gram.frobenius_norm();
    if eig.min() < floor {
        return Err(Error::NegativeEigenvalue {
            eigenvalue: eig.min(),
        });
    }
    Ok(eig.map(|l| l.max(0.0).sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    RieszSequence,
    Degenerate,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::RieszSequence => "RieszSequence",
            Verdict::Degenerate => "Degenerate",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RieszCertificate {
    pub window: usize,
    pub gram: Matrix,
    pub gram_eigenvalues: Vec<f64>,
    pub lower_bound_a: f64,
    pub upper_bound_b: f64,
    pub bessel_constant: f64,
    pub synthesis_u: Matrix,
    pub r_factor: Matrix,
    /// Number of Gram eigenvalues `>= RANK_THRESHOLD * lambda_max`.
    pub rank: usize,
    pub verdict: Verdict,
    /// `B / A`, infinite for degenerate windows.
    pub condition: f64,
    pub threshold: f64,
}

impl RieszCertificate {
    /// Linear independence of the window (`rank = N`).
    pub fn complete_in_window(&self) -> bool {
        self.rank == self.window
    }

    /// `|U|`, equal to `sqrt(B)`.
    pub fn synthesis_norm(&self) -> f64 {
        self.upper_bound_b.sqrt()
    }

    /// `|U^+|` on the span, `1 / sqrt(A)`; infinite when degenerate.
    pub fn pseudo_inverse_norm(&self) -> f64 {
        match self.verdict {
            Verdict::RieszSequence => 1.0 / self.lower_bound_a.sqrt(),
            Verdict::Degenerate => f64::INFINITY,
        }
    }
}

/// Builds the full certificate. The verdict is `RieszSequence` iff
/// `A / B > degenerate_threshold`.
pub fn riesz_certify(fam: &VectorFamily, degenerate_threshold: f64) -> Result<RieszCertificate> {
    let gram = gram_matrix(fam);
    let eig = hermitian_eig(&gram)?;
    let lower = eig.min().max(0.0);
    let upper = eig.max().max(0.0);
    let rank = eig
        .eigenvalues
        .iter()
        .filter(|&&l| upper > 0.0 && l >= RANK_THRESHOLD * upper)
        .count();
    let verdict = if upper > 0.0 && lower / upper > degenerate_threshold {
        Verdict::RieszSequence
    } else {
        Verdict::Degenerate
    };
    let condition = match verdict {
        Verdict::RieszSequence => upper / lower,
        Verdict::Degenerate => f64::INFINITY,
    };
    Ok(RieszCertificate {
        window: fam.len(),
        r_factor: r_factorization(&gram)?,
        synthesis_u: synthesis_operator(fam, None)?,
        bessel_constant: bessel_constant(fam),
        gram_eigenvalues: eig.eigenvalues,
        gram,
        lower_bound_a: lower,
        upper_bound_b: upper,
        rank,
        verdict,
        condition,
        threshold: degenerate_threshold,
    })
}

/// The operator `x_n -> y_n` between two windows of equal length, as the
/// matrix `U_to U_from^+`. Requires `from` to be non-degenerate.
pub fn transfer_operator(from: &VectorFamily, to: &VectorFamily) -> Result<Matrix> {
    if from.len() != to.len() {
        return Err(Error::dims(format!("{} vectors", from.len()), format!("{}", to.len())));
    }
    let u_from = synthesis_operator(from, None)?;
    let u_to = synthesis_operator(to, None)?;
    // U^+ = G^-1 U*, with G^-1 from the Gram spectrum
    let eig = hermitian_eig(&gram_matrix(from))?;
    if eig.min() <= 0.0 || eig.min() / eig.max() <= DEFAULT_DEGENERATE_THRESHOLD {
        return Err(Error::DependentVectors {
            index: 0,
            residual: eig.min(),
        });
    }
    let gram_inv = eig.map(|l| 1.0 / l);
    Ok(&(&u_to * &gram_inv) * &u_from.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn gram_examples() {
        assert_eq!(gram_matrix(&VectorFamily::standard(2, 2)), Matrix::identity(2));
        let g = gram_matrix(&VectorFamily::adjacent_sums(3));
        let expected =
            Matrix::from_real_rows(&[&[2.0, 1.0, 0.0], &[1.0, 2.0, 1.0], &[0.0, 1.0, 2.0]]);
        assert_eq!(g, expected);
        let single = VectorFamily::standard(3, 1);
        assert_eq!(gram_matrix(&single), Matrix::identity(1));
    }

    #[test]
    fn bounds_examples() {
        let (a, b) = frame_bounds(&VectorFamily::standard(3, 3));
        assert!((a - 1.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);

        let s2 = 2f64.sqrt();
        let (a, b) = frame_bounds(&VectorFamily::adjacent_sums(3));
        assert!((a - (2.0 - s2)).abs() < 1e-12);
        assert!((b - (2.0 + s2)).abs() < 1e-12);

        let fam = VectorFamily::new(2, vec![Matrix::basis_vector(2, 0), Matrix::zeros(2, 1)]).unwrap();
        assert_eq!(frame_bounds(&fam).0, 0.0);
    }

    #[test]
    fn bessel_examples() {
        assert!((bessel_constant(&VectorFamily::standard(4, 4)) - 1.0).abs() < 1e-12);
        let two = VectorFamily::new(3, vec![Matrix::basis_vector(3, 1).scale(r(2.0))]).unwrap();
        assert!((bessel_constant(&two) - 4.0).abs() < 1e-12);
        let b = bessel_constant(&VectorFamily::adjacent_sums(3));
        assert!((b - (2.0 + 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn synthesis_examples() {
        let fam = VectorFamily::standard(3, 2);
        let u = synthesis_operator(&fam, None).unwrap();
        assert!((&(&u.adjoint() * &u) - &Matrix::identity(2)).frobenius_norm() < 1e-15);

        let two = VectorFamily::new(2, vec![Matrix::basis_vector(2, 0).scale(r(2.0))]).unwrap();
        let u = synthesis_operator(&two, None).unwrap();
        assert!((crate::linalg::operator_norm_est(&u) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn synthesis_rejects_bad_onb() {
        let fam = VectorFamily::standard(2, 2);
        let bad = [Matrix::basis_vector(2, 0), Matrix::basis_vector(2, 0)];
        assert!(matches!(synthesis_operator(&fam, Some(&bad)), Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn synthesis_in_rotated_onb() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let onb = [
            Matrix::column_vector(&[r(s), r(s)]),
            Matrix::column_vector(&[r(s), r(-s)]),
        ];
        let fam = VectorFamily::standard(2, 1);
        let u = synthesis_operator(&fam, Some(&onb)).unwrap();
        assert!((u[(0, 0)] - r(s)).norm() < 1e-15);
        assert!((u[(1, 0)] - r(s)).norm() < 1e-15);
    }

    #[test]
    fn r_factor_examples() {
        assert!((&r_factorization(&Matrix::identity(3)).unwrap() - &Matrix::identity(3)).max_abs() < 1e-15);
        let d = r_factorization(&Matrix::from_diag(&[r(4.0), r(9.0)])).unwrap();
        assert!((&d - &Matrix::from_diag(&[r(2.0), r(3.0)])).max_abs() < 1e-14);
        let neg = Matrix::from_diag(&[r(1.0), r(-0.5)]);
        assert!(matches!(r_factorization(&neg), Err(Error::NegativeEigenvalue { .. })));
    }

    #[test]
    fn certify_examples() {
        let c = riesz_certify(&VectorFamily::standard(3, 3), DEFAULT_DEGENERATE_THRESHOLD).unwrap();
        assert_eq!(c.verdict, Verdict::RieszSequence);
        assert!((c.condition - 1.0).abs() < 1e-12);
        assert!(c.complete_in_window());

        let near = VectorFamily::from_slices(
            2,
            &[vec![r(1.0), r(0.0)], vec![r(1.0), r(1e-9)]],
        )
        .unwrap();
        let c = riesz_certify(&near, DEFAULT_DEGENERATE_THRESHOLD).unwrap();
        assert_eq!(c.verdict, Verdict::Degenerate);
        assert_eq!(c.condition, f64::INFINITY);

        let c = riesz_certify(&VectorFamily::adjacent_sums(3), DEFAULT_DEGENERATE_THRESHOLD).unwrap();
        let s2 = 2f64.sqrt();
        assert_eq!(c.verdict, Verdict::RieszSequence);
        assert!((c.condition - (2.0 + s2) / (2.0 - s2)).abs() < 1e-11);
    }

    #[test]
    fn zero_family_is_degenerate() {
        let fam = VectorFamily::new(2, vec![Matrix::zeros(2, 1)]).unwrap();
        let c = riesz_certify(&fam, DEFAULT_DEGENERATE_THRESHOLD).unwrap();
        assert_eq!(c.verdict, Verdict::Degenerate);
        assert_eq!(c.rank, 0);
    }

    #[test]
    fn family_shape_errors() {
        assert!(VectorFamily::new(1, vec![Matrix::zeros(1, 1), Matrix::zeros(1, 1)]).is_err());
        assert!(VectorFamily::new(2, vec![Matrix::zeros(3, 1)]).is_err());
        assert!(VectorFamily::new(2, vec![]).is_err());
    }
}
