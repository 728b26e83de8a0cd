use super::matrix::{Matrix, C64};
use crate::error::{Error, Result};

/// Residual norm below which a candidate direction counts as dependent.
pub const DEPENDENCE_THRESHOLD: f64 = 1e-8;

/// `sum_i x_i * conj(y_i)`: linear in the first argument.
pub fn inner_product(x: &Matrix, y: &Matrix) -> Result<C64> {
    if x.cols() != 1 || y.cols() != 1 || x.rows() != y.rows() {
        return Err(Error::dims(
            format!("{}x1", x.rows()),
            format!("{}x{}", y.rows(), y.cols()),
        ));
    }
    Ok(dot(x.data(), y.data()))
}

/// Slice form of [`inner_product`]; callers guarantee equal lengths.
#[inline]
pub(crate) fn dot(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

#[inline]
pub(crate) fn norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vector_norm(x: &Matrix) -> f64 {
    x.frobenius_norm()
}

/// Projects `v` off the span of orthonormal `basis`, twice (modified
/// Gram-Schmidt followed by a re-orthogonalization pass).
fn project_out(v: &mut [C64], basis: &[Vec<C64>]) {
    for _ in 0..2 {
        for q in basis {
            let c = dot(v, q);
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= c * qi;
            }
        }
    }
}

/// Orthonormalizes `vectors` in order. Fails with `DependentVectors` when a
/// vector's residual after projection falls below `threshold` times its
/// original norm (or is zero).
pub fn orthonormalize(vectors: &[Vec<C64>], threshold: f64) -> Result<Vec<Vec<C64>>> {
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        let original = norm(v);
        let mut w = v.clone();
        project_out(&mut w, &basis);
        let residual = norm(&w);
        if original == 0.0 || residual < threshold * original {
            return Err(Error::DependentVectors { index, residual });
        }
        w.iter_mut().for_each(|z| *z /= residual);
        basis.push(w);
    }
    Ok(basis)
}

/// Completes `x / |x|` to a unitary matrix whose first column is that unit
/// vector. Remaining columns come from standard basis vectors orthonormalized
/// against the accepted columns; at each step the candidate with the largest
/// residual is taken, and candidates whose residual drops below
/// [`DEPENDENCE_THRESHOLD`] are skipped.
pub fn extend_to_unitary(x: &Matrix) -> Result<Matrix> {
    if x.cols() != 1 {
        return Err(Error::dims("column vector", format!("{}x{}", x.rows(), x.cols())));
    }
    let n = x.rows();
    let nx = x.frobenius_norm();
    if nx == 0.0 {
        return Err(Error::ZeroVector);
    }
    let first: Vec<C64> = x.data().iter().map(|z| z / nx).collect();
    let mut basis = vec![first];
    let mut used = vec![false; n];

    while basis.len() < n {
        let mut best: Option<(usize, Vec<C64>, f64)> = None;
        for i in 0..n {
            if used[i] {
                continue;
            }
            let mut w = vec![C64::new(0.0, 0.0); n];
            w[i] = C64::new(1.0, 0.0);
            project_out(&mut w, &basis);
            let r = norm(&w);
            if r < DEPENDENCE_THRESHOLD {
                used[i] = true;
                continue;
            }
            if best.as_ref().map_or(true, |(_, _, br)| r > *br) {
                best = Some((i, w, r));
            }
        }
        // n - k candidates always leave total residual mass n - k, so some
        // candidate clears the threshold until the basis is complete.
        let (i, mut w, r) = best.ok_or(Error::DependentVectors {
            index: basis.len(),
            residual: 0.0,
        })?;
        used[i] = true;
        w.iter_mut().for_each(|z| *z /= r);
        basis.push(w);
    }

    let mut v = Matrix::zeros(n, n);
    for (j, col) in basis.iter().enumerate() {
        v.set_column(j, col);
    }
    Ok(v)
}

/// `|Q*Q - I|_F`.
pub fn unitarity_defect(q: &Matrix) -> f64 {
    let g = &q.adjoint() * q;
    (&g - &Matrix::identity(q.cols())).frobenius_norm()
}
