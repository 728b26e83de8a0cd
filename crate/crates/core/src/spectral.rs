//! Spectral decomposition of normal matrices, `T = sum lambda P_lambda`.
//!
//! For a normal matrix the Schur basis is an orthonormal eigenbasis, so each
//! eigenprojection is assembled from the Schur vectors whose diagonal entries
//! fall in one eigenvalue cluster.

use crate::error::{Error, Result};
use crate::linalg::{orthonormalize, Matrix, Tolerance, C64, DEPENDENCE_THRESHOLD};
use crate::schur::{schur_decompose_with, SchurMethod};

/// Separation factor below which two clusters are reported as ambiguous.
pub const CLUSTER_GUARD_FACTOR: f64 = 10.0;

/// Result of [`is_normal`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalityCheck {
    pub normal: bool,
    /// `|TT* - T*T|_F`
    pub defect: f64,
    pub threshold: f64,
}

/// `T` is normal iff `|TT* - T*T|_F <= tol.abs + tol.rel * |T|_F^2`.
pub fn is_normal(t: &Matrix, tol: &Tolerance) -> Result<NormalityCheck> {
    t.ensure_square()?;
    let ta = t.adjoint();
    let defect = (&(t * &ta) - &(&ta * t)).frobenius_norm();
    let norm = t.frobenius_norm();
    let threshold = tol.bound(norm * norm);
    Ok(NormalityCheck {
        normal: defect <= threshold,
        defect,
        threshold,
    })
}

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Distinct eigenvalues (cluster means).
    pub eigenvalues: Vec<C64>,
    /// Orthogonal projections onto the eigenspaces, parallel to `eigenvalues`.
    pub projections: Vec<Matrix>,
    pub multiplicities: Vec<usize>,
    /// Orthonormal eigenbasis, columns grouped by cluster in eigenvalue order.
    pub eigenbasis: Matrix,
    /// Radius used for single-linkage clustering.
    pub cluster_radius: f64,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenbasis.rows()
    }

    /// `sum lambda_i P_i`
    pub fn reconstruct(&self) -> Matrix {
        let n = self.dim();
        self.eigenvalues
            .iter()
            .zip(&self.projections)
            .fold(Matrix::zeros(n, n), |acc, (&l, p)| &acc + &p.scale(l))
    }

    /// `|sum P_i - I|_F`
    pub fn resolution_defect(&self) -> f64 {
        let n = self.dim();
        let sum = self.projections.iter().fold(Matrix::zeros(n, n), |acc, p| &acc + p);
        (&sum - &Matrix::identity(n)).frobenius_norm()
    }

    /// Largest `|P_i P_j|_F` over `i != j`.
    pub fn max_cross_product(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, p) in self.projections.iter().enumerate() {
            for (j, q) in self.projections.iter().enumerate() {
                if i != j {
                    worst = worst.max((p * q).frobenius_norm());
                }
            }
        }
        worst
    }

    /// Columns of the eigenbasis belonging to cluster `k`.
    pub fn cluster_vectors(&self, k: usize) -> Vec<Matrix> {
        let start: usize = self.multiplicities[..k].iter().sum();
        (start..start + self.multiplicities[k])
            .map(|j| self.eigenbasis.column(j))
            .collect()
    }
}

/// Per-projection residuals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionResiduals {
    /// `|P^2 - P|_F`
    pub idempotence: f64,
    /// `|P* - P|_F`
    pub self_adjointness: f64,
    /// `|P T - T P|_F`
    pub commutator: f64,
    /// `|trace(P) - multiplicity|`
    pub trace_gap: f64,
}

pub fn projection_residuals(t: &Matrix, p: &Matrix, multiplicity: usize) -> ProjectionResiduals {
    ProjectionResiduals {
        idempotence: (&(p * p) - p).frobenius_norm(),
        self_adjointness: (&p.adjoint() - p).frobenius_norm(),
        commutator: (&(p * t) - &(t * p)).frobenius_norm(),
        trace_gap: (p.trace() - C64::new(multiplicity as f64, 0.0)).norm(),
    }
}

/// Single-linkage clusters of `values` at `radius`, ordered by first member.
fn cluster(values: &[C64], radius: f64) -> Vec<Vec<usize>> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut k = i;
        while parent[k] != r {
            let next = parent[k];
            parent[k] = r;
            k = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= radius {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

/// Decomposes a normal matrix into eigenvalues and eigenprojections.
///
/// Eigenvalues on the Schur diagonal are grouped by single linkage at radius
/// `max(tol.abs, tol.rel * |T|_F * n)`; two clusters whose closest members lie
/// within `10 *` that radius raise `ClusterAmbiguity`.
pub fn spectral_decompose(t: &Matrix, tol: &Tolerance) -> Result<SpectralDecomposition> {
    spectral_decompose_seeded(t, tol, 0)
}

/// [`spectral_decompose`] with an explicit seed for eigenpair restarts.
pub fn spectral_decompose_seeded(t: &Matrix, tol: &Tolerance, seed: u64) -> Result<SpectralDecomposition> {
    let n = t.ensure_square()?;
    let check = is_normal(t, tol)?;
    if !check.normal {
        return Err(Error::NotNormal {
            defect: check.defect,
            threshold: check.threshold,
        });
    }

    let schur = schur_decompose_with(t, tol, SchurMethod::Auto, seed)?;
    let diag = schur.eigenvalues();
    let radius = tol.abs.max(tol.rel * schur.source_norm * n as f64);
    let groups = cluster(&diag, radius);

    let guard = CLUSTER_GUARD_FACTOR * radius;
    for (a, ga) in groups.iter().enumerate() {
        for gb in &groups[a + 1..] {
            let separation = ga
                .iter()
                .flat_map(|&i| gb.iter().map(move |&j| (i, j)))
                .map(|(i, j)| (diag[i] - diag[j]).norm())
                .fold(f64::INFINITY, f64::min);
            if separation < guard {
                return Err(Error::ClusterAmbiguity {
                    separation,
                    guard,
                    radius,
                });
            }
        }
    }

    let mut eigenvalues = Vec::with_capacity(groups.len());
    let mut projections = Vec::with_capacity(groups.len());
    let mut multiplicities = Vec::with_capacity(groups.len());
    let mut eigenbasis = Matrix::zeros(n, n);
    let mut col = 0;
    for group in &groups {
        let mean = group.iter().map(|&i| diag[i]).sum::<C64>() / group.len() as f64;
        let mut p = Matrix::zeros(n, n);
        for &k in group {
            let q = schur.u.column_values(k);
            for i in 0..n {
                for j in 0..n {
                    p[(i, j)] += q[i] * q[j].conj();
                }
            }
            eigenbasis.set_column(col, &q);
            col += 1;
        }
        eigenvalues.push(mean);
        projections.push(p);
        multiplicities.push(group.len());
    }

    Ok(SpectralDecomposition {
        eigenvalues,
        projections,
        multiplicities,
        eigenbasis,
        cluster_radius: radius,
    })
}

/// Orthogonal projection onto the span of `vectors`: `sum u_i u_i*` over an
/// orthonormalization of the input.
pub fn projection_onto_span(vectors: &[Matrix]) -> Result<Matrix> {
    let first = vectors.first().ok_or(Error::EmptyMatrix { rows: 0, cols: 0 })?;
    let n = first.rows();
    let mut raw = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.cols() != 1 || v.rows() != n {
            return Err(Error::dims(format!("{n}x1"), format!("{}x{}", v.rows(), v.cols())));
        }
        raw.push(v.data().to_vec());
    }
    let basis = orthonormalize(&raw, DEPENDENCE_THRESHOLD)?;
    let mut p = Matrix::zeros(n, n);
    for u in &basis {
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] += u[i] * u[j].conj();
            }
        }
    }
    Ok(p)
}

/// `(|Tv - lambda v|, |T* v - conj(lambda) v|)`.
pub fn adjoint_eigen_residual(t: &Matrix, lambda: C64, v: &Matrix) -> Result<(f64, f64)> {
    let tv = t.try_mul(v)?;
    let tav = t.adjoint().try_mul(v)?;
    Ok((
        (&tv - &v.scale(lambda)).frobenius_norm(),
        (&tav - &v.scale(lambda.conj())).frobenius_norm(),
    ))
}
