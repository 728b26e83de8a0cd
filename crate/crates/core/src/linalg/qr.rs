//! Complex Hessenberg reduction and single-shift QR iteration.
//!
//! Together these produce a complex Schur form `A = Q T Q*` directly. The
//! eigenpair solver reads its answer off the first Schur vector, and the
//! `schur` module uses the full factorization as its large-`n` path.

use super::matrix::{Matrix, Tolerance, C64};
use crate::error::{Error, Result};

/// QR sweeps allowed per deflated eigenvalue before giving up.
const SWEEPS_PER_EIGENVALUE: usize = 60;
/// Sweeps without deflation before an exceptional shift is injected.
const EXCEPTIONAL_PERIOD: usize = 10;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Reduces `a` to upper Hessenberg form by Householder reflections.
/// Returns `(q, h)` with `q* a q = h`.
pub fn hessenberg(a: &Matrix) -> Result<(Matrix, Matrix)> {
    let n = a.ensure_square()?;
    let mut h = a.clone();
    let mut q = Matrix::identity(n);

    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let tail = x[1..].iter().map(|z| z.norm_sqr()).sum::<f64>();
        if xnorm == 0.0 || tail == 0.0 {
            continue;
        }
        let phase = if x[0] == ZERO { C64::new(1.0, 0.0) } else { x[0] / x[0].norm() };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= vnorm);

        // h <- P h, P = I - 2 v v*, acting on rows k+1..n
        for j in 0..n {
            let s: C64 = v.iter().enumerate().map(|(r, vr)| vr.conj() * h[(k + 1 + r, j)]).sum();
            for (r, vr) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= 2.0 * vr * s;
            }
        }
        // h <- h P, q <- q P, acting on columns k+1..n
        for m in [&mut h, &mut q] {
            for i in 0..n {
                let s: C64 = v.iter().enumerate().map(|(c, vc)| m[(i, k + 1 + c)] * vc).sum();
                for (c, vc) in v.iter().enumerate() {
                    m[(i, k + 1 + c)] -= 2.0 * s * vc.conj();
                }
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    Ok((q, h))
}

/// Rotation `G = [[c, s], [-conj(s), c]]` with real `c` that maps `(x, y)`
/// to `(r, 0)`.
#[derive(Debug, Clone, Copy)]
struct Givens {
    c: f64,
    s: C64,
}

impl Givens {
    fn zeroing(x: C64, y: C64) -> Self {
        let ny = y.norm();
        if ny == 0.0 {
            return Self { c: 1.0, s: ZERO };
        }
        let nx = x.norm();
        if nx == 0.0 {
            return Self { c: 0.0, s: y.conj() / ny };
        }
        let r = nx.hypot(ny);
        Self {
            c: nx / r,
            s: (x / nx) * y.conj() / r,
        }
    }

    /// Rows `(p, p+1)` <- G * rows, over columns `cols`.
    fn apply_left(&self, m: &mut Matrix, p: usize, cols: std::ops::Range<usize>) {
        for j in cols {
            let u = m[(p, j)];
            let w = m[(p + 1, j)];
            m[(p, j)] = self.c * u + self.s * w;
            m[(p + 1, j)] = -self.s.conj() * u + self.c * w;
        }
    }

    /// Columns `(p, p+1)` <- columns * G*, over rows `rows`.
    fn apply_right_adjoint(&self, m: &mut Matrix, p: usize, rows: std::ops::Range<usize>) {
        for i in rows {
            let u = m[(i, p)];
            let w = m[(i, p + 1)];
            m[(i, p)] = self.c * u + self.s.conj() * w;
            m[(i, p + 1)] = -self.s * u + self.c * w;
        }
    }
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let l1 = mid + disc;
    let l2 = mid - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn negligible(h: &Matrix, k: usize, tol: &Tolerance) -> bool {
    let scale = h[(k - 1, k - 1)].norm() + h[(k, k)].norm();
    h[(k, k - 1)].norm() <= f64::EPSILON * scale.max(tol.abs)
}

/// Runs shifted QR on an upper Hessenberg `h`, accumulating rotations into
/// `q`, until `h` is upper triangular. Subdiagonal entries are deflated once
/// `|h[k][k-1]| <= eps * (|h[k-1][k-1]| + |h[k][k]|)`, with `tol.abs` as the
/// scale floor when both neighbours vanish.
pub fn hessenberg_qr(h: &mut Matrix, q: &mut Matrix, tol: &Tolerance) -> Result<()> {
    let n = h.ensure_square()?;
    let budget = SWEEPS_PER_EIGENVALUE * n.max(1);
    let mut total = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n.saturating_sub(1);

    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            if negligible(h, lo, tol) {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }

        total += 1;
        since_deflation += 1;
        if total > budget || since_deflation > SWEEPS_PER_EIGENVALUE {
            return Err(Error::NoConvergence { iterations: total });
        }

        let shift = if since_deflation % EXCEPTIONAL_PERIOD == 0 {
            // Ad hoc shift to break cycles of the Wilkinson iteration.
            let sub = h[(hi, hi - 1)].norm();
            let turn = C64::from_polar(1.0, 0.37 * since_deflation as f64);
            h[(hi, hi)] + turn * (0.75 * sub)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        for k in lo..=hi {
            h[(k, k)] -= shift;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let g = Givens::zeroing(h[(k, k)], h[(k + 1, k)]);
            g.apply_left(h, k, k..n);
            h[(k + 1, k)] = ZERO;
            rotations.push(g);
        }
        for (offset, g) in rotations.iter().enumerate() {
            let k = lo + offset;
            g.apply_right_adjoint(h, k, 0..(k + 2).min(hi + 1));
            g.apply_right_adjoint(q, k, 0..n);
        }
        for k in lo..=hi {
            h[(k, k)] += shift;
        }
    }
    Ok(())
}

/// Complex Schur form via Hessenberg reduction and shifted QR: returns
/// `(q, t)` with `q` unitary, `t` upper triangular and `a = q t q*`.
pub fn schur_qr(a: &Matrix, tol: &Tolerance) -> Result<(Matrix, Matrix)> {
    let n = a.ensure_square()?;
    let (mut q, mut h) = hessenberg(a)?;
    hessenberg_qr(&mut h, &mut q, tol)?;
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok((q, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ortho::unitarity_defect;

    fn sample(n: usize) -> Matrix {
        Matrix::from_fn(n, n, |i, j| {
            let t = (i * 7 + j * 13) as f64;
            C64::new((t * 0.37).sin(), (t * 0.11 + 0.5).cos())
        })
    }

    #[test]
    fn hessenberg_similarity() {
        let a = sample(7);
        let (q, h) = hessenberg(&a).unwrap();
        assert!(unitarity_defect(&q) < 1e-13);
        for i in 2..7 {
            for j in 0..i - 1 {
                assert_eq!(h[(i, j)], ZERO);
            }
        }
        let back = &(&q * &h) * &q.adjoint();
        assert!((&back - &a).frobenius_norm() < 1e-13 * a.frobenius_norm());
    }

    #[test]
    fn qr_schur_reconstructs() {
        for n in [1, 2, 3, 9, 20] {
            let a = sample(n);
            let (q, t) = schur_qr(&a, &Tolerance::default()).unwrap();
            assert!(unitarity_defect(&q) < 1e-12);
            let back = &(&q * &t) * &q.adjoint();
            assert!((&back - &a).frobenius_norm() <= 1e-10 * a.frobenius_norm(), "n = {n}");
        }
    }

    #[test]
    fn givens_zeroes_second_component() {
        let g = Givens::zeroing(C64::new(1.0, 2.0), C64::new(-0.5, 3.0));
        let mut m = Matrix::column_vector(&[C64::new(1.0, 2.0), C64::new(-0.5, 3.0)]);
        g.apply_left(&mut m, 0, 0..1);
        assert!(m[(1, 0)].norm() < 1e-15);
        assert!((m[(0, 0)].norm() - (1.0f64 + 4.0 + 0.25 + 9.0).sqrt()).abs() < 1e-14);
    }
}
