//! Independent eigenvalue oracle: characteristic polynomial by the
//! Faddeev-LeVerrier recursion, roots by Durand-Kerner iteration. Shares no
//! code with the QR machinery it is used to check.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, C64};

pub const ORACLE_MAX_N: usize = 8;

const DK_MAX_ITER: usize = 5000;
const DK_RESIDUAL: f64 = 1e-10;

/// Coefficients `[c_0, c_1, ..., c_{n-1}, 1]` of `det(lambda I - A)`.
pub fn char_poly_coefficients(a: &Matrix) -> Result<Vec<C64>> {
    let n = a.ensure_square()?;
    if n > ORACLE_MAX_N {
        return Err(Error::OracleTooLarge { n, max: ORACLE_MAX_N });
    }
    let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
    coeffs[n] = C64::new(1.0, 0.0);
    // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a * &m;
        for i in 0..n {
            next[(i, i)] += coeffs[n - k + 1];
        }
        m = next;
        let am = a * &m;
        coeffs[n - k] = -am.trace() / k as f64;
    }
    Ok(coeffs)
}

fn horner(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn scale_at(coeffs: &[C64], z: C64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// Eigenvalues of a small matrix (`n <= 8`) as roots of its characteristic
/// polynomial.
pub fn char_poly_roots(a: &Matrix) -> Result<Vec<C64>> {
    let coeffs = char_poly_coefficients(a)?;
    let n = coeffs.len() - 1;
    if n == 1 {
        return Ok(vec![-coeffs[0]]);
    }
    // Cauchy bound on root moduli.
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    // start points spread on a circle, offset to avoid symmetric stagnation
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.25;
            C64::from_polar(0.5 * radius, angle)
        })
        .collect();

    for _ in 0..DK_MAX_ITER {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = C64::new(1e-300, 0.0);
            }
            let step = horner(&coeffs, z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step <= 1e-15 {
            break;
        }
    }

    let residual = z
        .iter()
        .map(|&zi| horner(&coeffs, zi).norm() / scale_at(&coeffs, zi))
        .fold(0.0, f64::max);
    if !(residual <= DK_RESIDUAL) {
        return Err(Error::RootsNoConvergence { residual });
    }
    Ok(z)
}

/// Bottleneck distance between two equal-size multisets of complex numbers:
/// the minimum over bijections of the largest matched gap.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let n = a.len();
    if n == 0 {
        return 0.0;
    }
    let dist: Vec<Vec<f64>> = a.iter().map(|x| b.iter().map(|y| (x - y).norm()).collect()).collect();
    let mut candidates: Vec<f64> = dist.iter().flatten().copied().collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching(&dist, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Kuhn's augmenting-path bipartite matching restricted to edges `<= limit`.
fn perfect_matching(dist: &[Vec<f64>], limit: f64) -> bool {
    let n = dist.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];

    fn augment(
        i: usize,
        dist: &[Vec<f64>],
        limit: f64,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for j in 0..dist.len() {
            if dist[i][j] <= limit && !seen[j] {
                seen[j] = true;
                if owner[j].map_or(true, |k| augment(k, dist, limit, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }

    (0..n).all(|i| {
        let mut seen = vec![false; n];
        augment(i, dist, limit, &mut seen, &mut owner)
    })
}
