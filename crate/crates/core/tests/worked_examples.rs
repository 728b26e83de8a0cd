//! Small cases with answers known in closed form.

use spectra::circle::{fourier_coefficients, BuiltinFunction};
use spectra::linalg::{unitarity_defect, Matrix};
use spectra::random;
use spectra::riesz::{riesz_certify, transfer_operator, VectorFamily, Verdict};
use spectra::schur::{char_poly_roots, multiset_distance};
use spectra::spectral::{projection_onto_span, spectral_decompose};
use spectra::{Error, Tolerance, C64};

fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn cyclic_shift(n: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, j| if (j + 1) % n == i { r(1.0) } else { r(0.0) })
}

#[test]
fn cyclic_shift_has_fourth_roots_of_unity() {
    let t = cyclic_shift(4);
    let d = spectral_decompose(&t, &Tolerance::default()).unwrap();
    assert_eq!(d.multiplicities, vec![1, 1, 1, 1]);
    let oracle = char_poly_roots(&t).unwrap();
    let expected = [r(1.0), r(-1.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0)];
    assert!(multiset_distance(&oracle, &expected) < 1e-10);
    assert!(multiset_distance(&d.eigenvalues, &expected) < 1e-10);
    assert!((&d.reconstruct() - &t).frobenius_norm() < 1e-9 * t.frobenius_norm());
}

#[test]
fn repeated_eigenvalue_keeps_multiplicity() {
    let mut rng = random::rng(11);
    let v = random::unitary(&mut rng, 3);
    let t = &(&v * &Matrix::from_diag(&[r(3.0), r(3.0), r(-1.0)])) * &v.adjoint();
    let d = spectral_decompose(&t, &Tolerance::default()).unwrap();
    let mut pairs: Vec<(f64, usize)> =
        d.eigenvalues.iter().zip(&d.multiplicities).map(|(l, &m)| (l.re, m)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    assert_eq!(pairs.len(), 2);
    assert!((pairs[0].0 + 1.0).abs() < 1e-10 && pairs[0].1 == 1);
    assert!((pairs[1].0 - 3.0).abs() < 1e-10 && pairs[1].1 == 2);
    assert!((&d.reconstruct() - &t).frobenius_norm() <= 1e-9 * t.frobenius_norm());
    assert!(unitarity_defect(&d.eigenbasis) < 1e-10);
}

#[test]
fn nilpotent_block_is_rejected() {
    let t = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
    assert!(matches!(
        spectral_decompose(&t, &Tolerance::default()),
        Err(Error::NotNormal { .. })
    ));
}

#[test]
fn projection_lattice() {
    let e = |i| Matrix::basis_vector(4, i);
    let p = |vs: &[Matrix]| projection_onto_span(vs).unwrap();
    let cases = [
        // nested: U = span{e0, e1, e2}, W = span{e1}
        (p(&[e(0), e(1), e(2)]), p(&[e(1)]), p(&[e(1)])),
        // overlapping: U = span{e0, e1}, W = span{e1, e2}
        (p(&[e(0), e(1)]), p(&[e(1), e(2)]), p(&[e(1)])),
        // orthogonal: intersection is {0}
        (p(&[e(0)]), p(&[e(3)]), Matrix::zeros(4, 4)),
    ];
    for (pu, pw, meet) in &cases {
        assert!((&(pu * pw) - meet).frobenius_norm() < 1e-10);
        assert!((&(pw * pu) - meet).frobenius_norm() < 1e-10);
    }
}

#[test]
fn adjacent_sum_windows() {
    for n in [2usize, 5, 16, 32] {
        let cert = riesz_certify(&VectorFamily::adjacent_sums(n), 1e-8).unwrap();
        let a = 2.0 + 2.0 * (n as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
        let b = 2.0 + 2.0 * (std::f64::consts::PI / (n as f64 + 1.0)).cos();
        assert!((cert.lower_bound_a - a).abs() < 1e-9, "N = {n}");
        assert!((cert.upper_bound_b - b).abs() < 1e-9, "N = {n}");
        assert_eq!(cert.verdict, Verdict::RieszSequence);
        assert!(cert.complete_in_window());
    }
}

#[test]
fn transfer_operator_norm_is_bounded_by_frame_ratio() {
    // |T| <= sqrt(B_to / A_from) for the operator carrying x_n to y_n
    let mut rng = random::rng(5);
    for (d, n) in [(4, 4), (6, 3), (9, 7)] {
        let draw = |rng: &mut _| {
            let vs: Vec<Vec<C64>> = (0..n).map(|_| random::complex_vector(rng, d)).collect();
            VectorFamily::from_slices(d, &vs).unwrap()
        };
        let from = draw(&mut rng);
        let to = draw(&mut rng);
        let t = transfer_operator(&from, &to).unwrap();
        for (x, y) in from.vectors().iter().zip(to.vectors()) {
            assert!((&(&t * x) - y).frobenius_norm() < 1e-9 * (1.0 + y.frobenius_norm()));
        }
        let a_from = riesz_certify(&from, 1e-8).unwrap().lower_bound_a;
        let b_to = riesz_certify(&to, 1e-8).unwrap().upper_bound_b;
        let norm = spectra::linalg::operator_norm_est(&t);
        assert!(norm <= (b_to / a_from).sqrt() * (1.0 + 1e-9));
    }
}

#[test]
fn sawtooth_coefficients_decay_like_one_over_n() {
    let q = 512;
    let saw = BuiltinFunction::Sawtooth.sample(q).unwrap();
    let s = fourier_coefficients(&saw, 20).unwrap();
    // (t - pi) / pi has c_n = i / (pi n), up to discretization error
    for n in [1i64, 2, 5, -7, 20] {
        let expected = 1.0 / (std::f64::consts::PI * n.unsigned_abs() as f64);
        assert!((s.coefficient(n).norm() - expected).abs() < 5e-3 * expected, "n = {n}");
    }
}
