use proptest::prelude::*;
use spectra::abelian::{coefficient_energy, ell2_inner, FiniteAbelianGroup, GroupSignal};
use spectra::circle::{fourier_coefficients, grid_inner, partial_sum, rotate, CircleSignal};
use spectra::linalg::{
    eigen_residual, eigenpair, extend_to_unitary, hermitian_eig, unitarity_defect,
};
use spectra::random;
use spectra::riesz::{frame_bounds, gram_matrix, riesz_certify, synthesis_operator, VectorFamily};
use spectra::schur::{schur_decompose, schur_decompose_with, SchurMethod};
use spectra::{Matrix, Tolerance, C64};

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn unitary_completion_keeps_first_column(seed in any::<u64>(), n in 1usize..12) {
        let mut rng = random::rng(seed);
        let x = Matrix::column_vector(&random::complex_vector(&mut rng, n));
        let v = extend_to_unitary(&x).unwrap();
        prop_assert!(unitarity_defect(&v) <= 1e-12);
        let unit = x.scale(C64::new(1.0 / x.frobenius_norm(), 0.0));
        prop_assert!((&v.column(0) - &unit).frobenius_norm() <= 1e-12);
    }

    #[test]
    fn eigenpair_residual_is_small(seed in any::<u64>(), n in 1usize..=16) {
        let mut rng = random::rng(seed);
        let a = random::complex_matrix(&mut rng, n, n);
        let tol = Tolerance::default();
        let (lambda, x) = eigenpair(&a, &tol).unwrap();
        prop_assert!((x.frobenius_norm() - 1.0).abs() <= 1e-12);
        prop_assert!(eigen_residual(&a, lambda, &x) <= tol.bound(a.frobenius_norm()));
    }

    #[test]
    fn hermitian_reconstruction(seed in any::<u64>(), n in 1usize..16) {
        let mut rng = random::rng(seed);
        let h = random::hermitian(&mut rng, n);
        let e = hermitian_eig(&h).unwrap();
        prop_assert!(unitarity_defect(&e.eigenvectors) <= 1e-12);
        prop_assert!((&e.reconstruct() - &h).frobenius_norm() <= 1e-11 * h.frobenius_norm());
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn schur_paths_agree(seed in any::<u64>(), n in 2usize..=16) {
        let mut rng = random::rng(seed);
        let a = random::complex_matrix(&mut rng, n, n);
        let tol = Tolerance::default();
        let d = schur_decompose_with(&a, &tol, SchurMethod::Deflation, seed).unwrap();
        let q = schur_decompose_with(&a, &tol, SchurMethod::Qr, seed).unwrap();
        for f in [&d, &q] {
            prop_assert!(f.reconstruction_error(&a) <= 1e-10 * a.frobenius_norm());
            prop_assert!(f.unitarity_defect() <= 1e-11);
            prop_assert_eq!(f.b.strictly_lower_norm(), 0.0);
        }
        let dist = spectra::schur::multiset_distance(&d.eigenvalues(), &q.eigenvalues());
        prop_assert!(dist <= 1e-8 * a.frobenius_norm());
    }

    #[test]
    fn schur_of_triangular_stays_triangular(seed in any::<u64>(), n in 2usize..10) {
        let mut rng = random::rng(seed);
        let b = schur_decompose(&random::complex_matrix(&mut rng, n, n), &Tolerance::default())
            .unwrap()
            .b;
        let again = schur_decompose(&b, &Tolerance::default()).unwrap();
        prop_assert!(again.b.strictly_lower_norm() <= 1e-10 * b.frobenius_norm());
        let dist = spectra::schur::multiset_distance(&again.eigenvalues(), &b.diagonal());
        prop_assert!(dist <= 1e-9 * b.frobenius_norm());
    }

    #[test]
    fn gram_quadratic_form(seed in any::<u64>(), d in 1usize..10, extra in 0usize..4) {
        let mut rng = random::rng(seed);
        let n = d.saturating_sub(extra).max(1);
        let vectors: Vec<Vec<C64>> = (0..n).map(|_| random::complex_vector(&mut rng, d)).collect();
        let fam = VectorFamily::from_slices(d, &vectors).unwrap();
        let g = gram_matrix(&fam);
        let u = synthesis_operator(&fam, None).unwrap();
        prop_assert!((&(&u.adjoint() * &u) - &g).frobenius_norm() <= 1e-12 * (1.0 + g.frobenius_norm()));

        let c = Matrix::column_vector(&random::complex_vector(&mut rng, n));
        let lhs = fam.combine(c.data()).unwrap().frobenius_norm().powi(2);
        let rhs = (&(&c.adjoint() * &g) * &c)[(0, 0)];
        prop_assert!((lhs - rhs.re).abs() <= 1e-10 * lhs.max(1.0));
        prop_assert!(rhs.im.abs() <= 1e-10 * lhs.max(1.0));

        let (a, b) = frame_bounds(&fam);
        let energy = c.frobenius_norm().powi(2);
        prop_assert!(lhs >= a * energy * (1.0 - 1e-10) - 1e-12);
        prop_assert!(lhs <= b * energy * (1.0 + 1e-10) + 1e-12);
    }

    #[test]
    fn certificate_square_root(seed in any::<u64>(), d in 1usize..9) {
        let mut rng = random::rng(seed);
        let vectors: Vec<Vec<C64>> = (0..d).map(|_| random::complex_vector(&mut rng, d)).collect();
        let fam = VectorFamily::from_slices(d, &vectors).unwrap();
        let cert = riesz_certify(&fam, 1e-8).unwrap();
        let rr = &cert.r_factor.adjoint() * &cert.r_factor;
        prop_assert!((&rr - &cert.gram).frobenius_norm() <= 1e-10 * (1.0 + cert.gram.frobenius_norm()));
        prop_assert!((cert.bessel_constant - cert.upper_bound_b).abs() <= 1e-10 * cert.upper_bound_b.max(1.0));
    }

    #[test]
    fn group_plancherel(seed in any::<u64>(), factors in prop::collection::vec(2u64..6, 0..3)) {
        let g = FiniteAbelianGroup::new(factors).unwrap();
        let mut rng = random::rng(seed);
        let f = GroupSignal::new(g.clone(), random::complex_vector(&mut rng, g.order())).unwrap();
        let h = GroupSignal::new(g.clone(), random::complex_vector(&mut rng, g.order())).unwrap();
        let fhat = g.fourier_transform(&f).unwrap();
        let energy = f.norm_sqr();
        prop_assert!((energy - coefficient_energy(&fhat)).abs() <= 1e-12 * energy);
        prop_assert!(g.inverse_transform(&fhat).unwrap().max_distance(&f).unwrap() <= 1e-12);

        // translation is unitary for the normalized inner product
        let a = g.element_at((seed % g.order() as u64) as usize);
        let tf = g.translate(&a, &f).unwrap();
        let th = g.translate(&a, &h).unwrap();
        let before = ell2_inner(&f, &h).unwrap();
        let after = ell2_inner(&tf, &th).unwrap();
        prop_assert!((before - after).norm() <= 1e-12 * (1.0 + before.norm()));
    }

    #[test]
    fn circle_band_limited_round_trip(seed in any::<u64>(), n_max in 0usize..10, extra in 1usize..20) {
        let q = (2 * n_max + extra).max(2);
        let mut rng = random::rng(seed);
        let coeffs = random::complex_vector(&mut rng, 2 * n_max + 1);
        let series = spectra::circle::FourierSeries::new(n_max, coeffs).unwrap();
        let f = partial_sum(&series, q).unwrap();
        let back = fourier_coefficients(&f, n_max).unwrap();
        for (n, c) in series.iter() {
            prop_assert!((back.coefficient(n) - c).norm() <= 1e-13);
        }
        let j = (seed % 7) as i64 - 3;
        let g = rotate(&f, j);
        prop_assert!((grid_inner(&g, &g).unwrap() - grid_inner(&f, &f).unwrap()).norm() <= 1e-12 * f.norm_sqr().max(1.0));
        prop_assert_eq!(rotate(&g, -j), CircleSignal::new(f.samples().to_vec()).unwrap());
    }
}
