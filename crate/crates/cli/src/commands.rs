use std::path::{Path, PathBuf};

use spectra::abelian::{coefficient_energy, ell2_inner, FiniteAbelianGroup, GroupSignal};
use spectra::circle::{self, BuiltinFunction};
use spectra::format::{self, read_with};
use spectra::linalg::{eigen_residual, eigenpair, hermitian_defect, hermitian_eig_with, Matrix};
use spectra::riesz::{riesz_certify, Verdict as RieszVerdict};
use spectra::schur::schur_decompose_with;
use spectra::spectral::{is_normal, projection_residuals, spectral_decompose_seeded};
use spectra::validation;
use spectra::{Error, Tolerance};

use crate::{Command, Failure, GlobalArgs, RunReport};

type Outcome = Result<RunReport, Failure>;

const RECONSTRUCTION_TOL: f64 = 1e-10;
const UNITARITY_TOL: f64 = 1e-11;
const PROJECTION_TOL: f64 = 1e-10;
const SELF_ADJOINT_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-8;
const SPECTRAL_RECONSTRUCTION_TOL: f64 = 1e-9;
const TRANSFORM_TOL: f64 = 1e-12;
const SQUARE_ROOT_TOL: f64 = 1e-10;
const DEFAULT_GRID: usize = 64;

pub(crate) fn dispatch(command: &Command, global: &GlobalArgs, tol: &Tolerance) -> Outcome {
    match command {
        Command::Schur { input, method } => schur(input, (*method).into(), global, tol),
        Command::Eig { input } => eig(input, global, tol),
        Command::Spectral { input } => spectral(input, global, tol),
        Command::GroupDual { factors } => group_dual(factors),
        Command::GroupFt { input, inverse } => group_ft(input, *inverse, global),
        Command::Riesz { input, threshold } => riesz(input, *threshold),
        Command::CircleSeries {
            input,
            function,
            grid,
            nmax,
        } => circle_series(input.as_deref(), function.as_deref(), *grid, *nmax, global),
        Command::Selftest => selftest(global.seed),
    }
}

fn echo_globals(report: &mut RunReport, global: &GlobalArgs, tol: &Tolerance) {
    report.input("seed", global.seed);
    report.input("tol.abs", format::format_number(tol.abs));
    report.input("tol.rel", format::format_number(tol.rel));
}

/// `--out` if given, else the directory holding `input`.
fn output_dir(input: &Path, global: &GlobalArgs) -> Result<PathBuf, Failure> {
    let dir = match &global.out {
        Some(dir) => dir.clone(),
        None => match input.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        },
    };
    std::fs::create_dir_all(&dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    Ok(dir)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_matrix(input: &Path) -> Result<Matrix, Failure> {
    Ok(read_with(input, format::parse_matrix)?)
}

fn schur(input: &Path, method: spectra::schur::SchurMethod, global: &GlobalArgs, tol: &Tolerance) -> Outcome {
    let a = read_matrix(input)?;
    let f = schur_decompose_with(&a, tol, method, global.seed)?;
    let dir = output_dir(input, global)?;
    let (u_path, b_path) = (dir.join("u.mat"), dir.join("b.mat"));
    write_file(&u_path, &format::write_matrix(&f.u))?;
    write_file(&b_path, &format::write_matrix(&f.b))?;

    let mut r = RunReport::new("schur");
    r.input("file", input.display());
    r.input("method", format!("{method:?}").to_lowercase());
    echo_globals(&mut r, global, tol);
    r.input("u", u_path.display());
    r.input("b", b_path.display());

    let scale = f.source_norm.max(f64::MIN_POSITIVE);
    let residual = f.reconstruction_error(&a) / scale;
    let lower = f.b.strictly_lower_norm() / scale;
    r.metric("n", a.rows() as f64);
    r.metric("norm", f.source_norm);
    r.metric("residual", residual);
    r.metric("unitarity", f.unitarity_defect());
    r.metric("lower_mass", lower);
    for (k, z) in f.eigenvalues().iter().enumerate() {
        r.complex(&format!("eigenvalue.{k}"), *z);
    }
    r.at_most("residual", residual, RECONSTRUCTION_TOL);
    r.at_most("unitarity", f.unitarity_defect(), UNITARITY_TOL);
    r.at_most("lower_mass", lower, RECONSTRUCTION_TOL);
    Ok(r)
}

fn eig(input: &Path, global: &GlobalArgs, tol: &Tolerance) -> Outcome {
    let a = read_matrix(input)?;
    let (lambda, x) = eigenpair(&a, tol)?;
    let mut r = RunReport::new("eig");
    r.input("file", input.display());
    echo_globals(&mut r, global, tol);

    let residual = eigen_residual(&a, lambda, &x);
    r.complex("eigenvalue", lambda);
    for (k, z) in x.data().iter().enumerate() {
        r.complex(&format!("eigenvector.{k}"), *z);
    }
    r.metric("residual", residual);
    r.at_most("residual", residual, tol.bound(a.frobenius_norm()));

    let scale = a.frobenius_norm();
    if hermitian_defect(&a) <= tol.bound(scale) {
        let h = hermitian_eig_with(&a, tol)?;
        for (k, l) in h.eigenvalues.iter().enumerate() {
            r.metric(format!("hermitian.eigenvalue.{k}"), *l);
        }
        let recon = (&h.reconstruct() - &a).frobenius_norm();
        r.metric("hermitian.reconstruction", recon);
        r.at_most("hermitian.reconstruction", recon, 1e-11 * scale.max(1.0));
    }
    Ok(r)
}

fn spectral(input: &Path, global: &GlobalArgs, tol: &Tolerance) -> Outcome {
    let t = read_matrix(input)?;
    let check = is_normal(&t, tol)?;
    let d = spectral_decompose_seeded(&t, tol, global.seed)?;
    let mut r = RunReport::new("spectral");
    r.input("file", input.display());
    echo_globals(&mut r, global, tol);

    let scale = t.frobenius_norm().max(f64::MIN_POSITIVE);
    r.metric("n", d.dim() as f64);
    r.metric("normality_defect", check.defect);
    r.metric("cluster_radius", d.cluster_radius);
    r.metric("clusters", d.eigenvalues.len() as f64);
    for (k, (lambda, p)) in d.eigenvalues.iter().zip(&d.projections).enumerate() {
        let m = d.multiplicities[k];
        r.complex(&format!("eigenvalue.{k}"), *lambda);
        r.metric(format!("multiplicity.{k}"), m as f64);
        let res = projection_residuals(&t, p, m);
        r.metric(format!("projection.{k}.idempotence"), res.idempotence);
        r.metric(format!("projection.{k}.self_adjointness"), res.self_adjointness);
        r.metric(format!("projection.{k}.commutator"), res.commutator / scale);
        r.metric(format!("projection.{k}.trace_gap"), res.trace_gap);
        r.at_most(format!("projection.{k}.idempotence"), res.idempotence, PROJECTION_TOL);
        r.at_most(format!("projection.{k}.self_adjointness"), res.self_adjointness, SELF_ADJOINT_TOL);
        r.at_most(format!("projection.{k}.commutator"), res.commutator / scale, PROJECTION_TOL);
        r.at_most(format!("projection.{k}.trace_gap"), res.trace_gap, TRACE_TOL);
    }
    let recon = (&d.reconstruct() - &t).frobenius_norm() / scale;
    r.metric("reconstruction", recon);
    r.metric("resolution", d.resolution_defect());
    r.metric("orthogonality", d.max_cross_product());
    r.at_most("reconstruction", recon, SPECTRAL_RECONSTRUCTION_TOL);
    r.at_most("resolution", d.resolution_defect(), PROJECTION_TOL);
    r.at_most("orthogonality", d.max_cross_product(), PROJECTION_TOL);
    Ok(r)
}

fn coords_label(coords: &[u64]) -> String {
    let parts: Vec<String> = coords.iter().map(u64::to_string).collect();
    format!("({})", parts.join(", "))
}

fn group_dual(factors: &[u64]) -> Outcome {
    let g = FiniteAbelianGroup::new(factors.to_vec())?;
    let dual = g.dual_group()?;
    let mut r = RunReport::new("group-dual");
    r.input("factors", factors.iter().map(u64::to_string).collect::<Vec<_>>().join(","));

    let chars = dual
        .iter()
        .map(|m| g.character_signal(m))
        .collect::<Result<Vec<GroupSignal>, Error>>()?;
    let mut gram = 0.0;
    for (i, a) in chars.iter().enumerate() {
        for (j, b) in chars.iter().enumerate() {
            let expected = if i == j { 1.0 } else { 0.0 };
            gram += (ell2_inner(a, b)? - expected).norm_sqr();
        }
    }
    for (k, m) in dual.iter().enumerate() {
        r.entry(format!("character.{k}"), coords_label(m.coords()));
    }
    r.metric("order", g.order() as f64);
    r.metric("characters", dual.len() as f64);
    r.metric("character_gram_defect", gram.sqrt());
    r.at_most("dual_order_gap", (dual.len() as f64 - g.order() as f64).abs(), 0.0);
    r.at_most("character_gram_defect", gram.sqrt(), TRANSFORM_TOL);
    Ok(r)
}

fn group_ft(input: &Path, inverse: bool, global: &GlobalArgs) -> Outcome {
    let f = read_with(input, format::parse_group_signal)?;
    let g = f.group().clone();
    let (out, back) = if inverse {
        let out = g.inverse_transform(&f)?;
        let back = g.fourier_transform(&out)?;
        (out, back)
    } else {
        let out = g.fourier_transform(&f)?;
        let back = g.inverse_transform(&out)?;
        (out, back)
    };
    let dir = output_dir(input, global)?;
    let stem = input.file_stem().and_then(|s| s.to_str()).unwrap_or("signal");
    let path = dir.join(format!("{stem}.{}.sig", if inverse { "ift" } else { "ft" }));
    write_file(&path, &format::write_group_signal(&out))?;

    let mut r = RunReport::new("group-ft");
    r.input("file", input.display());
    r.input("direction", if inverse { "inverse" } else { "forward" });
    r.input("output", path.display());

    let (energy, coeffs) = if inverse {
        (out.norm_sqr(), coefficient_energy(&f))
    } else {
        (f.norm_sqr(), coefficient_energy(&out))
    };
    let gap = (energy - coeffs).abs() / energy.max(f64::MIN_POSITIVE);
    let round = back.max_distance(&f)?;
    r.metric("order", g.order() as f64);
    r.metric("signal_energy", energy);
    r.metric("coefficient_energy", coeffs);
    r.metric("plancherel_gap", gap);
    r.metric("round_trip", round);
    r.at_most("plancherel_gap", gap, TRANSFORM_TOL);
    r.at_most("round_trip", round, TRANSFORM_TOL);
    Ok(r)
}

fn riesz(input: &Path, threshold: f64) -> Outcome {
    let fam = read_with(input, format::parse_vector_family)?;
    let cert = riesz_certify(&fam, threshold)?;
    let mut r = RunReport::new("riesz");
    r.input("file", input.display());
    r.input("threshold", format::format_number(threshold));

    r.entry("verdict", cert.verdict.as_str());
    r.entry("complete_in_window", cert.complete_in_window().to_string());
    r.metric("window", cert.window as f64);
    r.metric("ambient_dim", fam.ambient_dim() as f64);
    r.metric("lower_bound_a", cert.lower_bound_a);
    r.metric("upper_bound_b", cert.upper_bound_b);
    r.metric("bessel_constant", cert.bessel_constant);
    r.metric("condition", cert.condition);
    r.metric("rank", cert.rank as f64);
    r.metric("synthesis_norm", cert.synthesis_norm());
    r.metric("pseudo_inverse_norm", cert.pseudo_inverse_norm());
    for (k, l) in cert.gram_eigenvalues.iter().enumerate() {
        r.metric(format!("gram_eigenvalue.{k}"), *l);
    }
    let root = (&(&cert.r_factor.adjoint() * &cert.r_factor) - &cert.gram).frobenius_norm();
    r.metric("square_root_residual", root);

    let ratio = if cert.upper_bound_b > 0.0 {
        cert.lower_bound_a / cert.upper_bound_b
    } else {
        0.0
    };
    r.metric("bound_ratio", ratio);
    r.exceeds("riesz_sequence", ratio, threshold);
    debug_assert_eq!(cert.verdict == RieszVerdict::RieszSequence, ratio > threshold);
    r.at_most("square_root_residual", root, SQUARE_ROOT_TOL * cert.gram.frobenius_norm().max(1.0));
    Ok(r)
}

fn circle_series(
    input: Option<&Path>,
    function: Option<&str>,
    grid: Option<usize>,
    nmax: Option<usize>,
    global: &GlobalArgs,
) -> Outcome {
    let mut r = RunReport::new("circle-series");
    let f = match (input, function) {
        (Some(path), _) => {
            let f = read_with(path, format::parse_circle_signal)?;
            r.input("file", path.display());
            if let Some(q) = grid {
                if q != f.quadrature_order() {
                    return Err(Error::GridMismatch {
                        left: q,
                        right: f.quadrature_order(),
                    }
                    .into());
                }
            }
            f
        }
        (None, Some(name)) => {
            let builtin: BuiltinFunction = name.parse()?;
            r.input("function", name);
            builtin.sample(grid.unwrap_or(DEFAULT_GRID))?
        }
        (None, None) => return Err(Error::Parse("no input file or --function given".into()).into()),
    };
    let q = f.quadrature_order();
    let n_max = nmax.unwrap_or((q - 1) / 2);
    r.input("grid", q);
    r.input("nmax", n_max);

    let series = circle::fourier_coefficients(&f, n_max)?;
    let approx = circle::partial_sum(&series, q)?;
    if let Some(dir) = &global.out {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
        let path = dir.join("partial_sum.sig");
        write_file(&path, &format::write_circle_signal(&approx))?;
        r.input("output", path.display());
    }

    for (n, c) in series.iter() {
        r.complex(&format!("coefficient.{n}"), c);
    }
    let energy = f.norm_sqr();
    let gap = circle::plancherel_gap(&f, n_max)?;
    r.metric("signal_energy", energy);
    r.metric("coefficient_energy", series.energy());
    r.metric("plancherel_gap", gap);
    r.metric("mean_square_error", circle::mean_square_error(&f, &approx)?);
    // Bessel: the window never carries more energy than the signal
    let excess = (series.energy() - energy) / energy.max(f64::MIN_POSITIVE);
    r.at_most("bessel_excess", excess, TRANSFORM_TOL);
    Ok(r)
}

fn slug(name: &str) -> String {
    let mut out = String::new();
    for ch in name.chars() {
        if ch.is_ascii_alphanumeric() {
            out.push(ch.to_ascii_lowercase());
        } else if !out.ends_with('_') && !out.is_empty() {
            out.push('_');
        }
    }
    out.trim_end_matches('_').to_string()
}

fn selftest(seed: u64) -> Outcome {
    let mut r = RunReport::new("selftest");
    r.input("seed", seed);
    for suite in validation::run_all(seed) {
        let status = if suite.passed() { "pass" } else { "fail" };
        r.entry(format!("suite.{}", suite.criterion), format!("{} {status}", suite.name));
        for check in &suite.checks {
            let key = format!("{}.{}", suite.name, slug(&check.name));
            r.metric(key.clone(), check.value);
            r.verdicts.push(crate::Verdict {
                name: key,
                passed: check.passed,
                value: check.value,
                threshold: check.threshold,
            });
        }
    }
    Ok(r)
}
