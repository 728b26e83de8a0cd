//! Fourier analysis on the unit circle at quadrature scale.
//!
//! Signals are sampled at the `Q` grid points `w_k = exp(2 pi i k / Q)` and
//! Haar measure becomes the uniform weight `1/Q`, which integrates
//! trigonometric polynomials of degree `< Q` exactly. Coefficients follow
//! `c_n = <f, e_n>` so that `f = sum c_n e_n` for band-limited `f`.

use std::f64::consts::PI;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::roots::root_of_unity;

#[derive(Debug, Clone, PartialEq)]
pub struct CircleSignal {
    samples: Vec<C64>,
}

impl CircleSignal {
    pub fn new(samples: Vec<C64>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::dims("at least 2 samples", samples.len()));
        }
        if let Some(index) = samples.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { samples })
    }

    /// Samples a closed-form function of the angle `theta_k = 2 pi k / Q`.
    pub fn from_angle_fn(q: usize, f: impl Fn(f64) -> C64) -> Result<Self> {
        Self::new((0..q).map(|k| f(2.0 * PI * k as f64 / q as f64)).collect())
    }

    pub fn zeros(q: usize) -> Result<Self> {
        Self::new(vec![C64::new(0.0, 0.0); q])
    }

    pub fn quadrature_order(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    /// `|f|^2 = (1/Q) sum |f(w_k)|^2`
    pub fn norm_sqr(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.samples.len() as f64
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            samples: self.samples.iter().map(|z| z * c).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        same_grid(self, other)?;
        Ok(Self {
            samples: self.samples.iter().zip(&other.samples).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn max_distance(&self, other: &Self) -> Result<f64> {
        same_grid(self, other)?;
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

fn same_grid(a: &CircleSignal, b: &CircleSignal) -> Result<()> {
    if a.samples.len() != b.samples.len() {
        return Err(Error::GridMismatch {
            left: a.samples.len(),
            right: b.samples.len(),
        });
    }
    Ok(())
}

/// `e_n(w_k) = w_k^n`, evaluated as the exact phase `n k / Q`.
#[inline]
fn character_at(n: i64, k: usize, q: usize) -> C64 {
    root_of_unity(n as i128 * k as i128, q as u64)
}

/// `exp(2 pi i m / Q)` for `m` in `0..Q`; entry `(n k) mod Q` equals
/// `character_at(n, k, q)` bit for bit.
fn grid_roots(q: usize) -> Vec<C64> {
    (0..q).map(|m| root_of_unity(m as i128, q as u64)).collect()
}

fn phase_index(n: i64, k: usize, q: usize) -> usize {
    (n as i128 * k as i128).rem_euclid(q as i128) as usize
}

/// Coefficients `c_n` for `n in [-n_max, n_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSeries {
    n_max: usize,
    coefficients: Vec<C64>,
}

impl FourierSeries {
    pub fn new(n_max: usize, coefficients: Vec<C64>) -> Result<Self> {
        if coefficients.len() != 2 * n_max + 1 {
            return Err(Error::dims(
                format!("{} coefficients", 2 * n_max + 1),
                format!("{}", coefficients.len()),
            ));
        }
        Ok(Self { n_max, coefficients })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `c_n`, zero outside the window.
    pub fn coefficient(&self, n: i64) -> C64 {
        if n.unsigned_abs() as usize > self.n_max {
            return C64::new(0.0, 0.0);
        }
        self.coefficients[(n + self.n_max as i64) as usize]
    }

    /// `(n, c_n)` pairs in increasing `n`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        let offset = self.n_max as i64;
        self.coefficients.iter().enumerate().map(move |(i, &c)| (i as i64 - offset, c))
    }

    /// `sum |c_n|^2`
    pub fn energy(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// `(1/Q) sum_k s(w_k)`
pub fn haar_integral(s: &CircleSignal) -> C64 {
    s.samples.iter().sum::<C64>() / s.samples.len() as f64
}

/// `<f, g> = (1/Q) sum f conj(g)`
pub fn grid_inner(f: &CircleSignal, g: &CircleSignal) -> Result<C64> {
    same_grid(f, g)?;
    Ok(f.samples.iter().zip(&g.samples).map(|(a, b)| a * b.conj()).sum::<C64>()
        / f.samples.len() as f64)
}

/// Samples of the character `e_n(w) = w^n` on the `Q`-point grid.
pub fn char_sample(n: i64, q: usize) -> Result<CircleSignal> {
    if q < 2 {
        return Err(Error::dims("grid of at least 2 points", q));
    }
    Ok(CircleSignal {
        samples: (0..q).map(|k| character_at(n, k, q)).collect(),
    })
}

fn check_window(n_max: usize, q: usize) -> Result<()> {
    if 2 * n_max + 1 > q {
        return Err(Error::AliasingGuard { n_max, grid: q });
    }
    Ok(())
}

/// `c_n = (1/Q) sum_k f(w_k) conj(e_n(w_k))` for `|n| <= n_max`.
pub fn fourier_coefficients(s: &CircleSignal, n_max: usize) -> Result<FourierSeries> {
    let q = s.quadrature_order();
    check_window(n_max, q)?;
    let roots = grid_roots(q);
    let coefficients = (-(n_max as i64)..=n_max as i64)
        .map(|n| {
            s.samples
                .iter()
                .enumerate()
                .map(|(k, &f)| f * roots[phase_index(-n, k, q)])
                .sum::<C64>()
                / q as f64
        })
        .collect();
    Ok(FourierSeries { n_max, coefficients })
}

/// `sum_{|n| <= n_max} c_n e_n` on the `Q`-point grid.
pub fn partial_sum(series: &FourierSeries, q: usize) -> Result<CircleSignal> {
    check_window(series.n_max, q)?;
    let roots = grid_roots(q);
    let samples = (0..q)
        .map(|k| series.iter().map(|(n, c)| c * roots[phase_index(n, k, q)]).sum())
        .collect();
    CircleSignal::new(samples)
}

/// `(1/Q) sum |f - approx|^2`
pub fn mean_square_error(f: &CircleSignal, approx: &CircleSignal) -> Result<f64> {
    same_grid(f, approx)?;
    Ok(f.samples
        .iter()
        .zip(&approx.samples)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        / f.samples.len() as f64)
}

/// Rotation by the grid angle `2 pi j / Q`: `result[k] = s[(k + j) mod Q]`.
pub fn rotate(s: &CircleSignal, j: i64) -> CircleSignal {
    let q = s.quadrature_order();
    let shift = j.rem_euclid(q as i64) as usize;
    CircleSignal {
        samples: (0..q).map(|k| s.samples[(k + shift) % q]).collect(),
    }
}

/// Eigenvalue of [`rotate`] by `j` on `e_n`: `exp(2 pi i j n / Q)`.
pub fn rotation_eigenvalue(n: i64, j: i64, q: usize) -> C64 {
    root_of_unity(n as i128 * j as i128, q as u64)
}

/// `|f|^2 - sum_{|n| <= n_max} |c_n|^2`: nonnegative up to roundoff, and zero
/// for signals band-limited to the window.
pub fn plancherel_gap(s: &CircleSignal, n_max: usize) -> Result<f64> {
    let series = fourier_coefficients(s, n_max)?;
    Ok(s.norm_sqr() - series.energy())
}

/// Named test functions sampled on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BuiltinFunction {
    Constant,
    Character(i64),
    /// `(theta - pi) / pi` on `[0, 2 pi)`.
    Sawtooth,
    /// `+1` on `[0, pi)`, `-1` on `[pi, 2 pi)`.
    SquareWave,
}

impl BuiltinFunction {
    pub fn sample(&self, q: usize) -> Result<CircleSignal> {
        match *self {
            BuiltinFunction::Constant => CircleSignal::from_angle_fn(q, |_| C64::new(1.0, 0.0)),
            BuiltinFunction::Character(n) => char_sample(n, q),
            BuiltinFunction::Sawtooth => {
                CircleSignal::from_angle_fn(q, |t| C64::new((t - PI) / PI, 0.0))
            }
            BuiltinFunction::SquareWave => CircleSignal::new(
                (0..q)
                    .map(|k| C64::new(if 2 * k < q { 1.0 } else { -1.0 }, 0.0))
                    .collect(),
            ),
        }
    }
}

impl FromStr for BuiltinFunction {
    type Err = Error;

    /// `constant`, `character:N`, `sawtooth`, `square-wave`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constant" => Ok(Self::Constant),
            "sawtooth" => Ok(Self::Sawtooth),
            "square-wave" | "square" => Ok(Self::SquareWave),
            other => match other.strip_prefix("character:") {
                Some(n) => n
                    .parse()
                    .map(Self::Character)
                    .map_err(|_| Error::Parse(format!("bad character index `{n}`"))),
                None => Err(Error::Parse(format!("unknown built-in function `{other}`"))),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn integral_examples() {
        let one = BuiltinFunction::Constant.sample(8).unwrap();
        assert_eq!(haar_integral(&one), c(1.0, 0.0));
        assert!(haar_integral(&char_sample(1, 8).unwrap()).norm() < 1e-15);
        assert_eq!(haar_integral(&char_sample(8, 8).unwrap()), c(1.0, 0.0));
    }

    #[test]
    fn char_sample_examples() {
        assert!(char_sample(0, 5).unwrap().samples().iter().all(|z| *z == c(1.0, 0.0)));
        assert_eq!(
            char_sample(1, 4).unwrap().samples(),
            &[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]
        );
        let plus = char_sample(1, 9).unwrap();
        let minus = char_sample(-1, 9).unwrap();
        for (a, b) in plus.samples().iter().zip(minus.samples()) {
            assert_eq!(*b, a.conj());
        }
    }

    #[test]
    fn coefficient_examples() {
        let s = fourier_coefficients(&char_sample(3, 16).unwrap(), 5).unwrap();
        for (n, cn) in s.iter() {
            let expected = if n == 3 { 1.0 } else { 0.0 };
            assert!((cn - c(expected, 0.0)).norm() < 1e-13);
        }

        let f = char_sample(1, 32)
            .unwrap()
            .scale(c(2.0, 0.0))
            .try_add(&char_sample(-2, 32).unwrap().scale(c(3.0, 0.0)))
            .unwrap();
        let s = fourier_coefficients(&f, 4).unwrap();
        assert!((s.coefficient(1) - c(2.0, 0.0)).norm() < 1e-13);
        assert!((s.coefficient(-2) - c(3.0, 0.0)).norm() < 1e-13);
        assert!(s.coefficient(0).norm() < 1e-13);
    }

    #[test]
    fn aliasing_guard() {
        let s = char_sample(0, 8).unwrap();
        assert!(fourier_coefficients(&s, 3).is_ok());
        assert_eq!(
            fourier_coefficients(&s, 4),
            Err(Error::AliasingGuard { n_max: 4, grid: 8 })
        );
    }

    #[test]
    fn partial_sum_examples() {
        let f = char_sample(2, 16).unwrap().try_add(&char_sample(-1, 16).unwrap()).unwrap();
        let s = fourier_coefficients(&f, 3).unwrap();
        let back = partial_sum(&s, 16).unwrap();
        assert!(mean_square_error(&f, &back).unwrap() <= 1e-13);

        let saw = BuiltinFunction::Sawtooth.sample(64).unwrap();
        let mean = haar_integral(&saw);
        let zero_mean = saw.try_add(&CircleSignal::new(vec![-mean; 64]).unwrap()).unwrap();
        let s0 = fourier_coefficients(&zero_mean, 0).unwrap();
        let err = mean_square_error(&zero_mean, &partial_sum(&s0, 64).unwrap()).unwrap();
        assert!((err - zero_mean.norm_sqr()).abs() < 1e-14);

        let errs: Vec<f64> = [1, 2, 4, 8]
            .iter()
            .map(|&n| {
                let s = fourier_coefficients(&saw, n).unwrap();
                mean_square_error(&saw, &partial_sum(&s, 64).unwrap()).unwrap()
            })
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");

        assert!(matches!(
            mean_square_error(&saw, &char_sample(0, 8).unwrap()),
            Err(Error::GridMismatch { .. })
        ));
    }

    #[test]
    fn rotate_examples() {
        let e1 = char_sample(1, 8).unwrap();
        assert_eq!(rotate(&e1, 0), e1);
        let r = rotate(&e1, 2);
        assert!(r.max_distance(&e1.scale(c(0.0, 1.0))).unwrap() < 1e-15);
        let saw = BuiltinFunction::Sawtooth.sample(10).unwrap();
        assert_eq!(rotate(&rotate(&saw, 3), 3), rotate(&saw, 6));
        assert_eq!(rotate(&saw, -1), rotate(&saw, 9));
    }

    #[test]
    fn plancherel_examples() {
        let f = char_sample(2, 16).unwrap().try_add(&char_sample(-2, 16).unwrap()).unwrap();
        assert!((f.norm_sqr() - 2.0).abs() < 1e-13);
        assert!(plancherel_gap(&f, 3).unwrap().abs() <= 1e-13);
        assert_eq!(plancherel_gap(&CircleSignal::zeros(8).unwrap(), 2).unwrap(), 0.0);
        let e5 = char_sample(5, 16).unwrap();
        assert!((plancherel_gap(&e5, 3).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn builtin_parsing() {
        assert_eq!("character:-3".parse::<BuiltinFunction>().unwrap(), BuiltinFunction::Character(-3));
        assert_eq!("square-wave".parse::<BuiltinFunction>().unwrap(), BuiltinFunction::SquareWave);
        assert!("triangle".parse::<BuiltinFunction>().is_err());
    }
}
