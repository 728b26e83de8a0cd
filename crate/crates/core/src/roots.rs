use std::f64::consts::PI;

use crate::linalg::C64;

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// `exp(2 pi i k / n)`, evaluated from the reduced fraction `k / n` so that
/// equal rationals give bit-identical values. Quarter turns are exact.
pub(crate) fn root_of_unity(k: i128, n: u64) -> C64 {
    debug_assert!(n > 0);
    let n128 = n as i128;
    let k = k.rem_euclid(n128) as u64;
    let g = gcd(k, n).max(1);
    let (k, n) = (k / g, n / g);
    match (k, n) {
        (0, _) => C64::new(1.0, 0.0),
        (1, 2) => C64::new(-1.0, 0.0),
        (1, 4) => C64::new(0.0, 1.0),
        (3, 4) => C64::new(0.0, -1.0),
        _ => {
            // Reduce to the half-turn nearest zero for a symmetric error.
            let angle = if 2 * k > n {
                -2.0 * PI * ((n - k) as f64) / n as f64
            } else {
                2.0 * PI * (k as f64) / n as f64
            };
            let (s, c) = angle.sin_cos();
            C64::new(c, s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_turns_are_exact() {
        assert_eq!(root_of_unity(1, 4), C64::new(0.0, 1.0));
        assert_eq!(root_of_unity(2, 8), C64::new(0.0, 1.0));
        assert_eq!(root_of_unity(-1, 4), C64::new(0.0, -1.0));
        assert_eq!(root_of_unity(6, 6), C64::new(1.0, 0.0));
        assert_eq!(root_of_unity(3, 6), C64::new(-1.0, 0.0));
    }

    #[test]
    fn equal_fractions_agree_bitwise() {
        assert_eq!(root_of_unity(1, 3), root_of_unity(4, 12));
        assert_eq!(root_of_unity(5, 6), root_of_unity(-1, 6));
    }

    #[test]
    fn conjugate_symmetry() {
        for n in 2..40u64 {
            for k in 0..n as i128 {
                assert_eq!(root_of_unity(-k, n), root_of_unity(k, n).conj());
            }
        }
    }

    #[test]
    fn gcd_lcm() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(lcm(4, 6), 12);
    }
}
