//! Seeded inputs shared by the benchmark targets.

use spectra::abelian::{FiniteAbelianGroup, GroupSignal};
use spectra::circle::CircleSignal;
use spectra::{random, Matrix};

pub const SEED: u64 = 0x5eed;

pub fn complex_matrix(n: usize) -> Matrix {
    random::complex_matrix(&mut random::rng(SEED ^ n as u64), n, n)
}

pub fn hermitian_matrix(n: usize) -> Matrix {
    random::hermitian(&mut random::rng(SEED ^ n as u64), n)
}

pub fn group_signal(factors: &[u64]) -> GroupSignal {
    let g = FiniteAbelianGroup::new(factors.to_vec()).expect("valid factors");
    let values = random::complex_vector(&mut random::rng(SEED), g.order());
    GroupSignal::new(g, values).expect("length matches order")
}

pub fn circle_signal(q: usize) -> CircleSignal {
    CircleSignal::new(random::complex_vector(&mut random::rng(SEED), q)).expect("q >= 1")
}
