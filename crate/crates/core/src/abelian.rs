//! Finite abelian groups given as explicit products of cyclic groups
//! `Z_{N_1} x ... x Z_{N_k}`, their characters, and the Fourier transform on
//! `l2(G)` with the normalized inner product `<f, g> = |G|^-1 sum f conj(g)`.
//!
//! Elements and character indices are coordinate vectors reduced mod `N_i`,
//! enumerated lexicographically (last coordinate fastest). The group law is
//! written additively per coordinate. The character indexed by `m` is
//! `zeta_m(a) = exp(2 pi i sum_i m_i a_i / N_i)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::roots::{lcm, root_of_unity};

pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;
pub const DEFAULT_TRANSFORM_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<u64>);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharacterIndex(pub Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl CharacterIndex {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
    order: usize,
    exponent: u64,
    enumeration_cap: usize,
    transform_cap: usize,
}

impl FiniteAbelianGroup {
    /// Product of cyclic groups of the given orders; an empty list is the
    /// trivial group.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        Self::with_caps(factors, DEFAULT_ENUMERATION_CAP, DEFAULT_TRANSFORM_CAP)
    }

    pub fn with_caps(factors: Vec<u64>, enumeration_cap: usize, transform_cap: usize) -> Result<Self> {
        if let Some(&order) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidOrder { order });
        }
        let mut order: usize = 1;
        for &n in &factors {
            order = order
                .checked_mul(n as usize)
                .filter(|&o| o <= enumeration_cap)
                .ok_or(Error::CapExceeded {
                    order: order.saturating_mul(n as usize),
                    cap: enumeration_cap,
                })?;
        }
        let exponent = factors.iter().fold(1, |acc, &n| lcm(acc, n));
        Ok(Self {
            factors,
            order,
            exponent,
            enumeration_cap,
            transform_cap,
        })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn trivial() -> Self {
        Self::new(Vec::new()).expect("trivial group is always valid")
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// `G x H`, factors concatenated.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Self::with_caps(factors, self.enumeration_cap, self.transform_cap)
    }

    fn check_coords(&self, coords: &[u64]) -> Result<()> {
        if coords.len() != self.factors.len() {
            return Err(Error::dims(
                format!("{} coordinates", self.factors.len()),
                format!("{} coordinates", coords.len()),
            ));
        }
        for (&value, &order) in coords.iter().zip(&self.factors) {
            if value >= order {
                return Err(Error::InvalidCoordinate { value, order });
            }
        }
        Ok(())
    }

    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement> {
        self.check_coords(&coords)?;
        Ok(GroupElement(coords))
    }

    pub fn character(&self, coords: Vec<u64>) -> Result<CharacterIndex> {
        self.check_coords(&coords)?;
        Ok(CharacterIndex(coords))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.factors.len()])
    }

    pub fn trivial_character(&self) -> CharacterIndex {
        CharacterIndex(vec![0; self.factors.len()])
    }

    fn coords_at(&self, mut index: usize) -> Vec<u64> {
        let mut coords = vec![0; self.factors.len()];
        for (c, &n) in coords.iter_mut().zip(&self.factors).rev() {
            *c = (index % n as usize) as u64;
            index /= n as usize;
        }
        coords
    }

    fn index_of_coords(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    /// Element at lexicographic position `index`.
    pub fn element_at(&self, index: usize) -> GroupElement {
        assert!(index < self.order, "element index out of range");
        GroupElement(self.coords_at(index))
    }

    pub fn index_of(&self, a: &GroupElement) -> Result<usize> {
        self.check_coords(&a.0)?;
        Ok(self.index_of_coords(&a.0))
    }

    pub fn character_position(&self, m: &CharacterIndex) -> Result<usize> {
        self.check_coords(&m.0)?;
        Ok(self.index_of_coords(&m.0))
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        self.ensure_enumerable()?;
        Ok((0..self.order).map(|i| self.element_at(i)).collect())
    }

    fn ensure_enumerable(&self) -> Result<()> {
        if self.order > self.enumeration_cap {
            return Err(Error::CapExceeded {
                order: self.order,
                cap: self.enumeration_cap,
            });
        }
        Ok(())
    }

    fn ensure_transformable(&self) -> Result<()> {
        if self.order > self.transform_cap {
            return Err(Error::CapExceeded {
                order: self.order,
                cap: self.transform_cap,
            });
        }
        Ok(())
    }

    /// `a + b`, componentwise mod `N_i`.
    pub fn group_op(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_coords(&a.0)?;
        self.check_coords(&b.0)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        ))
    }

    pub fn group_inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_coords(&a.0)?;
        Ok(GroupElement(
            a.0.iter().zip(&self.factors).map(|(&x, &n)| (n - x) % n).collect(),
        ))
    }

    /// Numerator `k` of the phase `k / L` with `L` the group exponent.
    fn phase(&self, m: &[u64], a: &[u64]) -> u64 {
        let l = self.exponent as u128;
        let k = m
            .iter()
            .zip(a)
            .zip(&self.factors)
            .map(|((&mi, &ai), &n)| (mi as u128 * ai as u128 % n as u128) * (l / n as u128))
            .sum::<u128>();
        (k % l) as u64
    }

    /// `zeta_m(a) = exp(2 pi i sum m_i a_i / N_i)`. The phase is reduced as an
    /// exact fraction first, so equal phases give bit-identical values.
    pub fn character_eval(&self, m: &CharacterIndex, a: &GroupElement) -> Result<C64> {
        self.check_coords(&m.0)?;
        self.check_coords(&a.0)?;
        Ok(root_of_unity(self.phase(&m.0, &a.0) as i128, self.exponent))
    }

    /// The full dual group as character indices in lexicographic order.
    pub fn dual_group(&self) -> Result<Vec<CharacterIndex>> {
        self.ensure_enumerable()?;
        Ok((0..self.order).map(|i| CharacterIndex(self.coords_at(i))).collect())
    }

    /// Index of the pointwise product `zeta_m * zeta_k`.
    pub fn character_product(&self, m: &CharacterIndex, k: &CharacterIndex) -> Result<CharacterIndex> {
        let sum = self.group_op(&GroupElement(m.0.clone()), &GroupElement(k.0.clone()))?;
        Ok(CharacterIndex(sum.0))
    }

    /// `zeta_m` as a signal on the group.
    pub fn character_signal(&self, m: &CharacterIndex) -> Result<GroupSignal> {
        self.check_coords(&m.0)?;
        self.ensure_enumerable()?;
        let values = (0..self.order)
            .map(|i| root_of_unity(self.phase(&m.0, &self.coords_at(i)) as i128, self.exponent))
            .collect();
        Ok(GroupSignal {
            group: self.clone(),
            values,
        })
    }

    /// `|G| x |G|` phase numerators, row `m`, column `a`.
    fn phase_table(&self) -> Vec<u64> {
        let coords: Vec<Vec<u64>> = (0..self.order).map(|i| self.coords_at(i)).collect();
        let mut table = Vec::with_capacity(self.order * self.order);
        for m in &coords {
            for a in &coords {
                table.push(self.phase(m, a));
            }
        }
        table
    }

    fn root_table(&self) -> Vec<C64> {
        (0..self.exponent).map(|k| root_of_unity(k as i128, self.exponent)).collect()
    }

    /// `f^(zeta_m) = <f, zeta_m>` for every character, by direct summation.
    pub fn fourier_transform(&self, f: &GroupSignal) -> Result<GroupSignal> {
        self.ensure_same(&f.group)?;
        self.ensure_transformable()?;
        let n = self.order;
        let phases = self.phase_table();
        let roots = self.root_table();
        let scale = 1.0 / n as f64;
        let values = (0..n)
            .map(|m| {
                let row = &phases[m * n..(m + 1) * n];
                row.iter()
                    .zip(&f.values)
                    .map(|(&k, &fa)| fa * roots[k as usize].conj())
                    .sum::<C64>()
                    * scale
            })
            .collect();
        Ok(GroupSignal {
            group: self.clone(),
            values,
        })
    }

    /// `f(a) = sum_m fhat(m) zeta_m(a)`.
    pub fn inverse_transform(&self, fhat: &GroupSignal) -> Result<GroupSignal> {
        self.ensure_same(&fhat.group)?;
        self.ensure_transformable()?;
        let n = self.order;
        let phases = self.phase_table();
        let roots = self.root_table();
        let values = (0..n)
            .map(|a| {
                (0..n)
                    .map(|m| fhat.values[m] * roots[phases[m * n + a] as usize])
                    .sum::<C64>()
            })
            .collect();
        Ok(GroupSignal {
            group: self.clone(),
            values,
        })
    }

    /// `(T_a f)(x) = f(a + x)`.
    pub fn translate(&self, a: &GroupElement, f: &GroupSignal) -> Result<GroupSignal> {
        self.ensure_same(&f.group)?;
        self.check_coords(&a.0)?;
        let values = (0..self.order)
            .map(|i| {
                let x = self.coords_at(i);
                let shifted: Vec<u64> = x
                    .iter()
                    .zip(&a.0)
                    .zip(&self.factors)
                    .map(|((&xi, &ai), &n)| (xi + ai) % n)
                    .collect();
                f.values[self.index_of_coords(&shifted)]
            })
            .collect();
        Ok(GroupSignal {
            group: self.clone(),
            values,
        })
    }

    fn ensure_same(&self, other: &FiniteAbelianGroup) -> Result<()> {
        if self.factors != other.factors {
            return Err(Error::dims(
                format!("group {:?}", self.factors),
                format!("group {:?}", other.factors),
            ));
        }
        Ok(())
    }
}

/// A complex function on a finite abelian group, values in lexicographic
/// element order. Transforms reuse the type with character-index order.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSignal {
    group: FiniteAbelianGroup,
    values: Vec<C64>,
}

impl GroupSignal {
    pub fn new(group: FiniteAbelianGroup, values: Vec<C64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::dims(
                format!("{} values", group.order()),
                format!("{} values", values.len()),
            ));
        }
        if let Some(index) = values.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { group, values })
    }

    pub fn zeros(group: &FiniteAbelianGroup) -> Self {
        Self {
            values: vec![C64::new(0.0, 0.0); group.order()],
            group: group.clone(),
        }
    }

    pub fn constant(group: &FiniteAbelianGroup, c: C64) -> Self {
        Self {
            values: vec![c; group.order()],
            group: group.clone(),
        }
    }

    /// Indicator of a single element.
    pub fn delta(group: &FiniteAbelianGroup, a: &GroupElement) -> Result<Self> {
        let mut s = Self::zeros(group);
        let i = group.index_of(a)?;
        s.values[i] = C64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// `|f|^2 = <f, f>` under the normalized inner product.
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.values.len() as f64
    }

    /// Largest pointwise gap to another signal on the same group.
    pub fn max_distance(&self, other: &GroupSignal) -> Result<f64> {
        self.group.ensure_same(&other.group)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// `<f, g> = |G|^-1 sum_a f(a) conj(g(a))`.
pub fn ell2_inner(f: &GroupSignal, g: &GroupSignal) -> Result<C64> {
    f.group.ensure_same(&g.group)?;
    let sum: C64 = f.values.iter().zip(&g.values).map(|(a, b)| a * b.conj()).sum();
    Ok(sum / f.values.len() as f64)
}

/// `sum |fhat|^2` over a transform, the unnormalized coefficient energy.
pub fn coefficient_energy(fhat: &GroupSignal) -> f64 {
    fhat.values.iter().map(|z| z.norm_sqr()).sum()
}

/// The isomorphism `(G x H)^ -> G^ x H^`, `zeta -> (zeta(., e_H), zeta(e_G, .))`.
/// In coordinates the restrictions are the two halves of the index.
pub fn product_dual_iso(
    g: &FiniteAbelianGroup,
    h: &FiniteAbelianGroup,
    zeta: &CharacterIndex,
) -> Result<(CharacterIndex, CharacterIndex)> {
    let gh = g.product(h)?;
    gh.check_coords(&zeta.0)?;
    let (left, right) = zeta.0.split_at(g.rank());
    Ok((CharacterIndex(left.to_vec()), CharacterIndex(right.to_vec())))
}

/// Inverse of [`product_dual_iso`]: `(chi, psi) -> chi (x) psi`.
pub fn product_dual_join(
    g: &FiniteAbelianGroup,
    h: &FiniteAbelianGroup,
    chi: &CharacterIndex,
    psi: &CharacterIndex,
) -> Result<CharacterIndex> {
    g.check_coords(&chi.0)?;
    h.check_coords(&psi.0)?;
    let mut coords = chi.0.clone();
    coords.extend_from_slice(&psi.0);
    Ok(CharacterIndex(coords))
}

/// Prime-power orders `p^k` with `Z_N = prod Z_{p^k}` by the Chinese remainder
/// theorem, in increasing order of `p`.
pub fn factor_into_prime_powers(n: u64) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::InvalidOrder { order: n });
    }
    let mut out = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest % p == 0 {
            let mut q = 1;
            while rest % p == 0 {
                rest /= p;
                q *= p;
            }
            out.push(q);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push(rest);
    }
    Ok(out)
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

/// CRT decomposition `Z_N -> prod Z_{q_i}` of cyclic groups, with maps for
/// elements and characters such that `zeta_m(a) = zeta'_{phi(m)}(psi(a))`.
#[derive(Debug, Clone)]
pub struct CrtSplitting {
    pub cyclic: FiniteAbelianGroup,
    pub split: FiniteAbelianGroup,
    n: u64,
}

impl CrtSplitting {
    pub fn new(n: u64) -> Result<Self> {
        let parts = factor_into_prime_powers(n)?;
        Ok(Self {
            cyclic: FiniteAbelianGroup::cyclic(n)?,
            split: FiniteAbelianGroup::new(parts)?,
            n,
        })
    }

    /// `a -> (a mod q_i)`
    pub fn map_element(&self, a: &GroupElement) -> Result<GroupElement> {
        self.cyclic.check_coords(&a.0)?;
        Ok(GroupElement(self.split.factors.iter().map(|&q| a.0[0] % q).collect()))
    }

    /// `m -> (m * (N/q_i)^-1 mod q_i)`, so that `m/N = sum m_i/q_i (mod 1)`.
    pub fn map_character(&self, m: &CharacterIndex) -> Result<CharacterIndex> {
        self.cyclic.check_coords(&m.0)?;
        let coords = self
            .split
            .factors
            .iter()
            .map(|&q| {
                let cofactor = (self.n / q) % q;
                let inv = mod_inverse(cofactor, q).expect("coprime CRT factors");
                (m.0[0] % q) * inv % q
            })
            .collect();
        Ok(CharacterIndex(coords))
    }
}
