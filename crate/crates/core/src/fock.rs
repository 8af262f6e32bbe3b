//! Finite wedge models for the fermionic realization.
//!
//! A factor of truncation `m` is the exterior power `Λ^m(ℂ² ⊗ ℂ[t]/t^m)`
//! with single-particle basis `v_i = v ⊗ t^i`, `u_i = u ⊗ t^i`
//! (`0 ≤ i < m`). Its top wedge `v_0 ∧ … ∧ v_{m-1}` stands in for the
//! semi-infinite vector `v(m)`: the currents `x_j = x ⊗ t^j` act on it the
//! same way, and modes `j ≥ m` act by zero.
//!
//! Monomials are stored as bitmasks: `v_i` is bit `i`, `u_i` is bit
//! `32 + i`. Bit order is the canonical particle order (all `V` before all
//! `U`, then by mode), so a set bit pattern is a canonically ordered wedge.

use std::fmt;
use std::ops::Range;

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{int, Scalar, SparseVector};

pub const MAX_TRUNCATION: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParticleKind {
    V,
    U,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Particle {
    pub kind: ParticleKind,
    pub mode: u32,
}

impl Particle {
    pub fn v(mode: u32) -> Self {
        Particle {
            kind: ParticleKind::V,
            mode,
        }
    }

    pub fn u(mode: u32) -> Self {
        Particle {
            kind: ParticleKind::U,
            mode,
        }
    }

    fn bit(self) -> u32 {
        match self.kind {
            ParticleKind::V => self.mode,
            ParticleKind::U => MAX_TRUNCATION + self.mode,
        }
    }

    fn from_bit(bit: u32) -> Self {
        if bit < MAX_TRUNCATION {
            Particle::v(bit)
        } else {
            Particle::u(bit - MAX_TRUNCATION)
        }
    }
}

impl fmt::Display for Particle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ParticleKind::V => write!(f, "v{}", self.mode),
            ParticleKind::U => write!(f, "u{}", self.mode),
        }
    }
}

/// Truncation of one tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorShape(u32);

impl FactorShape {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 || m > MAX_TRUNCATION {
            return Err(Error::Truncation(m));
        }
        Ok(FactorShape(m))
    }

    pub fn truncation(self) -> u32 {
        self.0
    }
}

/// A canonically ordered wedge of distinct particles.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WedgeMonomial(u64);

impl WedgeMonomial {
    /// `v_0 ∧ … ∧ v_{m-1}`
    pub fn top(m: u32) -> Self {
        WedgeMonomial(if m == 64 { u64::MAX } else { (1u64 << m) - 1 })
    }

    /// Sorts `particles` into canonical order. Returns the permutation sign
    /// together with the monomial, or `None` if a particle repeats (the wedge
    /// vanishes).
    pub fn from_particles(particles: &[Particle]) -> Option<(i64, Self)> {
        let mut bits: Vec<u32> = particles.iter().map(|p| p.bit()).collect();
        let mut sign = 1;
        // insertion sort, counting transpositions
        for i in 1..bits.len() {
            let mut j = i;
            while j > 0 && bits[j - 1] > bits[j] {
                bits.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        let mut mask = 0u64;
        for b in bits {
            if mask & (1 << b) != 0 {
                return None;
            }
            mask |= 1 << b;
        }
        Some((sign, WedgeMonomial(mask)))
    }

    pub fn particles(self) -> impl Iterator<Item = Particle> {
        let mut mask = self.0;
        std::iter::from_fn(move || {
            if mask == 0 {
                return None;
            }
            let b = mask.trailing_zeros();
            mask &= mask - 1;
            Some(Particle::from_bit(b))
        })
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn count(self, kind: ParticleKind) -> u32 {
        match kind {
            ParticleKind::V => (self.0 & 0xffff_ffff).count_ones(),
            ParticleKind::U => (self.0 >> 32).count_ones(),
        }
    }

    /// `h_0`-weight (`#U − #V`) and total mode.
    pub fn bigrade(self) -> (i64, i64) {
        let weight = self.count(ParticleKind::U) as i64 - self.count(ParticleKind::V) as i64;
        let tdeg = self.particles().map(|p| p.mode as i64).sum();
        (weight, tdeg)
    }

    /// Replaces the particle at bit `from` by the one at bit `to`, returning
    /// the reordering sign, or `None` if `to` is already occupied.
    fn replace(self, from: u32, to: u32) -> Option<(i64, Self)> {
        let without = self.0 & !(1u64 << from);
        if without & (1u64 << to) != 0 {
            return None;
        }
        let (lo, hi) = if from < to { (from, to) } else { (to, from) };
        let between = if hi - lo <= 1 {
            0
        } else {
            let span = ((1u64 << (hi - lo - 1)) - 1) << (lo + 1);
            (without & span).count_ones()
        };
        let sign = if between % 2 == 0 { 1 } else { -1 };
        Some((sign, WedgeMonomial(without | (1u64 << to))))
    }
}

impl fmt::Debug for WedgeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.particles().map(|p| p.to_string()).collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("∧"))
        }
    }
}

/// One wedge monomial per tensor factor.
pub type StateIndex = Vec<WedgeMonomial>;

/// Bigrade of a basis tuple: summed weight and summed mode.
pub fn bigrade(index: &[WedgeMonomial]) -> (i64, i64) {
    index.iter().fold((0, 0), |(w, d), m| {
        let (w1, d1) = m.bigrade();
        (w + w1, d + d1)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Current {
    E,
    F,
    H,
}

/// Image of one particle under `x_j` in a factor of truncation `m`:
/// `e_j: v_i ↦ u_{i+j}`, `f_j: u_i ↦ v_{i+j}`, `h_j: v_i ↦ −v_{i+j}, u_i ↦ u_{i+j}`.
fn particle_image(kind: Current, mode: u32, p: Particle, m: u32) -> Option<(i64, Particle)> {
    let target = p.mode.checked_add(mode)?;
    if target >= m {
        return None;
    }
    match (kind, p.kind) {
        (Current::E, ParticleKind::V) => Some((1, Particle::u(target))),
        (Current::F, ParticleKind::U) => Some((1, Particle::v(target))),
        (Current::H, ParticleKind::V) => Some((-1, Particle::v(target))),
        (Current::H, ParticleKind::U) => Some((1, Particle::u(target))),
        _ => None,
    }
}

/// Leibniz action of `x_j` on one wedge monomial.
pub fn act_on_monomial(
    kind: Current,
    mode: u32,
    m: WedgeMonomial,
    truncation: u32,
) -> Vec<(i64, WedgeMonomial)> {
    let mut out: Vec<(i64, WedgeMonomial)> = Vec::new();
    for p in m.particles() {
        let Some((c, q)) = particle_image(kind, mode, p, truncation) else {
            continue;
        };
        if let Some((sign, image)) = m.replace(p.bit(), q.bit()) {
            match out.iter_mut().find(|(_, w)| *w == image) {
                Some(entry) => entry.0 += c * sign,
                None => out.push((c * sign, image)),
            }
        }
    }
    out.retain(|(c, _)| *c != 0);
    out
}

/// Tensor factors of a [`WedgeState`], partitioned into blocks of
/// interchangeable factors.
///
/// Inside a block every factor has the same truncation and every operator
/// acts symmetrically, so states are kept in the symmetric power: an index is
/// canonical when each block's monomials are sorted, and a sorted tuple
/// stands for the corresponding commutative monomial. Single-factor blocks
/// give the plain tensor product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    shapes: Vec<FactorShape>,
    blocks: Vec<Range<usize>>,
}

impl Layout {
    /// Each factor in its own block.
    pub fn plain(shapes: &[FactorShape]) -> Self {
        Layout {
            shapes: shapes.to_vec(),
            blocks: (0..shapes.len()).map(|f| f..f + 1).collect(),
        }
    }

    /// Maximal runs of equal truncation become symmetric blocks.
    pub fn symmetric(shapes: &[FactorShape]) -> Self {
        let mut blocks: Vec<Range<usize>> = Vec::new();
        for (f, s) in shapes.iter().enumerate() {
            match blocks.last_mut() {
                Some(b) if shapes[b.start] == *s => b.end = f + 1,
                _ => blocks.push(f..f + 1),
            }
        }
        Layout {
            shapes: shapes.to_vec(),
            blocks,
        }
    }

    pub fn shapes(&self) -> &[FactorShape] {
        &self.shapes
    }

    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    /// Blocks of `self` followed by blocks of `other`; blocks never merge
    /// across the seam.
    pub fn concat(&self, other: &Layout) -> Layout {
        let offset = self.shapes.len();
        let mut shapes = self.shapes.clone();
        shapes.extend_from_slice(&other.shapes);
        let mut blocks = self.blocks.clone();
        blocks.extend(
            other
                .blocks
                .iter()
                .map(|b| b.start + offset..b.end + offset),
        );
        Layout { shapes, blocks }
    }
}

/// A vector in a tensor product of wedge factors.
#[derive(Clone, PartialEq, Eq)]
pub struct WedgeState {
    layout: Layout,
    vector: SparseVector<StateIndex>,
}

impl WedgeState {
    pub fn zero(layout: Layout) -> Self {
        WedgeState {
            layout,
            vector: SparseVector::zero(),
        }
    }

    /// Pure tensor of top wedges, coefficient one, with symmetric blocks.
    pub fn top_wedge(shapes: &[FactorShape]) -> Self {
        Self::top_wedge_in(Layout::symmetric(shapes))
    }

    pub fn top_wedge_in(layout: Layout) -> Self {
        let index: StateIndex = layout
            .shapes
            .iter()
            .map(|s| WedgeMonomial::top(s.truncation()))
            .collect();
        WedgeState {
            layout,
            vector: SparseVector::unit(index),
        }
    }

    /// Builds a single-term state in the plain tensor product from particle
    /// lists, one per factor, applying the permutation sign of each list.
    pub fn from_particles(
        shapes: &[FactorShape],
        factors: &[Vec<Particle>],
        coeff: Scalar,
    ) -> Result<Self> {
        let layout = Layout::plain(shapes);
        if factors.len() != shapes.len() {
            return Err(Error::LengthMismatch {
                expected: shapes.len(),
                got: factors.len(),
            });
        }
        let mut sign = 1;
        let mut index = StateIndex::with_capacity(factors.len());
        for (shape, ps) in shapes.iter().zip(factors) {
            if ps.len() as u32 != shape.truncation() {
                return Err(Error::LengthMismatch {
                    expected: shape.truncation() as usize,
                    got: ps.len(),
                });
            }
            if let Some(p) = ps.iter().find(|p| p.mode >= shape.truncation()) {
                return Err(Error::IndexOutOfRange {
                    index: p.mode as usize,
                    lo: 0,
                    hi: shape.truncation() as usize - 1,
                });
            }
            match WedgeMonomial::from_particles(ps) {
                Some((s, m)) => {
                    sign *= s;
                    index.push(m);
                }
                None => return Ok(WedgeState::zero(layout)),
            }
        }
        Ok(WedgeState {
            layout,
            vector: SparseVector::from_terms([(index, coeff * int(sign))]),
        })
    }

    pub fn from_vector(layout: Layout, vector: SparseVector<StateIndex>) -> Self {
        WedgeState { layout, vector }
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn shapes(&self) -> &[FactorShape] {
        &self.layout.shapes
    }

    pub fn vector(&self) -> &SparseVector<StateIndex> {
        &self.vector
    }

    pub fn into_vector(self) -> SparseVector<StateIndex> {
        self.vector
    }

    pub fn is_zero(&self) -> bool {
        self.vector.is_zero()
    }

    /// Common bigrade if all terms share one.
    pub fn homogeneous_bigrade(&self) -> Option<(i64, i64)> {
        let mut it = self.vector.indices().map(|i| bigrade(i));
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        WedgeState {
            layout: self.layout.clone(),
            vector: self.vector.scaled(c),
        }
    }

    pub fn add_assign(&mut self, other: &WedgeState) {
        debug_assert_eq!(self.layout, other.layout);
        self.vector.axpy(&Scalar::one(), &other.vector);
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &WedgeState) -> WedgeState {
        let layout = self.layout.concat(&other.layout);
        let mut vector = SparseVector::zero();
        for (i, a) in self.vector.iter() {
            for (j, b) in other.vector.iter() {
                let mut index = i.clone();
                index.extend_from_slice(j);
                vector.add_term(index, a * b);
            }
        }
        WedgeState { layout, vector }
    }
}

impl fmt::Debug for WedgeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.vector)
    }
}

/// `x_j` acting diagonally on every factor.
pub fn apply_current(kind: Current, mode: u32, s: &WedgeState) -> WedgeState {
    apply_current_on(kind, mode, s, 0..s.layout.len())
}

/// `x_j` acting only on the factors in `factors` (Leibniz over that range).
///
/// `factors` must be a union of blocks of the state's layout.
pub fn apply_current_on(
    kind: Current,
    mode: u32,
    s: &WedgeState,
    factors: Range<usize>,
) -> WedgeState {
    let layout = &s.layout;
    assert!(
        layout.blocks.iter().all(|b| b.end <= factors.start
            || b.start >= factors.end
            || (b.start >= factors.start && b.end <= factors.end)),
        "operator range {factors:?} splits a symmetric block"
    );
    let mut vector = SparseVector::zero();
    for block in layout
        .blocks
        .iter()
        .filter(|b| b.start >= factors.start && b.end <= factors.end)
    {
        let m = layout.shapes[block.start].truncation();
        for (index, c) in s.vector.iter() {
            for f in block.clone() {
                // equal neighbours in a sorted block give identical images
                if f > block.start && index[f] == index[f - 1] {
                    continue;
                }
                let run = index[f..block.end]
                    .iter()
                    .take_while(|&&x| x == index[f])
                    .count() as i64;
                for (k, image) in act_on_monomial(kind, mode, index[f], m) {
                    let mut next = index.clone();
                    next[f] = image;
                    if block.len() > 1 {
                        next[block.clone()].sort_unstable();
                    }
                    vector.add_term(next, c * int(k * run));
                }
            }
        }
    }
    WedgeState {
        layout: layout.clone(),
        vector,
    }
}

/// Applies `x_{j_1} ⋯ x_{j_k}` (rightmost first).
pub fn apply_word(word: &[(Current, u32)], s: &WedgeState) -> WedgeState {
    word.iter().rev().fold(s.clone(), |acc, &(kind, mode)| {
        apply_current(kind, mode, &acc)
    })
}

/// Expands a symmetric-layout state into the plain tensor product. A sorted
/// block `(x_1, …, x_k)` maps to the sum over all `k!` orderings, which
/// intertwines the derivation action on both sides.
pub fn expand_to_plain(s: &WedgeState) -> WedgeState {
    let layout = Layout::plain(&s.layout.shapes);
    let mut vector = SparseVector::zero();
    for (index, c) in s.vector.iter() {
        let mut partial: Vec<StateIndex> = vec![Vec::new()];
        let mut weight = Scalar::one();
        for b in &s.layout.blocks {
            let block = &index[b.clone()];
            let mut start = 0;
            while start < block.len() {
                let run = block[start..]
                    .iter()
                    .take_while(|&&x| x == block[start])
                    .count();
                weight *= int((1..=run as i64).product());
                start += run;
            }
            let perms = distinct_permutations(&index[b.clone()]);
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    perms.iter().map(move |q| {
                        let mut r = p.clone();
                        r.extend_from_slice(q);
                        r
                    })
                })
                .collect();
        }
        for idx in partial {
            vector.add_term(idx, c * &weight);
        }
    }
    WedgeState { layout, vector }
}

fn distinct_permutations(items: &[WedgeMonomial]) -> Vec<Vec<WedgeMonomial>> {
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    // next lexicographic permutation until exhausted
    while let Some(i) = (1..sorted.len()).rev().find(|&i| sorted[i - 1] < sorted[i]) {
        let j = (i..sorted.len())
            .rev()
            .find(|&j| sorted[j] > sorted[i - 1])
            .unwrap();
        sorted.swap(i - 1, j);
        sorted[i..].reverse();
        out.push(sorted.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shapes(ms: &[u32]) -> Vec<FactorShape> {
        ms.iter().map(|&m| FactorShape::new(m).unwrap()).collect()
    }

    fn single(ms: &[u32], factors: &[Vec<Particle>], c: i64) -> WedgeState {
        WedgeState::from_particles(&shapes(ms), factors, int(c)).unwrap()
    }

    #[test]
    fn top_wedge_examples() {
        let s = WedgeState::top_wedge(&shapes(&[1]));
        assert_eq!(s, single(&[1], &[vec![Particle::v(0)]], 1));
        let s = WedgeState::top_wedge(&shapes(&[2]));
        assert_eq!(s, single(&[2], &[vec![Particle::v(0), Particle::v(1)]], 1));
        let s = WedgeState::top_wedge(&shapes(&[3, 1]));
        let t = single(
            &[3, 1],
            &[
                vec![Particle::v(0), Particle::v(1), Particle::v(2)],
                vec![Particle::v(0)],
            ],
            1,
        );
        assert_eq!(s, t);
    }

    #[test]
    fn zero_truncation_rejected() {
        assert_eq!(FactorShape::new(0), Err(Error::Truncation(0)));
    }

    #[test]
    fn e0_on_single_particle() {
        let s = WedgeState::top_wedge(&shapes(&[1]));
        let out = apply_current(Current::E, 0, &s);
        assert_eq!(out, single(&[1], &[vec![Particle::u(0)]], 1));
    }

    #[test]
    fn f_kills_top_wedges() {
        for ms in [vec![1], vec![2], vec![3, 1], vec![4, 2, 2]] {
            let s = WedgeState::top_wedge(&shapes(&ms));
            for j in 0..5 {
                assert!(apply_current(Current::F, j, &s).is_zero());
            }
        }
    }

    #[test]
    fn e1_on_two_particles() {
        let s = WedgeState::top_wedge(&shapes(&[2]));
        let once = apply_current(Current::E, 1, &s);
        // u1 ∧ v1 = −(v1 ∧ u1)
        assert_eq!(
            once,
            single(&[2], &[vec![Particle::u(1), Particle::v(1)]], 1)
        );
        assert_eq!(
            once,
            single(&[2], &[vec![Particle::v(1), Particle::u(1)]], -1)
        );
        assert!(apply_current(Current::E, 1, &once).is_zero());
    }

    #[test]
    fn bigrade_examples() {
        let top2 = WedgeMonomial::top(2);
        assert_eq!(top2.bigrade(), (-2, 1));
        let (_, uu) = WedgeMonomial::from_particles(&[Particle::u(0), Particle::u(1)]).unwrap();
        assert_eq!(uu.bigrade(), (2, 1));
        assert_eq!(
            bigrade(&[WedgeMonomial::top(3), WedgeMonomial::top(1)]),
            (-4, 3)
        );
    }

    #[test]
    fn repeated_particle_vanishes() {
        assert!(WedgeMonomial::from_particles(&[Particle::v(0), Particle::v(0)]).is_none());
    }

    #[test]
    fn h0_is_weight() {
        let s = WedgeState::top_wedge(&shapes(&[3, 1]));
        assert_eq!(apply_current(Current::H, 0, &s), s.scaled(&int(-4)));
    }

    #[test]
    #[should_panic(expected = "splits a symmetric block")]
    fn block_action_must_respect_symmetric_blocks() {
        let s = WedgeState::top_wedge(&shapes(&[1, 1]));
        apply_current_on(Current::E, 0, &s, 1..2);
    }

    #[test]
    fn symmetric_layout_intertwines_with_plain() {
        let s = WedgeState::top_wedge(&shapes(&[3, 2, 2, 1, 1, 1]));
        assert_eq!(s.layout().blocks(), &[0..1, 1..3, 3..6]);
        let word = [
            (Current::E, 0),
            (Current::E, 1),
            (Current::E, 0),
            (Current::H, 1),
            (Current::E, 2),
        ];
        let mut sym = s.clone();
        let mut plain = expand_to_plain(&s);
        for &(kind, mode) in &word {
            sym = apply_current(kind, mode, &sym);
            plain = apply_current(kind, mode, &plain);
            assert_eq!(expand_to_plain(&sym), plain);
        }
        assert!(!sym.is_zero());
    }

    #[test]
    fn block_action_leaves_other_factors() {
        let s = WedgeState::top_wedge_in(Layout::plain(&shapes(&[1, 1])));
        let out = apply_current_on(Current::E, 0, &s, 1..2);
        assert_eq!(
            out,
            single(&[1, 1], &[vec![Particle::v(0)], vec![Particle::u(0)]], 1)
        );
    }
}
