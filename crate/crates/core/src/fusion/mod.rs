//! Fusion modules `M^A` realized inside tensor products of wedge factors.
//!
//! `M^A` is generated from the tensor of top wedges with factor truncations
//! `m_j = #{α : a_α ≥ j + 1}` (`j = 1, …, a_n − 1`) by the currents
//! `e_0, …, e_{n−1}`. The closure is computed stratum by stratum: every
//! `e_j` is homogeneous for the (weight, energy) bigrading, so each bigraded
//! piece gets its own [`SpanBasis`] and the character is read off the
//! stratum dimensions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{
    apply_current, apply_current_on, bigrade, Current, FactorShape, Layout, StateIndex, WedgeState,
};
use crate::linalg::{SpanBasis, SparseVector};

mod closure;
mod factored;

pub use closure::{close_with, Bigrade, CyclicSpan};
pub use factored::{factor_module, FactorIndex, FactorModule, FactoredSpace};

pub const DEFAULT_DIMENSION_CAP: usize = 100_000;

/// Weakly increasing vector of positive integers `A = (a_1 ≤ … ≤ a_n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        Self::validate(&entries)?;
        Ok(WeightVector(entries))
    }

    /// Like [`WeightVector::new`] but every entry must be at least `min`.
    pub fn with_min(entries: Vec<u32>, min: u32) -> Result<Self> {
        let a = Self::new(entries)?;
        a.require_min(min)?;
        Ok(a)
    }

    // The empty vector labels the trivial one-dimensional module.
    pub(crate) fn empty() -> Self {
        WeightVector(Vec::new())
    }

    fn validate(entries: &[u32]) -> Result<()> {
        if let Some(p) = entries.iter().position(|&a| a == 0) {
            return Err(Error::EntryTooSmall {
                position: p,
                value: 0,
                min: 1,
            });
        }
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NotWeaklyIncreasing(
                entries.iter().map(|&a| a as i64).collect(),
            ));
        }
        Ok(())
    }

    pub fn require_min(&self, min: u32) -> Result<()> {
        match self.0.iter().position(|&a| a < min) {
            Some(p) => Err(Error::EntryTooSmall {
                position: p,
                value: self.0[p] as i64,
                min: min as i64,
            }),
            None => Ok(()),
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `∏ a_i`, the dimension of `M^A`.
    pub fn product(&self) -> u128 {
        self.0.iter().map(|&a| a as u128).product()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Factor truncations of the fermionic embedding of `M^A`.
pub fn factor_shapes(a: &WeightVector) -> Vec<FactorShape> {
    let top = a.entries().last().copied().unwrap_or(1);
    (1..top)
        .map(|j| a.entries().iter().filter(|&&x| x > j).count() as u32)
        .filter(|&m| m > 0)
        .map(|m| FactorShape::new(m).expect("truncation bounded by the length of A"))
        .collect()
}

fn check_truncations(a: &WeightVector) -> Result<()> {
    if a.len() as u32 > crate::fock::MAX_TRUNCATION {
        return Err(Error::Truncation(a.len() as u32));
    }
    Ok(())
}

/// Multiplicities indexed by `(h_0-weight, energy)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Character {
    terms: BTreeMap<(i64, i64), usize>,
}

impl Character {
    pub fn from_terms<T: IntoIterator<Item = ((i64, i64), usize)>>(terms: T) -> Self {
        let mut c = Character::default();
        for (k, m) in terms {
            if m > 0 {
                *c.terms.entry(k).or_default() += m;
            }
        }
        c
    }

    /// Multiplicity of `z^weight q^tdeg`.
    pub fn coeff(&self, weight: i64, tdeg: i64) -> usize {
        self.terms.get(&(weight, tdeg)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), usize)> + '_ {
        self.terms.iter().map(|(&k, &m)| (k, m))
    }

    /// Value at `z = q = 1`.
    pub fn total(&self) -> usize {
        self.terms.values().sum()
    }

    /// Dimensions of the energy pieces, summed over weights.
    pub fn energy_profile(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&(_, d), &m) in &self.terms {
            *out.entry(d).or_default() += m;
        }
        out
    }

    pub fn min_weight(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).min()
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn max_tdeg(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// Re-anchors energies at the top: `tdeg ↦ max_tdeg − tdeg`.
    pub fn from_top(&self) -> Character {
        let top = self.max_tdeg().unwrap_or(0);
        Character::from_terms(self.terms().map(|((w, d), m)| ((w, top - d), m)))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(w, d), &m)| format!("{m}·z^{w}q^{d}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One generating operator of a cyclic closure: `e_mode` acting on a block of
/// tensor factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub mode: u32,
    pub factors: Range<usize>,
}

/// Direct closure of `cyclic` under `generators` in the wedge space.
pub fn close(
    cyclic: WedgeState,
    generators: &[Generator],
    cap: usize,
) -> Result<CyclicSpan<StateIndex>> {
    let layout = cyclic.layout().clone();
    let apply = |k: usize, v: &SparseVector<StateIndex>| {
        let g = &generators[k];
        let s = WedgeState::from_vector(layout.clone(), v.clone());
        apply_current_on(Current::E, g.mode, &s, g.factors.clone()).into_vector()
    };
    close_with(
        cyclic.into_vector(),
        |i| bigrade(i),
        generators.len(),
        apply,
        cap,
    )
}

/// Closure of the tensor of top wedges over `layout`, computed in
/// `⊗ C_{m_j}`.
pub fn close_factored(
    layout: Layout,
    generators: &[Generator],
    cap: usize,
) -> Result<(FactoredSpace, CyclicSpan<FactorIndex>)> {
    let space = FactoredSpace::new(layout, cap)?;
    let apply = |k: usize, v: &SparseVector<FactorIndex>| {
        let g = &generators[k];
        space.apply(g.mode, g.factors.clone(), v)
    };
    let span = close_with(
        space.top(),
        |i| space.grade(i),
        generators.len(),
        apply,
        cap,
    )?;
    Ok((space, span))
}

/// `e_0, …, e_{n−1}` acting diagonally on `factors` tensor factors.
pub fn global_generators(n: usize, factors: usize) -> Vec<Generator> {
    (0..n as u32)
        .map(|mode| Generator {
            mode,
            factors: 0..factors,
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct FusionModule {
    pub weights: WeightVector,
    pub shapes: Vec<FactorShape>,
    pub space: FactoredSpace,
    pub span: CyclicSpan<FactorIndex>,
}

impl FusionModule {
    pub fn dimension(&self) -> usize {
        self.span.dimension()
    }

    pub fn character(&self) -> Character {
        self.span.character()
    }

    /// The cyclic vector in the wedge space.
    pub fn cyclic(&self) -> WedgeState {
        self.space.to_wedge(&self.span.cyclic)
    }

    /// A basis of the module in the wedge space.
    pub fn wedge_basis(&self) -> impl Iterator<Item = WedgeState> + '_ {
        self.span
            .basis()
            .map(|(_, _, row)| self.space.to_wedge(&row))
    }
}

pub fn build_module(a: &WeightVector) -> Result<FusionModule> {
    build_module_capped(a, DEFAULT_DIMENSION_CAP)
}

pub fn build_module_capped(a: &WeightVector, cap: usize) -> Result<FusionModule> {
    check_truncations(a)?;
    let shapes = factor_shapes(a);
    let generators = global_generators(a.len(), shapes.len());
    let (space, span) = close_factored(Layout::symmetric(&shapes), &generators, cap)?;
    Ok(FusionModule {
        weights: a.clone(),
        shapes,
        space,
        span,
    })
}

/// [`build_module_capped`] by closing directly in the wedge space; slower,
/// kept as an independent construction.
pub fn build_module_direct(a: &WeightVector, cap: usize) -> Result<CyclicSpan<StateIndex>> {
    check_truncations(a)?;
    let shapes = factor_shapes(a);
    close(
        WedgeState::top_wedge(&shapes),
        &global_generators(a.len(), shapes.len()),
        cap,
    )
}

pub fn character(a: &WeightVector) -> Result<Character> {
    Ok(build_module(a)?.character())
}

/// `e^{(n)}(z) = e_{n−1} + z e_{n−2} + … + z^{n−1} e_0`, as (power of z, mode).
fn current_series(n: u32) -> impl Iterator<Item = (usize, u32)> {
    (0..n).map(move |p| (p as usize, n - 1 - p))
}

/// Coefficients of `e^{(n)}(z)^i · (v_0 ∧ … ∧ v_{n−1})`, indexed by the
/// power of `z`.
pub fn current_power_expansion(n: u32, i: u32) -> Result<Vec<WedgeState>> {
    let layout = Layout::plain(&[FactorShape::new(n)?]);
    let mut poly = vec![WedgeState::top_wedge_in(layout.clone())];
    for _ in 0..i {
        let mut next: Vec<WedgeState> = (0..poly.len() + n as usize - 1)
            .map(|_| WedgeState::zero(layout.clone()))
            .collect();
        for (k, coeff) in poly.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (p, mode) in current_series(n) {
                let image = apply_current(Current::E, mode, coeff);
                next[k + p].add_assign(&image);
            }
        }
        poly = next;
    }
    Ok(poly)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub n: u32,
    pub i_max: u32,
    /// `(i, k)` for the first power `i` whose `z^k` coefficient (with
    /// `k < n(i−1)`) is nonzero.
    pub first_violation: Option<(u32, usize)>,
    /// For each `i`, the number of leading coefficients checked.
    pub checked: Vec<(u32, usize)>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Checks that the first `n(i−1)` coefficients of `e^{(n)}(z)^i · v(n)` vanish
/// for every `i ≤ i_max`.
pub fn check_relations(n: u32, i_max: u32) -> Result<RelationReport> {
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            lo: 1,
            hi: crate::fock::MAX_TRUNCATION as usize,
        });
    }
    let mut checked = Vec::new();
    for i in 1..=i_max {
        let poly = current_power_expansion(n, i)?;
        let bound = (n * (i - 1)) as usize;
        checked.push((i, bound));
        if let Some(k) = (0..bound.min(poly.len())).find(|&k| !poly[k].is_zero()) {
            return Ok(RelationReport {
                n,
                i_max,
                first_violation: Some((i, k)),
                checked,
            });
        }
    }
    Ok(RelationReport {
        n,
        i_max,
        first_violation: None,
        checked,
    })
}

/// Monomials `e_{i_1} ⋯ e_{i_k}` with `0 ≤ i_1 ≤ … ≤ i_k ≤ n − k`, listed as
/// mode sequences, grouped by `k = 0..=n`.
pub fn monomial_basis(n: u32) -> Vec<Vec<u32>> {
    fn rec(start: u32, max: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=max {
            cur.push(i);
            rec(i, max, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for k in 0..=n {
        rec(0, n - k, k, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialBasisReport {
    pub n: u32,
    pub monomials: usize,
    pub counts_by_length: Vec<usize>,
    pub rank: usize,
    /// Rank restricted to each weight `−n + 2k`.
    pub rank_by_weight: Vec<usize>,
    pub spans_module: bool,
}

impl MonomialBasisReport {
    pub fn passed(&self) -> bool {
        let full = 1usize << self.n;
        self.monomials == full && self.rank == full && self.spans_module
    }
}

/// Applies the monomial basis to `v_0 ∧ … ∧ v_{n−1}` and measures rank.
pub fn check_monomial_basis(n: u32) -> Result<MonomialBasisReport> {
    let shapes = vec![FactorShape::new(n)?];
    let top = WedgeState::top_wedge(&shapes);
    let monomials = monomial_basis(n);
    let mut counts = vec![0usize; n as usize + 1];
    let mut by_weight: Vec<SpanBasis<StateIndex>> = (0..=n).map(|_| SpanBasis::new()).collect();
    let mut all = SpanBasis::new();
    for word in &monomials {
        counts[word.len()] += 1;
        let image = word
            .iter()
            .rev()
            .fold(top.clone(), |s, &j| apply_current(Current::E, j, &s));
        all.insert(image.vector());
        by_weight[word.len()].insert(image.vector());
    }
    let module = build_module(&WeightVector::new(vec![2; n as usize])?)?;
    let spans_module = module.wedge_basis().all(|r| all.contains(r.vector()));
    Ok(MonomialBasisReport {
        n,
        monomials: monomials.len(),
        counts_by_length: counts,
        rank: all.dimension(),
        rank_by_weight: by_weight.iter().map(|b| b.dimension()).collect(),
        spans_module,
    })
}

/// Which description of `S_{i,i+1}(A)` was used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubmoduleRecipe {
    /// `a_i < a_{i+1}`: cyclic span inside `M^{A'} ⊗ M^{A''}`.
    TensorEmbedding,
    /// `a_i = a_{i+1}`: `M^A` with entries `i, i+1` deleted.
    EqualEntries,
}

#[derive(Debug, Clone)]
pub struct SubmoduleS {
    /// 1-based position `i`.
    pub index: usize,
    pub parent: WeightVector,
    pub a_prime: WeightVector,
    pub a_double_prime: Option<WeightVector>,
    pub recipe: SubmoduleRecipe,
    pub space: FactoredSpace,
    pub span: CyclicSpan<FactorIndex>,
}

impl SubmoduleS {
    pub fn dimension(&self) -> usize {
        self.span.dimension()
    }
}

/// `A` with `a_i − 1`, `a_{i+1} + 1`, sorted.
pub fn quotient_weights(a: &WeightVector, i: usize) -> Vec<u32> {
    let mut q = a.entries().to_vec();
    q[i - 1] -= 1;
    q[i] += 1;
    q.sort_unstable();
    q
}

fn check_position(a: &WeightVector, i: usize) -> Result<()> {
    if a.len() < 2 || i == 0 || i >= a.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            lo: 1,
            hi: a.len().saturating_sub(1),
        });
    }
    Ok(())
}

pub fn build_submodule(a: &WeightVector, i: usize) -> Result<SubmoduleS> {
    build_submodule_capped(a, i, DEFAULT_DIMENSION_CAP)
}

pub fn build_submodule_capped(a: &WeightVector, i: usize, cap: usize) -> Result<SubmoduleS> {
    check_position(a, i)?;
    a.require_min(2)?;
    check_truncations(a)?;
    let e = a.entries();
    let n = e.len();
    let (ai, aj) = (e[i - 1], e[i]);
    let a_prime: Vec<u32> = e[..i - 1].iter().chain(&e[i + 1..]).copied().collect();
    let a_prime = if a_prime.is_empty() {
        WeightVector::empty()
    } else {
        WeightVector::new(a_prime)?
    };
    if ai == aj {
        let shapes = factor_shapes(&a_prime);
        let (space, span) = close_factored(
            Layout::symmetric(&shapes),
            &global_generators(n, shapes.len()),
            cap,
        )?;
        return Ok(SubmoduleS {
            index: i,
            parent: a.clone(),
            a_prime,
            a_double_prime: None,
            recipe: SubmoduleRecipe::EqualEntries,
            space,
            span,
        });
    }
    let a_double_prime = WeightVector::new(e[i..].iter().map(|&x| x - ai + 1).collect())?;
    // The generator `v_{A'} ⊗ v_{A''}` keeps only the factors of `A'` below
    // level `a_i`, i.e. the realization of `A'` with entries capped at `a_i`.
    let first = factor_shapes(&capped(&a_prime, ai));
    let second = factor_shapes(&a_double_prime);
    let layout = Layout::symmetric(&first).concat(&Layout::symmetric(&second));
    let total = first.len() + second.len();
    let mut generators = global_generators(n, total);
    generators.push(Generator {
        mode: (n - i - 1) as u32,
        factors: first.len()..total,
    });
    let (space, span) = close_factored(layout, &generators, cap)?;
    Ok(SubmoduleS {
        index: i,
        parent: a.clone(),
        a_prime,
        a_double_prime: Some(a_double_prime),
        recipe: SubmoduleRecipe::TensorEmbedding,
        space,
        span,
    })
}

fn capped(a: &WeightVector, cap: u32) -> WeightVector {
    WeightVector(a.entries().iter().map(|&x| x.min(cap)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactSequenceReport {
    pub index: usize,
    pub submodule_dim: usize,
    pub quotient: Vec<u32>,
    pub quotient_dim: u128,
    pub module_dim: u128,
    pub holds: bool,
}

/// `dim S_{i,i+1}(A) + dim M^{quotient} = dim M^A`, with the outer
/// dimensions from the product formula.
pub fn exact_sequence_check(a: &WeightVector, i: usize) -> Result<ExactSequenceReport> {
    let sub = build_submodule(a, i)?;
    let quotient = quotient_weights(a, i);
    let quotient_dim: u128 = quotient.iter().map(|&x| x as u128).product();
    let module_dim = a.product();
    Ok(ExactSequenceReport {
        index: i,
        submodule_dim: sub.dimension(),
        holds: sub.dimension() as u128 + quotient_dim == module_dim,
        quotient,
        quotient_dim,
        module_dim,
    })
}

/// Closed-form dimension of `S_{i,i+1}(A)` in the three cases where the
/// submodule has a direct description, or `None` otherwise.
pub fn special_case_dimension(a: &WeightVector, i: usize) -> Option<u128> {
    let e = a.entries();
    let n = e.len();
    let prod = |xs: &[u32]| xs.iter().map(|&x| x as u128).product::<u128>();
    if i == 0 || i >= n {
        return None;
    }
    if e[i - 1] == e[i] {
        let rest: Vec<u32> = e[..i - 1].iter().chain(&e[i + 1..]).copied().collect();
        return Some(prod(&rest));
    }
    if i == 1 {
        return Some((e[1] - e[0] + 1) as u128 * prod(&e[2..]));
    }
    if i == n - 1 {
        return Some(prod(&e[..n - 2]) * (e[n - 1] - e[n - 2] + 1) as u128);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(xs: &[u32]) -> WeightVector {
        WeightVector::new(xs.to_vec()).unwrap()
    }

    fn ms(a: &[u32]) -> Vec<u32> {
        factor_shapes(&wv(a))
            .iter()
            .map(|s| s.truncation())
            .collect()
    }

    #[test]
    fn factor_shape_examples() {
        assert_eq!(ms(&[2, 2, 2]), vec![3]);
        assert_eq!(ms(&[3]), vec![1, 1]);
        assert_eq!(ms(&[2, 3, 3]), vec![3, 2]);
        assert_eq!(ms(&[1, 1]), Vec::<u32>::new());
        assert_eq!(ms(&[1, 3]), vec![1, 1]);
    }

    #[test]
    fn rejects_bad_vectors() {
        assert!(matches!(
            WeightVector::new(vec![3, 2]),
            Err(Error::NotWeaklyIncreasing(_))
        ));
        assert_eq!(WeightVector::new(vec![]), Err(Error::Empty));
        assert!(matches!(
            WeightVector::new(vec![0, 2]),
            Err(Error::EntryTooSmall { .. })
        ));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(build_module(&wv(&[2, 2, 2])).unwrap().dimension(), 8);
        assert_eq!(build_module(&wv(&[2, 3])).unwrap().dimension(), 6);
        assert_eq!(build_module(&wv(&[1, 1, 1])).unwrap().dimension(), 1);
    }

    #[test]
    fn single_entry_is_irreducible() {
        for a in 1..7u32 {
            let chi = character(&wv(&[a])).unwrap();
            let expected =
                Character::from_terms((0..a as i64).map(|k| ((-(a as i64 - 1) + 2 * k, 0), 1)));
            assert_eq!(chi, expected, "a = {a}");
        }
    }

    #[test]
    fn character_of_c2_and_c2c2() {
        assert_eq!(
            character(&wv(&[2])).unwrap(),
            Character::from_terms([((-1, 0), 1), ((1, 0), 1)])
        );
        let chi = character(&wv(&[2, 2])).unwrap();
        assert_eq!(chi.total(), 4);
        assert_eq!(chi.min_weight(), Some(-2));
        assert_eq!(chi.coeff(-2, 0), 1);
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let err = build_module_capped(&wv(&[2, 2, 2, 2]), 10).unwrap_err();
        assert_eq!(err, Error::ResourceLimit { cap: 10 });
    }

    #[test]
    fn relation_examples() {
        assert!(check_relations(1, 2).unwrap().passed());
        let r = check_relations(2, 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, vec![(1, 0), (2, 2)]);
        assert!(check_relations(3, 3).unwrap().passed());
    }

    #[test]
    fn relation_bound_is_sharp() {
        // the z^{n(i-1)} coefficient itself survives
        let poly = current_power_expansion(2, 2).unwrap();
        assert!(!poly[2].is_zero());
        let poly = current_power_expansion(3, 2).unwrap();
        assert!(!poly[3].is_zero());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomial_basis(1), vec![vec![], vec![0]]);
        assert_eq!(
            monomial_basis(2),
            vec![vec![], vec![0], vec![1], vec![0, 0]]
        );
        let r = check_monomial_basis(3).unwrap();
        assert_eq!(r.counts_by_length, vec![1, 3, 3, 1]);
        assert!(r.passed());
    }

    #[test]
    fn submodule_examples() {
        let s = build_submodule(&wv(&[2, 3]), 1).unwrap();
        assert_eq!(s.recipe, SubmoduleRecipe::TensorEmbedding);
        assert!(s.a_prime.is_empty());
        assert_eq!(s.dimension(), 2);
        let s = build_submodule(&wv(&[2, 2, 3]), 1).unwrap();
        assert_eq!(s.recipe, SubmoduleRecipe::EqualEntries);
        assert_eq!(s.dimension(), 3);
        let s = build_submodule(&wv(&[2, 2, 4]), 2).unwrap();
        assert_eq!(s.dimension(), 6);
        assert_eq!(special_case_dimension(&wv(&[2, 2, 4]), 2), Some(6));
    }

    #[test]
    fn submodule_index_errors() {
        assert!(matches!(
            build_submodule(&wv(&[2, 3]), 0),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            build_submodule(&wv(&[2, 3]), 2),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            build_submodule(&wv(&[2]), 1),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            build_submodule(&wv(&[1, 3]), 1),
            Err(Error::EntryTooSmall { .. })
        ));
    }

    #[test]
    fn exact_sequence_examples() {
        let r = exact_sequence_check(&wv(&[2, 3]), 1).unwrap();
        assert_eq!((r.submodule_dim, r.quotient_dim, r.module_dim), (2, 4, 6));
        assert!(r.holds);
        let r = exact_sequence_check(&wv(&[2, 2]), 1).unwrap();
        assert_eq!((r.submodule_dim, r.quotient_dim), (1, 3));
        assert!(r.holds);
        let r = exact_sequence_check(&wv(&[2, 2, 2]), 2).unwrap();
        assert_eq!(r.quotient, vec![1, 2, 3]);
        assert_eq!((r.submodule_dim, r.quotient_dim), (2, 6));
        assert!(r.holds);
    }

    #[test]
    fn cyclic_vector_is_lowest_weight() {
        for a in [vec![2, 3], vec![2, 2, 2], vec![3, 3, 4]] {
            let m = build_module(&wv(&a)).unwrap();
            for j in 0..6 {
                assert!(apply_current(Current::F, j, &m.cyclic()).is_zero());
            }
        }
    }
}
