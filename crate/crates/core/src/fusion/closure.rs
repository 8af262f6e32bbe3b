//! Breadth-first cyclic closures, stored by bigraded strata.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::linalg::{SpanBasis, SparseVector};

use super::Character;

pub type Bigrade = (i64, i64);

/// Dense numbering of the basis states met during a closure, so that stored
/// rows carry `u32` keys.
#[derive(Debug, Clone)]
struct Interner<I> {
    ids: HashMap<I, u32>,
    states: Vec<I>,
}

impl<I> Default for Interner<I> {
    fn default() -> Self {
        Interner {
            ids: HashMap::new(),
            states: Vec::new(),
        }
    }
}

impl<I: Clone + Eq + Hash + Ord> Interner<I> {
    fn id(&mut self, index: &I) -> u32 {
        if let Some(&id) = self.ids.get(index) {
            return id;
        }
        let id = self.states.len() as u32;
        self.states.push(index.clone());
        self.ids.insert(index.clone(), id);
        id
    }

    fn encode(&mut self, v: &SparseVector<I>) -> SparseVector<u32> {
        SparseVector::from_terms(v.iter().map(|(i, c)| (self.id(i), c.clone())))
    }

    /// `None` when some state was never seen, i.e. cannot lie in the span.
    fn encode_known(&self, v: &SparseVector<I>) -> Option<SparseVector<u32>> {
        let terms: Option<Vec<_>> = v
            .iter()
            .map(|(i, c)| Some((*self.ids.get(i)?, c.clone())))
            .collect();
        terms.map(SparseVector::from_terms)
    }

    fn decode(&self, v: &SparseVector<u32>) -> SparseVector<I> {
        SparseVector::from_terms(
            v.iter()
                .map(|(&i, c)| (self.states[i as usize].clone(), c.clone())),
        )
    }
}

/// The span of a cyclic vector under a set of homogeneous operators.
#[derive(Debug, Clone)]
pub struct CyclicSpan<I: Ord> {
    pub cyclic: SparseVector<I>,
    strata: BTreeMap<Bigrade, SpanBasis<u32>>,
    interner: Interner<I>,
    /// Energy of the cyclic vector; characters are shifted by it.
    pub tdeg_origin: i64,
}

impl<I: Clone + Eq + Hash + Ord> CyclicSpan<I> {
    pub fn dimension(&self) -> usize {
        self.strata.values().map(|b| b.dimension()).sum()
    }

    /// Dimension of each occupied stratum, energies absolute.
    pub fn stratum_dimensions(&self) -> impl Iterator<Item = (Bigrade, usize)> + '_ {
        self.strata.iter().map(|(&g, b)| (g, b.dimension()))
    }

    /// Longest stored basis row, in nonzero coefficients.
    pub fn max_row_len(&self) -> usize {
        self.strata
            .values()
            .flat_map(|b| b.rows().map(|r| r.len()))
            .max()
            .unwrap_or(0)
    }

    pub fn character(&self) -> Character {
        Character::from_terms(
            self.strata
                .iter()
                .map(|(&(w, d), b)| ((w, d - self.tdeg_origin), b.dimension())),
        )
    }

    /// The reduced basis rows, stratum by stratum, each with its pivot. A
    /// vector of the span is the sum of the rows weighted by its own
    /// coefficients at the pivots.
    pub fn basis(&self) -> impl Iterator<Item = (Bigrade, I, SparseVector<I>)> + '_ {
        self.strata.iter().flat_map(move |(&g, b)| {
            b.pivots().zip(b.rows()).map(move |(&p, r)| {
                (
                    g,
                    self.interner.states[p as usize].clone(),
                    self.interner.decode(r),
                )
            })
        })
    }

    /// Membership; `grade` must be the grading used for the closure.
    pub fn contains(&self, v: &SparseVector<I>, grade: impl Fn(&I) -> Bigrade) -> bool {
        let mut parts: BTreeMap<Bigrade, SparseVector<I>> = BTreeMap::new();
        for (i, c) in v.iter() {
            parts
                .entry(grade(i))
                .or_default()
                .add_term(i.clone(), c.clone());
        }
        parts.iter().all(|(g, part)| {
            let (Some(basis), Some(w)) = (self.strata.get(g), self.interner.encode_known(part))
            else {
                return false;
            };
            basis.contains(&w)
        })
    }
}

fn homogeneous<I>(v: &SparseVector<I>, grade: &impl Fn(&I) -> Bigrade) -> Option<Bigrade>
where
    I: Ord + Clone,
{
    let mut it = v.indices().map(grade);
    let g = it.next()?;
    it.all(|h| h == g).then_some(g)
}

/// Breadth-first closure of `cyclic` under `apply(k, ·)` for
/// `k < operators`. Every operator must be homogeneous for `grade`.
pub fn close_with<I, G, F>(
    cyclic: SparseVector<I>,
    grade: G,
    operators: usize,
    apply: F,
    cap: usize,
) -> Result<CyclicSpan<I>>
where
    I: Clone + Eq + Hash + Ord,
    G: Fn(&I) -> Bigrade,
    F: Fn(usize, &SparseVector<I>) -> SparseVector<I>,
{
    let origin =
        homogeneous(&cyclic, &grade).expect("cyclic vector must be nonzero and homogeneous");
    let mut interner = Interner::default();
    let mut strata: BTreeMap<Bigrade, SpanBasis<u32>> = BTreeMap::new();
    let start = interner.encode(&cyclic);
    strata.entry(origin).or_default().insert(&start);
    let mut dim = 1usize;
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        let w = interner.decode(&w);
        for k in 0..operators {
            let image = apply(k, &w);
            if image.is_zero() {
                continue;
            }
            let g = homogeneous(&image, &grade).expect("operator images must be homogeneous");
            let image = interner.encode(&image);
            if strata.entry(g).or_default().insert(&image) {
                dim += 1;
                if dim > cap {
                    return Err(Error::ResourceLimit { cap });
                }
                queue.push_back(image);
            }
        }
    }
    Ok(CyclicSpan {
        cyclic,
        strata,
        interner,
        tdeg_origin: origin.1,
    })
}
