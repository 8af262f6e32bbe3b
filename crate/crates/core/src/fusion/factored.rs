//! Closures computed in the basis of the single-factor modules.
//!
//! The top wedge of a truncation-`m` factor generates a submodule `C_m` of
//! `Λ^m(ℂ² ⊗ ℂ[t]/t^m)`. Currents act on tensors factor by factor, so the
//! span of a tensor of top wedges never leaves `⊗ C_{m_j}` and can be
//! computed there, with each `C_m` written in its own row basis. This is the
//! same module as the direct closure in the wedge space, with a far smaller
//! ambient space.

use std::collections::HashMap;
use std::ops::Range;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Result;
use crate::fock::{apply_current, bigrade, Current, FactorShape, Layout, StateIndex, WedgeState};
use crate::linalg::{int, Scalar, SparseVector};

use super::closure::{close_with, Bigrade};

/// Index into `⊗ C_{m_j}`: one basis id per factor, sorted within each
/// symmetric block.
pub type FactorIndex = Vec<u32>;

/// `C_m` with its basis, grading and the action of `e_0, …, e_{m−1}`.
#[derive(Debug)]
pub struct FactorModule {
    truncation: u32,
    rows: Vec<SparseVector<StateIndex>>,
    grades: Vec<Bigrade>,
    /// `action[j][b]` is `e_j` applied to basis vector `b`.
    action: Vec<Vec<Vec<(u32, Scalar)>>>,
    top: u32,
}

impl FactorModule {
    fn build(m: u32, cap: usize) -> Result<Self> {
        let layout = Layout::plain(&[FactorShape::new(m)?]);
        let apply = |j: u32, v: &SparseVector<StateIndex>| {
            apply_current(
                Current::E,
                j,
                &WedgeState::from_vector(layout.clone(), v.clone()),
            )
            .into_vector()
        };
        let top = WedgeState::top_wedge_in(layout.clone());
        let span = close_with(
            top.vector().clone(),
            |i| bigrade(i),
            m as usize,
            |k, v| apply(k as u32, v),
            cap,
        )?;
        let mut rows = Vec::new();
        let mut grades = Vec::new();
        let mut pivot_id = HashMap::new();
        for (g, pivot, row) in span.basis() {
            pivot_id.insert(pivot, rows.len() as u32);
            rows.push(row);
            grades.push(g);
        }
        let action = (0..m)
            .map(|j| {
                rows.iter()
                    .map(|row| {
                        let image = apply(j, row);
                        let coords: Vec<(u32, Scalar)> = image
                            .iter()
                            .filter_map(|(i, c)| pivot_id.get(i).map(|&b| (b, c.clone())))
                            .collect();
                        debug_assert!({
                            let mut back = SparseVector::zero();
                            for (b, c) in &coords {
                                back.axpy(c, &rows[*b as usize]);
                            }
                            back == image
                        });
                        coords
                    })
                    .collect()
            })
            .collect();
        let top = pivot_id[&top
            .vector()
            .leading()
            .expect("top wedge is nonzero")
            .0
            .clone()];
        Ok(FactorModule {
            truncation: m,
            rows,
            grades,
            action,
            top,
        })
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Basis vector `b` in the wedge space.
    pub fn row(&self, b: u32) -> &SparseVector<StateIndex> {
        &self.rows[b as usize]
    }

    pub fn grade(&self, b: u32) -> Bigrade {
        self.grades[b as usize]
    }

    /// Id of the top wedge.
    pub fn top(&self) -> u32 {
        self.top
    }

    /// `e_mode` of basis vector `b`; empty when `mode ≥ m`.
    pub fn act(&self, mode: u32, b: u32) -> &[(u32, Scalar)] {
        match self.action.get(mode as usize) {
            Some(table) => &table[b as usize],
            None => &[],
        }
    }
}

/// `C_m`, built once per truncation. Fails if `C_m` exceeds `cap`.
pub fn factor_module(m: u32, cap: usize) -> Result<Arc<FactorModule>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FactorModule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&m) {
        return Ok(f.clone());
    }
    let f = Arc::new(FactorModule::build(m, cap)?);
    cache.lock().unwrap().insert(m, f.clone());
    Ok(f)
}

/// `⊗ C_{m_j}` over a layout of wedge factors.
#[derive(Debug, Clone)]
pub struct FactoredSpace {
    layout: Layout,
    factors: Vec<Arc<FactorModule>>,
}

impl FactoredSpace {
    pub fn new(layout: Layout, cap: usize) -> Result<Self> {
        let factors = layout
            .shapes()
            .iter()
            .map(|s| factor_module(s.truncation(), cap))
            .collect::<Result<_>>()?;
        Ok(FactoredSpace { layout, factors })
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    /// Tensor of top wedges.
    pub fn top(&self) -> SparseVector<FactorIndex> {
        SparseVector::unit(self.factors.iter().map(|f| f.top()).collect())
    }

    pub fn grade(&self, index: &[u32]) -> Bigrade {
        index
            .iter()
            .zip(&self.factors)
            .fold((0, 0), |(w, d), (&b, f)| {
                let (gw, gd) = f.grade(b);
                (w + gw, d + gd)
            })
    }

    /// `e_mode` acting on the factors in `factors`, which must be a union of
    /// blocks.
    pub fn apply(
        &self,
        mode: u32,
        factors: Range<usize>,
        v: &SparseVector<FactorIndex>,
    ) -> SparseVector<FactorIndex> {
        let blocks = self.layout.blocks();
        assert!(
            blocks.iter().all(|b| b.end <= factors.start
                || b.start >= factors.end
                || (b.start >= factors.start && b.end <= factors.end)),
            "operator range {factors:?} splits a symmetric block"
        );
        let mut out = SparseVector::zero();
        for block in blocks
            .iter()
            .filter(|b| b.start >= factors.start && b.end <= factors.end)
        {
            let module = &self.factors[block.start];
            if mode >= module.truncation() {
                continue;
            }
            for (index, c) in v.iter() {
                for f in block.clone() {
                    // equal neighbours in a sorted block give identical images
                    if f > block.start && index[f] == index[f - 1] {
                        continue;
                    }
                    let run = index[f..block.end]
                        .iter()
                        .take_while(|&&x| x == index[f])
                        .count() as i64;
                    for (b, k) in module.act(mode, index[f]) {
                        let mut next = index.clone();
                        next[f] = *b;
                        if block.len() > 1 {
                            next[block.clone()].sort_unstable();
                        }
                        out.add_term(next, c * k * int(run));
                    }
                }
            }
        }
        out
    }

    /// The same vector in the wedge space, over the same layout.
    pub fn to_wedge(&self, v: &SparseVector<FactorIndex>) -> WedgeState {
        let mut out = SparseVector::zero();
        for (index, c) in v.iter() {
            let mut partial: Vec<(StateIndex, Scalar)> = vec![(Vec::new(), c.clone())];
            for (&b, f) in index.iter().zip(&self.factors) {
                partial = partial
                    .into_iter()
                    .flat_map(|(p, x)| {
                        f.row(b).iter().map(move |(m, y)| {
                            let mut q = p.clone();
                            q.extend_from_slice(m);
                            (q, &x * y)
                        })
                    })
                    .collect();
            }
            for (mut idx, x) in partial {
                for block in self.layout.blocks() {
                    idx[block.clone()].sort_unstable();
                }
                out.add_term(idx, x);
            }
        }
        WedgeState::from_vector(self.layout.clone(), out)
    }
}
