//! The acceptance suite, shared by the test target and `sl2fusion selftest`.
//!
//! Each criterion returns a [`CriterionResult`]; `max_n` shrinks the
//! natural size parameter of each criterion for quick runs, and criteria that
//! cannot be witnessed at the reduced scale report themselves as skipped.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::fusion::{
    build_module, check_monomial_basis, check_relations, exact_sequence_check,
    special_case_dimension, WeightVector,
};
use crate::schubert::{
    bundle_split, canonical_flag, curve_degrees, flag_membership, group_act, line_bundle_exists,
    morphism_exists, sections_dim, BundleWeights, GroupElement,
};
use crate::types::{
    compositions, leq, leq_by_equalities, poincare, poincare_recursive_single, Composition,
};
use crate::verlinde::{
    character_stabilization, classical_limit_check, fuse, grassmannian_section_dims,
    limit_multiplicities, product_chain_right, quantum_dimension, FusionRingElement,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub skipped: bool,
    pub cases: usize,
    pub detail: String,
    pub millis: u128,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let status = match (self.skipped, self.passed) {
            (true, _) => "SKIP",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        format!(
            "[{status}] criterion {:>2} {}: {} ({} cases, {} ms)",
            self.id, self.name, self.detail, self.cases, self.millis
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Config {
    /// Upper bound on the number of entries / size parameter used anywhere.
    pub max_n: u32,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_n: u32::MAX,
            seed: 0,
        }
    }
}

struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(
        self,
        id: u32,
        name: &'static str,
        summary: String,
        start: Instant,
    ) -> CriterionResult {
        let passed = self.failures.is_empty();
        let detail = if passed {
            summary
        } else {
            let shown: Vec<_> = self.failures.iter().take(5).cloned().collect();
            format!(
                "{} failures, e.g. {}",
                self.failures.len(),
                shown.join("; ")
            )
        };
        CriterionResult {
            id,
            name,
            passed,
            skipped: false,
            cases: self.cases,
            detail,
            millis: start.elapsed().as_millis(),
        }
    }
}

fn skipped(id: u32, name: &'static str, why: String) -> CriterionResult {
    CriterionResult {
        id,
        name,
        passed: true,
        skipped: true,
        cases: 0,
        detail: why,
        millis: 0,
    }
}

/// Weakly increasing vectors with entries ≥ `min`, length ≤ `max_len`, and
/// `∏ (entry + shift) ≤ bound`.
pub fn bounded_vectors(min: u32, shift: u32, bound: u64, max_len: u32) -> Vec<Vec<u32>> {
    fn rec(
        start: u32,
        shift: u32,
        left: u64,
        max_len: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() as u32 == max_len {
            return;
        }
        let mut x = start;
        while ((x + shift) as u64) <= left {
            cur.push(x);
            rec(x, shift, left / (x + shift) as u64, max_len, cur, out);
            cur.pop();
            x += 1;
        }
    }
    let mut out = Vec::new();
    rec(min, shift, bound, max_len, &mut Vec::new(), &mut out);
    out
}

/// Weakly increasing vectors of length `n` with entries in `lo..=hi`.
pub fn increasing_in_range(n: u32, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                let from = v.last().copied().unwrap_or(lo);
                (from..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn wv(xs: &[u32]) -> WeightVector {
    WeightVector::new(xs.to_vec()).expect("enumerated vectors are valid")
}

fn product(xs: &[u32]) -> u128 {
    xs.iter().map(|&x| x as u128).product()
}

pub fn criterion_1(cfg: &Config) -> Result<CriterionResult> {
    let start = Instant::now();
    let name = "dimension theorem";
    let mut t = Tally::new();
    let vectors = bounded_vectors(2, 0, 256, cfg.max_n.min(8));
    for a in &vectors {
        let dim = build_module(&wv(a))?.dimension() as u128;
        t.check(dim == product(a), || {
            format!("{a:?}: {dim} ≠ {}", product(a))
        });
    }
    for n in 1..=cfg.max_n.min(6) {
        let dim = build_module(&wv(&vec![2; n as usize]))?.dimension();
        t.check(dim == 1 << n, || format!("(2^{n}) has dim {dim}"));
    }
    let summary = format!(
        "dim M^A = ∏a_i for all {} vectors with entries ≥ 2 and ∏ ≤ 256",
        vectors.len()
    );
    Ok(t.finish(1, name, summary, start))
}

pub fn criterion_2(cfg: &Config) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::new();
    for n in 1..=cfg.max_n.min(4) {
        let r = check_relations(n, 3)?;
        t.check(r.passed(), || {
            format!("n={n}: first violation {:?}", r.first_violation)
        });
    }
    Ok(t.finish(
        2,
        "defining relations",
        "low coefficients of e(z)^i v vanish for n ≤ 4, i ≤ 3".into(),
        start,
    ))
}

pub fn criterion_3(cfg: &Config) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::new();
    for n in 1..=cfg.max_n.min(6) {
        let r = check_monomial_basis(n)?;
        let binomials: Vec<usize> = (0..=n as usize).map(|k| binomial(n as usize, k)).collect();
        t.check(
            r.passed() && r.counts_by_length == binomials && r.rank_by_weight == binomials,
            || {
                format!(
                    "n={n}: rank {} counts {:?} by weight {:?}",
                    r.rank, r.counts_by_length, r.rank_by_weight
                )
            },
        );
    }
    Ok(t.finish(
        3,
        "monomial basis",
        "C(n,k)-counted monomials give a basis of M^(2^n), n ≤ 6".into(),
        start,
    ))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

pub fn criterion_4(cfg: &Config) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut special = 0;
    for a in bounded_vectors(2, 0, 128, cfg.max_n.min(7))
        .iter()
        .filter(|a| a.len() >= 2)
    {
        let a = wv(a);
        for i in 1..a.len() {
            let r = exact_sequence_check(&a, i)?;
            t.check(r.holds, || {
                format!(
                    "{a}, i={i}: {} + {} ≠ {}",
                    r.submodule_dim, r.quotient_dim, r.module_dim
                )
            });
            if let Some(d) = special_case_dimension(&a, i) {
                special += 1;
                t.check(d == r.submodule_dim as u128, || {
                    format!("{a}, i={i}: closed form {d} ≠ {}", r.submodule_dim)
                });
            }
        }
    }
    let summary =
        format!("dim additivity for all (A, i) with ∏ ≤ 128, {special} closed-form cases");
    Ok(t.finish(4, "exact sequence", summary, start))
}

pub fn criterion_5(cfg: &Config) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::new();
    for n in 1..=cfg.max_n.min(12) {
        let closed = poincare(&Composition::coarsest(n));
        t.check(poincare_recursive_single(n) == closed, || {
            format!("{{{n}}}: recursion differs")
        });
    }
    for n in 1..=cfg.max_n.min(8) {
        for c in compositions(n) {
            for split in 1..c.s() {
                let ok = bundle_split(&c, split)?.identity_holds;
                t.check(ok, || format!("{c}, t={split}"));
            }
            let at_one = poincare(&c).at_one();
            let expected: u64 = c.parts().iter().map(|&i| i as u64 + 1).product();
            t.check(at_one == expected, || format!("{c}: P(1) = {at_one}"));
        }
    }
    Ok(t.finish(
        5,
        "Poincaré polynomials",
        "closed form = recursion, bundle factorization, P(1) = ∏(i_α+1)".into(),
        start,
    ))
}

pub fn criterion_6(cfg: &Config) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::new();
    for n in 1..=cfg.max_n.min(7) {
        let cs = compositions(n);
        for a in &cs {
            t.check(leq(a, a)?, || format!("{a} not reflexive"));
            for b in &cs {
                if leq(a, b)? && leq(b, a)? {
                    t.check(a == b, || format!("{a}, {b} violate antisymmetry"));
                }
                for c in &cs {
                    if leq(a, b)? && leq(b, c)? {
                        t.check(leq(a, c)?, || format!("{a} ≤ {b} ≤ {c} not transitive"));
                    }
                }
            }
        }
        let maxima: Vec<_> = cs
            .iter()
            .filter(|c| cs.iter().all(|d| leq(d, c).unwrap()))
            .collect();
        let minima: Vec<_> = cs
            .iter()
            .filter(|c| cs.iter().all(|d| leq(c, d).unwrap()))
            .collect();
        t.check(maxima == vec![&Composition::finest(n)], || {
            format!("n={n}: maxima {maxima:?}")
        });
        t.check(minima == vec![&Composition::coarsest(n)], || {
            format!("n={n}: minima {minima:?}")
        });
    }
    for n in 1..=cfg.max_n.min(6) {
        let cs = compositions(n);
        for a in &cs {
            for b in &cs {
                let m = morphism_exists(a, b)?;
                t.check(m == leq(b, a)? && m == leq_by_equalities(b, a)?, || {
                    format!("{a} → {b}")
                });
            }
        }
    }
    Ok(t.finish(
        6,
        "type lattice",
        "partial order with unique max/min (n ≤ 7), morphisms agree with both orders (n ≤ 6)"
            .into(),
        start,
    ))
}

pub fn criterion_7(cfg: &Config) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::new();
    for n in 1..=cfg.max_n.min(5) {
        let cs = compositions(n);
        for b in increasing_in_range(n, 0, 3) {
            let bw = BundleWeights::new(b.iter().map(|&x| x as i64).collect())?;
            for c in &cs {
                if !line_bundle_exists(&bw, c)? {
                    continue;
                }
                for d in cs.iter().filter(|d| leq(c, d).unwrap()) {
                    t.check(line_bundle_exists(&bw, d)?, || {
                        format!("{b:?} exists on {c} but not on {d}")
                    });
                }
            }
        }
    }
    let mut oracle_cases = 0;
    for b in bounded_vectors(0, 1, 128, cfg.max_n.min(7)) {
        let bw = BundleWeights::new(b.iter().map(|&x| x as i64).collect())?;
        let dim = build_module(&bw.shifted()?)?.dimension() as u128;
        for c in compositions(b.len() as u32) {
            if line_bundle_exists(&bw, &c)? {
                oracle_cases += 1;
                let s = sections_dim(&bw, &c)?;
                t.check(s == dim, || format!("{b:?} on {c}: {s} ≠ module {dim}"));
            }
        }
    }
    let hand: [(&[i64], &[i64]); 3] = [
        (&[1, 2], &[3, 1]),
        (&[0, 0, 0], &[0, 0, 0]),
        (&[1, 1, 1], &[3, 2, 1]),
    ];
    for (b, expected) in hand {
        let got = curve_degrees(&BundleWeights::new(b.to_vec())?);
        t.check(got == expected, || format!("degrees of {b:?}: {got:?}"));
    }
    let summary =
        format!("existence monotone, {oracle_cases} section dims match the module, curve degrees");
    Ok(t.finish(7, "line-bundle calculus", summary, start))
}

pub fn criterion_8(cfg: &Config) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::new();
    for n in 1..=cfg.max_n.min(5) {
        for c in compositions(n) {
            t.check(flag_membership(&canonical_flag(&c), &c)?, || {
                format!("canonical flag of {c}")
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for n in 1..=cfg.max_n.min(4) {
        for c in compositions(n) {
            let flag = canonical_flag(&c);
            for k in 0..200 {
                let g = GroupElement::random(n, 4, &mut rng);
                let moved = group_act(&g, &flag)?;
                t.check(flag_membership(&moved, &c)?, || {
                    format!("{c}: element {k} leaves the flag variety")
                });
            }
        }
    }
    Ok(t.finish(
        8,
        "flag model",
        "canonical flags (n ≤ 5) and 200 random group elements per type (n ≤ 4)".into(),
        start,
    ))
}

pub fn criterion_9(cfg: &Config) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::new();
    for k in 0..=5 {
        for a in 0..=k {
            for b in 0..=k {
                t.check(fuse(k, a, b)? == fuse(k, b, a)?, || {
                    format!("k={k}: [{a}][{b}] not commutative")
                });
                for c in 0..=k {
                    let left = fuse(k, a, b)?.mul(&FusionRingElement::basis(k, c)?);
                    let right = FusionRingElement::basis(k, a)?.mul(&fuse(k, b, c)?);
                    t.check(left == right, || {
                        format!("k={k}: ([{a}][{b}])[{c}] ≠ [{a}]([{b}][{c}])")
                    });
                }
            }
        }
    }
    let bundles = bounded_vectors(0, 1, 64, cfg.max_n.min(6));
    for b in &bundles {
        let bw = BundleWeights::new(b.iter().map(|&x| x as i64).collect())?;
        t.check(classical_limit_check(&bw)?, || {
            format!("classical limit of {b:?}")
        });
        let limit = limit_multiplicities(&bw)?;
        let right = product_chain_right(limit.level, b)?;
        let mut coeffs = limit.coeffs.clone();
        coeffs.push(limit.boundary);
        t.check(right.coeffs() == coeffs.as_slice(), || {
            format!("{b:?}: left fold {coeffs:?}, right fold {right}")
        });
    }
    // the one inexact check: quantum dimensions are a character of the ring
    let mut worst: f64 = 0.0;
    for k in 0..=5 {
        for a in 0..=k {
            for b in 0..=k {
                let prod = fuse(k, a, b)?;
                let lhs: f64 = prod
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(c, &m)| m as f64 * quantum_dimension(k, c as u32))
                    .sum();
                let rhs = quantum_dimension(k, a) * quantum_dimension(k, b);
                worst = worst.max((lhs - rhs).abs());
            }
        }
    }
    t.check(worst < 1e-9, || {
        format!("quantum dimension defect {worst:e}")
    });
    let summary = format!(
        "ring axioms k ≤ 5, classical limit and fold agreement for {} bundles, qdim defect {worst:.1e}",
        bundles.len()
    );
    Ok(t.finish(9, "Verlinde algebra", summary, start))
}

/// Largest `i` used for each bundle; `(1, 2)` needs `i = 3` to exhibit two
/// consecutive equal slices beyond the first change.
pub const STABILIZATION_CASES: [(&[i64], u32); 3] = [(&[1], 3), (&[1, 1], 3), (&[1, 2], 3)];

pub fn criterion_10(cfg: &Config) -> Result<CriterionResult> {
    let start = Instant::now();
    let name = "Grassmannian stabilization";
    let mut t = Tally::new();
    let mut found = Vec::new();
    for (b, i_max) in STABILIZATION_CASES {
        let needed = b.len() as u32 + 2 * i_max;
        if needed > cfg.max_n {
            return Ok(skipped(
                10,
                name,
                format!("needs n = {needed} for B = {b:?}"),
            ));
        }
        let bw = BundleWeights::new(b.to_vec())?;
        let r = character_stabilization(&bw, i_max, 2)?;
        let i0 = r.stable_from;
        t.check(i0.is_some_and(|i| i <= 2), || {
            format!("{b:?}: stable from {i0:?}")
        });
        for s in r.slices.iter().filter(|s| s.i <= 2) {
            let expected = grassmannian_section_dims(&bw, s.i)?;
            t.check(s.dimension as u128 == expected, || {
                format!("{b:?}, i={}: dim {} ≠ {expected}", s.i, s.dimension)
            });
        }
        found.push(format!(
            "{b:?}: i₀ = {}",
            i0.map_or("none".into(), |i| i.to_string())
        ));
    }
    Ok(t.finish(
        10,
        name,
        format!("q-degree ≤ 2 from the top; {}", found.join(", ")),
        start,
    ))
}

pub fn run_all(cfg: &Config) -> Result<Vec<CriterionResult>> {
    let criteria: [fn(&Config) -> Result<CriterionResult>; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    criteria.iter().map(|c| c(cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        // entries ≥ 2, product ≤ 8: (2) (3) … (8), (2,2) (2,3) (2,4), (2,2,2)
        assert_eq!(bounded_vectors(2, 0, 8, 8).len(), 11);
        assert_eq!(bounded_vectors(0, 1, 4, 2).len(), 4 + 5);
        assert_eq!(increasing_in_range(2, 0, 3).len(), 10);
    }

    #[test]
    fn reduced_scale_skips() {
        let cfg = Config { max_n: 3, seed: 0 };
        assert!(criterion_10(&cfg).unwrap().skipped);
        assert!(criterion_2(&cfg).unwrap().passed);
    }
}
