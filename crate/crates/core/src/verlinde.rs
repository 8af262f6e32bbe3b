//! The level-`k` `sl₂` Verlinde algebra and the generalized affine
//! Grassmannian limit.
//!
//! The basis `[0], …, [k]` multiplies by the truncated Clebsch–Gordan rule
//! `[a]·[b] = Σ [c]` over `c ≡ a + b (mod 2)`,
//! `|a − b| ≤ c ≤ min(a + b, 2k − a − b)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::{build_module_capped, WeightVector, DEFAULT_DIMENSION_CAP};
use crate::schubert::BundleWeights;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FusionRingElement {
    level: u32,
    coeffs: Vec<u64>,
}

impl FusionRingElement {
    pub fn zero(level: u32) -> Self {
        FusionRingElement {
            level,
            coeffs: vec![0; level as usize + 1],
        }
    }

    /// The basis element `[a]`.
    pub fn basis(level: u32, a: u32) -> Result<Self> {
        check_weight(level, a)?;
        let mut x = Self::zero(level);
        x.coeffs[a as usize] = 1;
        Ok(x)
    }

    /// `[0]`
    pub fn one(level: u32) -> Self {
        Self::basis(level, 0).expect("0 is always a weight")
    }

    pub fn from_coeffs(level: u32, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.len() != level as usize + 1 {
            return Err(Error::LengthMismatch {
                expected: level as usize + 1,
                got: coeffs.len(),
            });
        }
        Ok(FusionRingElement { level, coeffs })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, c: u32) -> u64 {
        self.coeffs.get(c as usize).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level, "levels differ");
        FusionRingElement {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Bilinear extension of [`fuse`].
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level, "levels differ");
        let k = self.level;
        let mut out = Self::zero(k);
        for (a, &x) in self.coeffs.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (b, &y) in other.coeffs.iter().enumerate().filter(|(_, &y)| y != 0) {
                for c in fusion_channels(k, a as u32, b as u32) {
                    out.coeffs[c as usize] += x * y;
                }
            }
        }
        out
    }

    /// `Σ coeff_c · (c + 1)`, the classical dimension.
    pub fn classical_dimension(&self) -> u128 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(c, &x)| x as u128 * (c as u128 + 1))
            .sum()
    }
}

impl fmt::Display for FusionRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(c, &x)| {
                if x == 1 {
                    format!("[{c}]")
                } else {
                    format!("{x}[{c}]")
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn check_weight(level: u32, a: u32) -> Result<()> {
    if a > level {
        return Err(Error::WeightOutOfRange { weight: a, level });
    }
    Ok(())
}

fn fusion_channels(k: u32, a: u32, b: u32) -> impl Iterator<Item = u32> {
    let lo = a.abs_diff(b);
    let hi = (a + b).min((2 * k).saturating_sub(a + b));
    (lo..=hi).step_by(2)
}

/// `[a]·[b]` at level `k`.
pub fn fuse(k: u32, a: u32, b: u32) -> Result<FusionRingElement> {
    check_weight(k, a)?;
    check_weight(k, b)?;
    let mut out = FusionRingElement::zero(k);
    for c in fusion_channels(k, a, b) {
        out.coeffs[c as usize] += 1;
    }
    Ok(out)
}

/// `((([w_1]·[w_2])·[w_3]) ⋯)`; the empty product is `[0]`.
pub fn product_chain(k: u32, weights: &[u32]) -> Result<FusionRingElement> {
    let mut acc = FusionRingElement::one(k);
    for &w in weights {
        acc = acc.mul(&FusionRingElement::basis(k, w)?);
    }
    Ok(acc)
}

/// `[w_1]·([w_2]·(⋯[w_n]))`.
pub fn product_chain_right(k: u32, weights: &[u32]) -> Result<FusionRingElement> {
    let mut acc = FusionRingElement::one(k);
    for &w in weights.iter().rev() {
        acc = FusionRingElement::basis(k, w)?.mul(&acc);
    }
    Ok(acc)
}

/// `sin((c+1)π/(k+2)) / sin(π/(k+2))`
pub fn quantum_dimension(k: u32, c: u32) -> f64 {
    let x = std::f64::consts::PI / (k as f64 + 2.0);
    ((c as f64 + 1.0) * x).sin() / x.sin()
}

/// Multiplicities of the level-`b_n` irreducibles in the limit section
/// space, read off `[b_1] ⋯ [b_n]` at level `b_n + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitDecomposition {
    pub weights: Vec<i64>,
    pub level: u32,
    /// `c_j` for `j = 0, …, b_n`.
    pub coeffs: Vec<u64>,
    /// Coefficient of `[b_n + 1]`, outside the range of the sum.
    pub boundary: u64,
    pub boundary_nonzero: bool,
}

fn nonnegative_weights(b: &BundleWeights) -> Result<Vec<u32>> {
    b.entries()
        .iter()
        .enumerate()
        .map(|(p, &x)| {
            u32::try_from(x).map_err(|_| Error::EntryTooSmall {
                position: p,
                value: x,
                min: 0,
            })
        })
        .collect()
}

pub fn limit_multiplicities(b: &BundleWeights) -> Result<LimitDecomposition> {
    let w = nonnegative_weights(b)?;
    let bn = *w.last().expect("bundle weights are nonempty");
    let level = bn + 1;
    let product = product_chain(level, &w)?;
    Ok(LimitDecomposition {
        weights: b.entries().to_vec(),
        level,
        coeffs: product.coeffs()[..=bn as usize].to_vec(),
        boundary: product.coeff(level),
        boundary_nonzero: product.coeff(level) != 0,
    })
}

/// At level `Σ b_i` nothing is truncated, so the product must have classical
/// dimension `∏ (b_i + 1)`.
pub fn classical_limit_check(b: &BundleWeights) -> Result<bool> {
    let w = nonnegative_weights(b)?;
    let k = w.iter().sum();
    let product = product_chain(k, &w)?;
    Ok(product.classical_dimension() == w.iter().map(|&x| x as u128 + 1).product())
}

/// `B^{(i)}`: `B` followed by `2i` copies of `b_n`.
pub fn extended_weights(b: &BundleWeights, i: u32) -> BundleWeights {
    let mut e = b.entries().to_vec();
    let last = *e.last().expect("bundle weights are nonempty");
    e.extend(std::iter::repeat_n(last, 2 * i as usize));
    BundleWeights::new(e).expect("appending the last entry keeps the order")
}

/// `dim H⁰(𝒪(B^{(i)})) = ∏ (b_j + 1) · (b_n + 1)^{2i}`.
pub fn grassmannian_section_dims(b: &BundleWeights, i: u32) -> Result<u128> {
    let w = nonnegative_weights(b)?;
    let base: u128 = w.iter().map(|&x| x as u128 + 1).product();
    Ok(base * (*w.last().unwrap() as u128 + 1).pow(2 * i))
}

/// Top-anchored character coefficients of one `M^{A^{(i)}}`: for each
/// depth `d` below the maximal energy, the multiplicity of each weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopSlice {
    pub i: u32,
    pub weights: WeightVector,
    pub dimension: usize,
    pub expected_dimension: u128,
    /// `(depth, weight, multiplicity)`, depth ≤ the requested maximum.
    pub coefficients: Vec<(i64, i64, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeComparison {
    /// Compares `i` with `i + 1`.
    pub i: u32,
    pub degree: i64,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizationReport {
    pub bundle: Vec<i64>,
    pub deg_max: i64,
    pub slices: Vec<TopSlice>,
    pub comparisons: Vec<DegreeComparison>,
    /// Smallest `i` from which every later comparison is stable.
    pub stable_from: Option<u32>,
    pub dimensions_match: bool,
}

pub fn character_stabilization(
    b: &BundleWeights,
    i_max: u32,
    deg_max: i64,
) -> Result<StabilizationReport> {
    character_stabilization_capped(b, i_max, deg_max, DEFAULT_DIMENSION_CAP)
}

pub fn character_stabilization_capped(
    b: &BundleWeights,
    i_max: u32,
    deg_max: i64,
    cap: usize,
) -> Result<StabilizationReport> {
    let mut slices = Vec::new();
    for i in 0..=i_max {
        let weights = extended_weights(b, i).shifted()?;
        let module = build_module_capped(&weights, cap)?;
        let top = module.character().from_top();
        let coefficients = top
            .terms()
            .filter(|&((_, d), _)| d <= deg_max)
            .map(|((w, d), m)| (d, w, m))
            .collect();
        slices.push(TopSlice {
            i,
            dimension: module.dimension(),
            expected_dimension: grassmannian_section_dims(b, i)?,
            weights,
            coefficients,
        });
    }
    let by_degree = |s: &TopSlice, d: i64| -> BTreeMap<i64, usize> {
        s.coefficients
            .iter()
            .filter(|c| c.0 == d)
            .map(|&(_, w, m)| (w, m))
            .collect()
    };
    let mut comparisons = Vec::new();
    for pair in slices.windows(2) {
        for d in 0..=deg_max {
            comparisons.push(DegreeComparison {
                i: pair[0].i,
                degree: d,
                stable: by_degree(&pair[0], d) == by_degree(&pair[1], d),
            });
        }
    }
    let stable_from = (0..i_max)
        .find(|&i| comparisons.iter().filter(|c| c.i >= i).all(|c| c.stable))
        .or((i_max == 0).then_some(0));
    let dimensions_match = slices
        .iter()
        .all(|s| s.dimension as u128 == s.expected_dimension);
    Ok(StabilizationReport {
        bundle: b.entries().to_vec(),
        deg_max,
        slices,
        comparisons,
        stable_from,
        dimensions_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(k: u32, coeffs: &[u64]) -> FusionRingElement {
        FusionRingElement::from_coeffs(k, coeffs.to_vec()).unwrap()
    }

    fn bw(xs: &[i64]) -> BundleWeights {
        BundleWeights::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn fuse_examples() {
        for k in 0..5 {
            for b in 0..=k {
                assert_eq!(
                    fuse(k, 0, b).unwrap(),
                    FusionRingElement::basis(k, b).unwrap()
                );
            }
        }
        assert_eq!(fuse(2, 1, 1).unwrap(), el(2, &[1, 0, 1]));
        assert_eq!(fuse(3, 2, 2).unwrap(), el(3, &[1, 0, 1, 0]));
        assert_eq!(
            fuse(2, 3, 0),
            Err(Error::WeightOutOfRange {
                weight: 3,
                level: 2
            })
        );
    }

    #[test]
    fn chain_examples() {
        assert_eq!(
            product_chain(4, &[3]).unwrap(),
            FusionRingElement::basis(4, 3).unwrap()
        );
        assert_eq!(product_chain(3, &[2, 2]).unwrap(), el(3, &[1, 0, 1, 0]));
        assert_eq!(product_chain(2, &[1, 1, 1]).unwrap(), el(2, &[0, 2, 0]));
        assert_eq!(product_chain(2, &[]).unwrap(), FusionRingElement::one(2));
    }

    #[test]
    fn limit_examples() {
        let l = limit_multiplicities(&bw(&[3])).unwrap();
        assert_eq!((l.coeffs, l.boundary), (vec![0, 0, 0, 1], 0));
        let l = limit_multiplicities(&bw(&[2, 2])).unwrap();
        assert_eq!(
            (l.level, l.coeffs, l.boundary, l.boundary_nonzero),
            (3, vec![1, 0, 1], 0, false)
        );
        let l = limit_multiplicities(&bw(&[1, 1])).unwrap();
        assert_eq!(
            (l.level, l.coeffs, l.boundary, l.boundary_nonzero),
            (2, vec![1, 0], 1, true)
        );
        assert!(limit_multiplicities(&bw(&[-1, 1])).is_err());
    }

    #[test]
    fn classical_examples() {
        assert!(classical_limit_check(&bw(&[1, 1])).unwrap());
        assert!(classical_limit_check(&bw(&[2, 2])).unwrap());
        assert!(classical_limit_check(&bw(&[1, 2, 2])).unwrap());
        assert!(classical_limit_check(&bw(&[0, 0])).unwrap());
    }

    #[test]
    fn section_dim_examples() {
        assert_eq!(grassmannian_section_dims(&bw(&[1]), 1).unwrap(), 8);
        assert_eq!(grassmannian_section_dims(&bw(&[1, 2]), 0).unwrap(), 6);
        assert_eq!(grassmannian_section_dims(&bw(&[1, 2]), 2).unwrap(), 486);
        assert_eq!(extended_weights(&bw(&[1, 2]), 1).entries(), &[1, 2, 2, 2]);
    }

    #[test]
    fn stabilization_small() {
        let r = character_stabilization(&bw(&[1]), 2, 2).unwrap();
        assert!(r.dimensions_match);
        for s in &r.slices {
            let top: Vec<_> = s.coefficients.iter().filter(|c| c.0 == 0).collect();
            assert!(!top.is_empty() && top.iter().all(|c| c.2 == 1));
        }
        let r = character_stabilization(&bw(&[1, 1]), 1, 2).unwrap();
        assert_eq!(
            r.slices.iter().map(|s| s.dimension).collect::<Vec<_>>(),
            vec![4, 16]
        );
    }
}
