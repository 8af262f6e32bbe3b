//! Schubert varieties `Sh_{is}` through their computable shadows: the
//! isomorphism and morphism predicates, line bundles `𝒪(B)`, Hilbert data of
//! the coordinate ring, and the flag model acted on by `SL₂(ℚ[t]/tⁿ)`.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::WeightVector;
use crate::linalg::{int, Scalar, SpanBasis, SparseVector};
use crate::types::{leq, poincare, type_of, type_of_weights, Composition, PoincarePolynomial};
use num_traits::{One, Zero};

/// `Sh_{is}` named by its type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchubertLabel {
    pub composition: Composition,
}

impl SchubertLabel {
    pub fn new(composition: Composition) -> Self {
        SchubertLabel { composition }
    }

    pub fn of_weights(a: &WeightVector) -> Result<Self> {
        a.require_min(2)?;
        Ok(SchubertLabel {
            composition: type_of_weights(a),
        })
    }

    pub fn n(&self) -> u32 {
        self.composition.n()
    }

    pub fn s(&self) -> usize {
        self.composition.s()
    }

    pub fn canonical_a(&self) -> WeightVector {
        crate::types::canonical_a(&self.composition)
    }

    pub fn poincare(&self) -> PoincarePolynomial {
        poincare(&self.composition)
    }
}

/// `Sh_A ≅ Sh_B` exactly when `A` and `B` have the same type.
pub fn isomorphic(a: &WeightVector, b: &WeightVector) -> Result<bool> {
    Ok(SchubertLabel::of_weights(a)? == SchubertLabel::of_weights(b)?)
}

/// An equivariant surjection `Sh_from → Sh_to` exists iff `from ≥ to`.
pub fn morphism_exists(from: &Composition, to: &Composition) -> Result<bool> {
    leq(to, from)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleSplit {
    pub fiber: Composition,
    pub base: Composition,
    pub identity_holds: bool,
}

/// Splits `c` after `t` parts and checks `P_c = P_fiber · P_base`.
pub fn bundle_split(c: &Composition, t: usize) -> Result<BundleSplit> {
    let s = c.s();
    if t == 0 || t >= s {
        return Err(Error::IndexOutOfRange {
            index: t,
            lo: 1,
            hi: s.saturating_sub(1),
        });
    }
    let fiber = Composition::new(c.parts()[..t].to_vec())?;
    let base = Composition::new(c.parts()[t..].to_vec())?;
    let identity_holds = poincare(c) == poincare(&fiber).mul(&poincare(&base));
    Ok(BundleSplit {
        fiber,
        base,
        identity_holds,
    })
}

/// Weights `B = (b_1 ≤ … ≤ b_n)` of a line bundle `𝒪(B)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct BundleWeights(Vec<i64>);

impl BundleWeights {
    pub fn new(b: Vec<i64>) -> Result<Self> {
        type_of(&b)?;
        Ok(BundleWeights(b))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn type_of(&self) -> Composition {
        type_of(&self.0).expect("validated on construction")
    }

    /// `B + 1` entrywise, for nonnegative `B`.
    pub fn shifted(&self) -> Result<WeightVector> {
        self.require_nonnegative()?;
        WeightVector::new(self.0.iter().map(|&b| b as u32 + 1).collect())
    }

    fn require_nonnegative(&self) -> Result<()> {
        match self.0.iter().position(|&b| b < 0) {
            Some(p) => Err(Error::EntryTooSmall {
                position: p,
                value: self.0[p],
                min: 0,
            }),
            None => Ok(()),
        }
    }
}

/// `𝒪(B)` exists on `Sh_c` iff `type(B) ≤ c`.
pub fn line_bundle_exists(b: &BundleWeights, c: &Composition) -> Result<bool> {
    if b.len() != c.n() as usize {
        return Err(Error::LengthMismatch {
            expected: c.n() as usize,
            got: b.len(),
        });
    }
    leq(&b.type_of(), c)
}

/// Degrees of `𝒪(B)` on the curves `C_0, …, C_{n−1}`: `b_1 + … + b_{n−j}`.
pub fn curve_degrees(b: &BundleWeights) -> Vec<i64> {
    let n = b.len();
    (0..n).map(|j| b.entries()[..n - j].iter().sum()).collect()
}

/// `dim H⁰(𝒪(B), Sh_c) = dim M^{B+1} = ∏ (b_i + 1)`.
pub fn sections_dim(b: &BundleWeights, c: &Composition) -> Result<u128> {
    b.require_nonnegative()?;
    if !line_bundle_exists(b, c)? {
        return Err(Error::NoSuchBundle {
            weights: b.entries().to_vec(),
            composition: c.parts().to_vec(),
        });
    }
    Ok(b.entries().iter().map(|&x| x as u128 + 1).product())
}

/// Rank of the lattice of admissible `B`: those constant on each block of
/// `c`.
pub fn picard_rank(c: &Composition) -> usize {
    c.s()
}

/// `dim (M^{A_i})*` for `A_i = (i a_1 − i + 1, …, i a_n − i + 1)`,
/// `i = 0, …, i_max`.
pub fn coordinate_ring_dims(a: &WeightVector, i_max: u32) -> Vec<u128> {
    (0..=i_max as u128)
        .map(|i| {
            a.entries()
                .iter()
                .map(|&x| i * (x as u128 - 1) + 1)
                .product()
        })
        .collect()
}

/// The weights `A_i` of the degree-`i` piece of the coordinate ring.
pub fn coordinate_ring_weights(a: &WeightVector, i: u32) -> WeightVector {
    WeightVector::new(a.entries().iter().map(|&x| i * (x - 1) + 1).collect())
        .expect("entries stay ≥ 1 and ordered")
}

/// Element of `ℚ[t]/tⁿ`, dense in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPoly {
    coeffs: Vec<Scalar>,
}

impl TruncatedPoly {
    pub fn zero(n: u32) -> Self {
        TruncatedPoly {
            coeffs: vec![Scalar::zero(); n as usize],
        }
    }

    pub fn constant(n: u32, c: Scalar) -> Self {
        let mut p = Self::zero(n);
        if n > 0 {
            p.coeffs[0] = c;
        }
        p
    }

    /// `c tʲ`, zero when `j ≥ n`.
    pub fn monomial(n: u32, j: u32, c: Scalar) -> Self {
        let mut p = Self::zero(n);
        if j < n {
            p.coeffs[j as usize] = c;
        }
        p
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        TruncatedPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        TruncatedPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len();
        let mut out = Self::zero(n as u32);
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                out.coeffs[i + j] += &(a * b);
            }
        }
        out
    }
}

impl std::fmt::Display for TruncatedPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                if k == 0 {
                    c.to_string()
                } else {
                    format!("({c})t^{k}")
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

/// Basis index of `ℂ² ⊗ ℂ[t]/tⁿ`: `v_i ↦ i`, `u_i ↦ n + i`.
pub fn v_index(i: u32) -> u32 {
    i
}

pub fn u_index(n: u32, i: u32) -> u32 {
    n + i
}

/// `g ∈ SL₂(ℚ[t]/tⁿ)` acting on `ℂ² ⊗ ℂ[t]/tⁿ`; `m[r][c]` is the entry in
/// row `r`, column `c`, over the basis `(v, u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    n: u32,
    m: [[TruncatedPoly; 2]; 2],
}

impl GroupElement {
    pub fn new(n: u32, m: [[TruncatedPoly; 2]; 2]) -> Result<Self> {
        if m.iter().flatten().any(|p| p.coeffs.len() != n as usize) {
            return Err(Error::LengthMismatch {
                expected: n as usize,
                got: m
                    .iter()
                    .flatten()
                    .map(|p| p.coeffs.len())
                    .find(|&l| l != n as usize)
                    .unwrap(),
            });
        }
        let g = GroupElement { n, m };
        let det = g.det();
        if det != TruncatedPoly::constant(n, Scalar::one()) {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        Ok(g)
    }

    pub fn identity(n: u32) -> Self {
        let one = TruncatedPoly::constant(n, Scalar::one());
        let zero = TruncatedPoly::zero(n);
        GroupElement {
            n,
            m: [[one.clone(), zero.clone()], [zero, one]],
        }
    }

    /// `exp(z e_j) = 1 + z tʲ e`, with `e: v ↦ u`.
    pub fn exp_e(n: u32, j: u32, z: Scalar) -> Self {
        let mut g = Self::identity(n);
        g.m[1][0] = TruncatedPoly::monomial(n, j, z);
        g
    }

    /// `exp(z f_j) = 1 + z tʲ f`, with `f: u ↦ v`.
    pub fn exp_f(n: u32, j: u32, z: Scalar) -> Self {
        let mut g = Self::identity(n);
        g.m[0][1] = TruncatedPoly::monomial(n, j, z);
        g
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> &TruncatedPoly {
        &self.m[row][col]
    }

    pub fn det(&self) -> TruncatedPoly {
        self.m[0][0]
            .mul(&self.m[1][1])
            .sub(&self.m[0][1].mul(&self.m[1][0]))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let entry = |r: usize, c: usize| {
            self.m[r][0]
                .mul(&other.m[0][c])
                .add(&self.m[r][1].mul(&other.m[1][c]))
        };
        GroupElement {
            n: self.n,
            m: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
        }
    }

    /// A product of `factors` elements `exp(z e_j)` or `exp(z f_j)` with
    /// random `j` and random rational `z`.
    pub fn random<R: Rng>(n: u32, factors: usize, rng: &mut R) -> Self {
        (0..factors).fold(Self::identity(n), |acc, _| {
            let j = rng.gen_range(0..n);
            let z = Scalar::new(rng.gen_range(-5..=5), rng.gen_range(1..=4));
            let step = if rng.gen_bool(0.5) {
                Self::exp_e(n, j, z)
            } else {
                Self::exp_f(n, j, z)
            };
            acc.mul(&step)
        })
    }

    pub fn apply(&self, x: &SparseVector<u32>) -> SparseVector<u32> {
        let n = self.n;
        let mut out = SparseVector::zero();
        for (&idx, c) in x.iter() {
            let (col, i) = if idx < n { (0, idx) } else { (1, idx - n) };
            for row in 0..2 {
                for (k, a) in self.m[row][col].coeffs.iter().enumerate() {
                    let deg = i + k as u32;
                    if a.is_zero() || deg >= n {
                        continue;
                    }
                    out.add_term(
                        if row == 0 {
                            v_index(deg)
                        } else {
                            u_index(n, deg)
                        },
                        a * c,
                    );
                }
            }
        }
        out
    }
}

/// Chain `W_1 ⊇ … ⊇ W_s` of subspaces of `ℂ² ⊗ ℂ[t]/tⁿ`; `W_0` is the whole
/// space.
#[derive(Debug, Clone)]
pub struct FlagChain {
    n: u32,
    subspaces: Vec<SpanBasis<u32>>,
}

impl FlagChain {
    pub fn new(n: u32, subspaces: Vec<SpanBasis<u32>>) -> Result<Self> {
        for w in &subspaces {
            if let Some(&p) = w.rows().flat_map(|r| r.indices()).find(|&&i| i >= 2 * n) {
                return Err(Error::IndexOutOfRange {
                    index: p as usize,
                    lo: 0,
                    hi: 2 * n as usize - 1,
                });
            }
        }
        Ok(FlagChain { n, subspaces })
    }

    /// Chain from explicit spanning sets.
    pub fn from_spans(n: u32, spans: &[Vec<SparseVector<u32>>]) -> Result<Self> {
        let subspaces = spans
            .iter()
            .map(|vs| {
                let mut b = SpanBasis::new();
                b.extend(vs);
                b
            })
            .collect();
        Self::new(n, subspaces)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn subspaces(&self) -> &[SpanBasis<u32>] {
        &self.subspaces
    }

    pub fn dimensions(&self) -> Vec<usize> {
        self.subspaces.iter().map(|w| w.dimension()).collect()
    }

    /// `W_α` for `α = 0, …, s`.
    fn level(&self, alpha: usize) -> SpanBasis<u32> {
        match alpha {
            0 => full_space(self.n),
            _ => self.subspaces[alpha - 1].clone(),
        }
    }
}

fn full_space(n: u32) -> SpanBasis<u32> {
    let mut b = SpanBasis::new();
    for i in 0..2 * n {
        b.insert(&SparseVector::unit(i));
    }
    b
}

/// Multiplication by `tᵏ`.
pub fn t_power(n: u32, k: u32, x: &SparseVector<u32>) -> SparseVector<u32> {
    SparseVector::from_terms(x.iter().filter_map(|(&idx, c)| {
        let (base, i) = if idx < n { (0, idx) } else { (n, idx - n) };
        (i + k < n).then(|| (base + i + k, c.clone()))
    }))
}

/// `W_α = ⟨v_0, …, v_{n−1}, u_j : j ≥ i_s + … + i_{s−α+1}⟩`.
pub fn canonical_flag(c: &Composition) -> FlagChain {
    let n = c.n();
    let parts = c.parts();
    let s = parts.len();
    let subspaces = (1..=s)
        .map(|alpha| {
            let from: u32 = parts[s - alpha..].iter().sum();
            let mut w = SpanBasis::new();
            for i in 0..n {
                w.insert(&SparseVector::unit(v_index(i)));
            }
            for j in from..n {
                w.insert(&SparseVector::unit(u_index(n, j)));
            }
            w
        })
        .collect();
    FlagChain { n, subspaces }
}

/// The individual conditions of the flag description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagReport {
    pub length_matches: bool,
    pub nested: bool,
    pub t_stable: bool,
    pub codimensions: bool,
    pub t_power_condition: bool,
}

impl FlagReport {
    pub fn holds(&self) -> bool {
        self.length_matches
            && self.nested
            && self.t_stable
            && self.codimensions
            && self.t_power_condition
    }
}

fn subset(a: &SpanBasis<u32>, b: &SpanBasis<u32>) -> bool {
    a.rows().all(|r| b.contains(r))
}

pub fn flag_report(chain: &FlagChain, c: &Composition) -> Result<FlagReport> {
    let n = c.n();
    if chain.n != n {
        return Err(Error::LengthMismatch {
            expected: n as usize,
            got: chain.n as usize,
        });
    }
    let s = c.s();
    let parts = c.parts();
    if chain.subspaces.len() != s {
        return Ok(FlagReport {
            length_matches: false,
            nested: false,
            t_stable: false,
            codimensions: false,
            t_power_condition: false,
        });
    }
    let levels: Vec<SpanBasis<u32>> = (0..=s).map(|a| chain.level(a)).collect();
    let nested = (0..s).all(|a| subset(&levels[a + 1], &levels[a]));
    let t_stable = levels
        .iter()
        .all(|w| w.rows().all(|r| w.contains(&t_power(n, 1, r))));
    // i_{s−α} with 1-based parts is parts[s − α − 1]
    let codimensions = (0..s).all(|a| {
        levels[a].dimension() as i64 - levels[a + 1].dimension() as i64 == parts[s - a - 1] as i64
    });
    let t_power_condition = (0..s).all(|a| {
        levels[a]
            .rows()
            .all(|r| levels[a + 1].contains(&t_power(n, parts[s - a - 1], r)))
    });
    Ok(FlagReport {
        length_matches: true,
        nested,
        t_stable,
        codimensions,
        t_power_condition,
    })
}

/// Whether `chain` is a point of `Fl_c`.
pub fn flag_membership(chain: &FlagChain, c: &Composition) -> Result<bool> {
    Ok(flag_report(chain, c)?.holds())
}

pub fn group_act(g: &GroupElement, chain: &FlagChain) -> Result<FlagChain> {
    if g.n != chain.n {
        return Err(Error::LengthMismatch {
            expected: chain.n as usize,
            got: g.n as usize,
        });
    }
    let subspaces = chain
        .subspaces
        .iter()
        .map(|w| {
            let mut out = SpanBasis::new();
            for r in w.rows() {
                out.insert(&g.apply(r));
            }
            out
        })
        .collect();
    Ok(FlagChain {
        n: chain.n,
        subspaces,
    })
}

/// Spanning vectors `v_i + z u_i` of `exp(z e_0) · W_1` for `{n}`.
pub fn exp_e0_image_of_v(n: u32, z: &Scalar) -> Vec<SparseVector<u32>> {
    (0..n)
        .map(|i| SparseVector::from_terms([(v_index(i), int(1)), (u_index(n, i), z.clone())]))
        .collect()
}
