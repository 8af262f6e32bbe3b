//! Types of weight vectors and Poincaré polynomials of the Schubert varieties.
//!
//! A type is a composition `{i_1, …, i_s}` of `n`: the run lengths of equal
//! consecutive entries. `hi ≥ lo` when every part of `lo` is a sum of
//! consecutive parts of `hi`, so `{1, …, 1}` is the maximum and `{n}` the
//! minimum.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::WeightVector;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(p) = parts.iter().position(|&x| x == 0) {
            return Err(Error::EntryTooSmall {
                position: p,
                value: 0,
                min: 1,
            });
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `n = Σ i_α`
    pub fn n(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn s(&self) -> usize {
        self.0.len()
    }

    /// `{1, …, 1}`
    pub fn finest(n: u32) -> Self {
        Composition(vec![1; n as usize])
    }

    /// `{n}`
    pub fn coarsest(n: u32) -> Self {
        Composition(vec![n])
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All `2^{n−1}` compositions of `n`, in lexicographic order of parts.
pub fn compositions(n: u32) -> Vec<Composition> {
    fn rec(left: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if left == 0 {
            out.push(Composition(cur.clone()));
            return;
        }
        for p in 1..=left {
            cur.push(p);
            rec(left - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, &mut Vec::new(), &mut out);
    }
    out
}

/// Run-length encoding of a weakly increasing integer vector.
pub fn type_of(a: &[i64]) -> Result<Composition> {
    if a.is_empty() {
        return Err(Error::Empty);
    }
    if a.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::NotWeaklyIncreasing(a.to_vec()));
    }
    let mut parts = vec![1u32];
    for w in a.windows(2) {
        if w[0] == w[1] {
            *parts.last_mut().unwrap() += 1;
        } else {
            parts.push(1);
        }
    }
    Ok(Composition(parts))
}

pub fn type_of_weights(a: &WeightVector) -> Composition {
    let xs: Vec<i64> = a.entries().iter().map(|&x| x as i64).collect();
    type_of(&xs).expect("weight vectors are nonempty and weakly increasing")
}

fn check_same_n(a: &Composition, b: &Composition) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::LengthMismatch {
            expected: a.n() as usize,
            got: b.n() as usize,
        });
    }
    Ok(())
}

/// `lo ≤ hi`: every part of `lo` is a sum of consecutive parts of `hi`.
pub fn leq(lo: &Composition, hi: &Composition) -> Result<bool> {
    check_same_n(lo, hi)?;
    let mut parts = hi.parts().iter();
    for &target in lo.parts() {
        let mut sum = 0;
        while sum < target {
            match parts.next() {
                Some(&p) => sum += p,
                None => return Ok(false),
            }
        }
        if sum != target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A_c = (2^{i_1}, 3^{i_2}, …, (s+1)^{i_s})`
pub fn canonical_a(c: &Composition) -> WeightVector {
    let entries = c
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(k, &len)| std::iter::repeat_n(k as u32 + 2, len as usize))
        .collect();
    WeightVector::new(entries).expect("canonical vector is weakly increasing")
}

/// The order read off weight vectors: `hi ≥ lo` iff for the canonical vectors
/// `A = A_hi`, `B = A_lo`, `a_i = a_{i+1}` forces `b_i = b_{i+1}`.
pub fn leq_by_equalities(lo: &Composition, hi: &Composition) -> Result<bool> {
    check_same_n(lo, hi)?;
    let a = canonical_a(hi);
    let b = canonical_a(lo);
    let (a, b) = (a.entries(), b.entries());
    Ok((0..a.len() - 1).all(|i| a[i] != a[i + 1] || b[i] == b[i + 1]))
}

/// Polynomial in `q²` with nonnegative integer coefficients; `coeffs[k]` is
/// the coefficient of `q^{2k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PoincarePolynomial {
    coeffs: Vec<u64>,
}

impl PoincarePolynomial {
    pub fn one() -> Self {
        PoincarePolynomial { coeffs: vec![1] }
    }

    pub fn from_even_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PoincarePolynomial { coeffs }
    }

    /// `1 + q² + … + q^{2k}`
    pub fn geometric(k: u32) -> Self {
        PoincarePolynomial {
            coeffs: vec![1; k as usize + 1],
        }
    }

    /// `q^{2k}`
    pub fn monomial(k: u32) -> Self {
        let mut coeffs = vec![0; k as usize + 1];
        coeffs[k as usize] = 1;
        PoincarePolynomial { coeffs }
    }

    pub fn even_coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `q^power`; zero for odd powers.
    pub fn coeff(&self, power: u32) -> u64 {
        if power % 2 == 1 {
            return 0;
        }
        self.coeffs.get(power as usize / 2).copied().unwrap_or(0)
    }

    /// Degree in `q`.
    pub fn degree(&self) -> u32 {
        2 * (self.coeffs.len() as u32 - 1)
    }

    pub fn at_one(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_even_coeffs(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let out = (0..len)
            .map(|k| self.coeffs.get(k).unwrap_or(&0) + other.coeffs.get(k).unwrap_or(&0))
            .collect();
        Self::from_even_coeffs(out)
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match k {
                0 => c.to_string(),
                _ if c == 1 => format!("q^{}", 2 * k),
                _ => format!("{c}q^{}", 2 * k),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `∏_α (1 − q^{2(i_α+1)}) / (1 − q²)`
pub fn poincare(c: &Composition) -> PoincarePolynomial {
    c.parts().iter().fold(PoincarePolynomial::one(), |acc, &i| {
        acc.mul(&PoincarePolynomial::geometric(i))
    })
}

/// Cell recursion for `{n}`: the open orbit adds cells of dimension `n` and
/// `n − 1`, the rest is the variety for `{n − 2}`.
pub fn poincare_recursive_single(n: u32) -> PoincarePolynomial {
    match n {
        0 => PoincarePolynomial::one(),
        1 => PoincarePolynomial::geometric(1),
        _ => PoincarePolynomial::monomial(n)
            .add(&PoincarePolynomial::monomial(n - 1))
            .add(&poincare_recursive_single(n - 2)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(xs: &[u32]) -> Composition {
        Composition::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn type_examples() {
        assert_eq!(type_of(&[2, 2, 3]).unwrap(), c(&[2, 1]));
        assert_eq!(type_of(&[2, 3, 4]).unwrap(), c(&[1, 1, 1]));
        assert_eq!(type_of(&[5, 5, 5, 5]).unwrap(), c(&[4]));
        assert_eq!(type_of(&[-1, -1, 0]).unwrap(), c(&[2, 1]));
    }

    #[test]
    fn type_rejects_decreasing() {
        assert!(matches!(
            type_of(&[3, 2]),
            Err(Error::NotWeaklyIncreasing(_))
        ));
        assert_eq!(type_of(&[]), Err(Error::Empty));
    }

    #[test]
    fn order_examples() {
        assert!(leq(&c(&[3]), &c(&[1, 1, 1])).unwrap());
        assert!(!leq(&c(&[2, 1]), &c(&[1, 2])).unwrap());
        assert!(!leq(&c(&[1, 2]), &c(&[2, 1])).unwrap());
        assert!(leq(&c(&[2, 1]), &c(&[2, 1])).unwrap());
        assert!(matches!(
            leq(&c(&[2]), &c(&[1, 2])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_a(&c(&[2, 1])).entries(), &[2, 2, 3]);
        assert_eq!(canonical_a(&c(&[4])).entries(), &[2, 2, 2, 2]);
        assert_eq!(canonical_a(&c(&[1, 1, 1])).entries(), &[2, 3, 4]);
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(poincare(&c(&[5])).even_coeffs(), &[1, 1, 1, 1, 1, 1]);
        assert_eq!(poincare(&c(&[1, 1, 1])).even_coeffs(), &[1, 3, 3, 1]);
        assert_eq!(poincare(&c(&[2, 1])).even_coeffs(), &[1, 2, 2, 1]);
        assert_eq!(poincare(&c(&[2, 1])).to_string(), "1 + 2q^2 + 2q^4 + q^6");
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(poincare_recursive_single(0), PoincarePolynomial::one());
        assert_eq!(poincare_recursive_single(2).even_coeffs(), &[1, 1, 1]);
        assert_eq!(poincare_recursive_single(5), poincare(&c(&[5])));
    }

    #[test]
    fn composition_count() {
        for n in 1..9 {
            assert_eq!(compositions(n).len(), 1 << (n - 1));
        }
    }
}
