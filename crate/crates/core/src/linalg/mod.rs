//! Exact sparse linear algebra over the rationals.
//!
//! Vectors are maps from an ordered basis index to a nonzero rational
//! coefficient. [`SpanBasis`] keeps a subspace in reduced row-echelon form:
//! every row is keyed by its pivot (its smallest index), carries coefficient
//! one there, and vanishes at the pivots of all other rows. Reduction of a
//! vector against the basis is then a single pass over its entries.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

mod scalar;

pub use scalar::Scalar;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(n)
}

pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(num, den)
}

/// A finitely supported vector with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseVector<I: Ord> {
    entries: BTreeMap<I, Scalar>,
}

impl<I: Ord> Default for SparseVector<I> {
    fn default() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }
}

impl<I: Ord + Clone> SparseVector<I> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(index: I) -> Self {
        let mut v = Self::zero();
        v.entries.insert(index, Scalar::one());
        v
    }

    /// Builds a vector from `(index, coefficient)` pairs, summing repeats
    /// and dropping zeros.
    pub fn from_terms<T: IntoIterator<Item = (I, Scalar)>>(terms: T) -> Self {
        let mut v = Self::zero();
        for (i, c) in terms {
            v.add_term(i, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of nonzero coefficients.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: &I) -> Option<&Scalar> {
        self.entries.get(index)
    }

    pub fn coeff(&self, index: &I) -> Scalar {
        self.entries
            .get(index)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&I, &Scalar)> {
        self.entries.iter()
    }

    pub fn indices(&self) -> impl Iterator<Item = &I> {
        self.entries.keys()
    }

    /// Smallest index with a nonzero coefficient.
    pub fn leading(&self) -> Option<(&I, &Scalar)> {
        self.entries.iter().next()
    }

    pub fn add_term(&mut self, index: I, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(index) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Scalar, other: &Self) {
        if c.is_zero() {
            return;
        }
        if other.entries.len() * 8 < self.entries.len() {
            for (i, x) in &other.entries {
                self.add_term(i.clone(), c * x);
            }
            return;
        }
        // comparable sizes: merge the two sorted maps
        let mine = std::mem::take(&mut self.entries);
        let mut merged = Vec::with_capacity(mine.len() + other.entries.len());
        let mut a = mine.into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) => match i.cmp(j) {
                    std::cmp::Ordering::Less => merged.push(a.next().unwrap()),
                    std::cmp::Ordering::Greater => {
                        let (j, y) = b.next().unwrap();
                        merged.push((j.clone(), c * y));
                    }
                    std::cmp::Ordering::Equal => {
                        let (i, x) = a.next().unwrap();
                        let (_, y) = b.next().unwrap();
                        let z = x + c * y;
                        if !z.is_zero() {
                            merged.push((i, z));
                        }
                    }
                },
                (Some(_), None) => merged.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, y) = b.next().unwrap();
                    merged.push((j.clone(), c * y));
                }
                (None, None) => break,
            }
        }
        self.entries = merged.into_iter().collect();
    }

    pub fn scale(&mut self, c: &Scalar) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for x in self.entries.values_mut() {
            *x *= c;
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut v = self.clone();
        v.scale(c);
        v
    }

    /// Maps every index through `f`, summing coefficients that collide.
    pub fn map_indices<J: Ord + Clone, F: FnMut(&I) -> J>(&self, mut f: F) -> SparseVector<J> {
        SparseVector::from_terms(self.entries.iter().map(|(i, c)| (f(i), c.clone())))
    }
}

impl<I: Ord + Clone> std::ops::Add for SparseVector<I> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.axpy(&Scalar::one(), &rhs);
        self
    }
}

impl<I: Ord + Clone> std::ops::Sub for SparseVector<I> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.axpy(&-Scalar::one(), &rhs);
        self
    }
}

impl<I: Ord + Clone> FromIterator<(I, Scalar)> for SparseVector<I> {
    fn from_iter<T: IntoIterator<Item = (I, Scalar)>>(iter: T) -> Self {
        Self::from_terms(iter)
    }
}

impl<I: Ord + fmt::Debug> fmt::Debug for SparseVector<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_negative() {
                write!(f, "({c})·{i:?}")?;
            } else {
                write!(f, "{c}·{i:?}")?;
            }
        }
        Ok(())
    }
}

/// A subspace kept in reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct SpanBasis<I: Ord> {
    rows: BTreeMap<I, SparseVector<I>>,
}

impl<I: Ord> Default for SpanBasis<I> {
    fn default() -> Self {
        Self {
            rows: BTreeMap::new(),
        }
    }
}

impl<I: Ord + Clone> SpanBasis<I> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &I> {
        self.rows.keys()
    }

    /// Rows in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVector<I>> {
        self.rows.values()
    }

    /// Residual of `v` after elimination against every row. Zero exactly
    /// when `v` lies in the span.
    pub fn reduce(&self, v: &SparseVector<I>) -> SparseVector<I> {
        let mut out = v.clone();
        // Rows vanish at each other's pivots, so the coefficients of `v` at
        // pivot positions are exactly the multipliers needed.
        let hits: Vec<(I, Scalar)> = v
            .iter()
            .filter(|(i, _)| self.rows.contains_key(i))
            .map(|(i, c)| (i.clone(), c.clone()))
            .collect();
        for (p, c) in hits {
            out.axpy(&-c, &self.rows[&p]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVector<I>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVector<I>) -> bool {
        let mut r = self.reduce(v);
        let Some((pivot, lead)) = r.leading() else {
            return false;
        };
        let pivot = pivot.clone();
        let inv = lead.recip();
        r.scale(&inv);
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                row.axpy(&-c, &r);
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    /// Inserts every vector, returning how many grew the span.
    pub fn extend<'a, T>(&mut self, vs: T) -> usize
    where
        T: IntoIterator<Item = &'a SparseVector<I>>,
        I: 'a,
    {
        vs.into_iter().filter(|v| self.insert(v)).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u32) -> SparseVector<u32> {
        SparseVector::unit(i)
    }

    fn vec_of(terms: &[(u32, i64)]) -> SparseVector<u32> {
        terms.iter().map(|&(i, c)| (i, int(c))).collect()
    }

    #[test]
    fn reduce_against_empty_is_identity() {
        let b = SpanBasis::new();
        let v = vec_of(&[(1, 3), (4, -2)]);
        assert_eq!(b.reduce(&v), v);
    }

    #[test]
    fn reduce_pivot_eliminates() {
        let mut b = SpanBasis::new();
        b.insert(&e(1));
        assert!(b.reduce(&e(1)).is_zero());
    }

    #[test]
    fn reduce_hand_example() {
        let mut b = SpanBasis::new();
        b.insert(&vec_of(&[(1, 1), (2, 1)]));
        let r = b.reduce(&vec_of(&[(1, 3), (2, 3), (3, 1)]));
        assert_eq!(r, e(3));
    }

    #[test]
    fn insert_zero_and_unit() {
        let mut b: SpanBasis<u32> = SpanBasis::new();
        assert!(!b.insert(&SparseVector::zero()));
        assert_eq!(b.dimension(), 0);
        assert!(b.insert(&e(5)));
        assert_eq!(b.dimension(), 1);
    }

    #[test]
    fn insert_rank_sequence() {
        let mut b = SpanBasis::new();
        let vs = [
            e(1),
            e(2),
            vec_of(&[(1, 1), (2, 1)]),
            vec_of(&[(1, 1), (2, -1)]),
        ];
        let dims: Vec<usize> = vs
            .iter()
            .map(|v| {
                b.insert(v);
                b.dimension()
            })
            .collect();
        assert_eq!(dims, vec![1, 2, 2, 2]);
    }

    #[test]
    fn rows_are_reduced_echelon() {
        let mut b = SpanBasis::new();
        b.insert(&vec_of(&[(2, 2), (3, 1)]));
        b.insert(&vec_of(&[(1, 1), (2, 5)]));
        b.insert(&vec_of(&[(3, 7), (4, 1)]));
        let pivots: Vec<u32> = b.pivots().copied().collect();
        for (p, row) in b.pivots().zip(b.rows()) {
            assert_eq!(row.leading().unwrap().0, p);
            assert!(row.coeff(p).is_one());
            for q in &pivots {
                if q != p {
                    assert!(row.get(q).is_none());
                }
            }
        }
    }

    #[test]
    fn rational_pivots_normalize() {
        let mut b = SpanBasis::new();
        b.insert(&vec_of(&[(0, 3), (1, 1)]));
        let row = b.rows().next().unwrap();
        assert_eq!(row.coeff(&1), frac(1, 3));
    }
}
