//! Sparse exact linear algebra over the rationals.
//!
//! Everything downstream (ranks of cochain maps, cocycle spaces, class
//! coordinates, lower central series) goes through [`Echelon`], an
//! incrementally built row-echelon basis whose rows carry a *tag*: the
//! linear combination of inserted vectors that produced them. Pivoting is
//! deterministic (leading column of each vector), so every derived basis is
//! reproducible.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// A sparse vector with no stored zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: BTreeMap<usize, Rational>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(index: usize) -> Self {
        let mut v = Self::new();
        v.entries.insert(index, Rational::one());
        v
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        let mut v = Self::new();
        for (i, x) in values.iter().enumerate() {
            if !x.is_zero() {
                v.entries.insert(i, x.clone());
            }
        }
        v
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (&i, x) in &self.entries {
            out[i] = x.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> Rational {
        self.entries.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.iter().next().map(|(&i, x)| (i, x))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(&i, x)| (i, x))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    /// `self[index] += value`, pruning an exact cancellation.
    pub fn add_at(&mut self, index: usize, value: &Rational) {
        if value.is_zero() {
            return;
        }
        match self.entries.get_mut(&index) {
            Some(x) => {
                *x += value;
                if x.is_zero() {
                    self.entries.remove(&index);
                }
            }
            None => {
                self.entries.insert(index, value.clone());
            }
        }
    }

    /// `self += factor * other`.
    pub fn axpy(&mut self, factor: &Rational, other: &SparseVec) {
        if factor.is_zero() {
            return;
        }
        for (&i, x) in &other.entries {
            self.add_at(i, &(factor * x));
        }
    }

    pub fn scale(&mut self, factor: &Rational) {
        if factor.is_zero() {
            self.entries.clear();
            return;
        }
        for x in self.entries.values_mut() {
            *x *= factor;
        }
    }

    pub fn scaled(&self, factor: &Rational) -> SparseVec {
        let mut v = self.clone();
        v.scale(factor);
        v
    }

    /// Keeps only the entries whose index satisfies `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(usize) -> bool) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(&i, _)| keep(i))
                .map(|(&i, x)| (i, x.clone()))
                .collect(),
        }
    }
}

impl FromIterator<(usize, Rational)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Rational)>>(iter: T) -> Self {
        let mut v = SparseVec::new();
        for (i, x) in iter {
            v.add_at(i, &x);
        }
        v
    }
}

#[derive(Debug, Clone)]
struct Row {
    vector: SparseVec,
    tag: SparseVec,
}

/// Row-echelon basis of a subspace, built one vector at a time.
///
/// Each stored row is normalized so that its leading entry is 1 and carries
/// a tag with `row = sum(tag[j] * input_j)` for the tags supplied on insert.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
}

/// Result of reducing a vector against an [`Echelon`].
#[derive(Debug, Clone)]
pub struct Reduction {
    /// What is left after subtracting the span; zero iff the input was in it.
    pub remainder: SparseVec,
    /// `tag(input) - sum(c_i * tag(row_i))`, i.e. the tag of the remainder.
    pub tag: SparseVec,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Subtracts every pivot component of `vector`.
    pub fn reduce(&self, mut vector: SparseVec, mut tag: SparseVec) -> Reduction {
        let mut cursor = 0usize;
        loop {
            let hit = vector
                .entries
                .range(cursor..)
                .find(|(i, _)| self.rows.contains_key(i))
                .map(|(&i, x)| (i, x.clone()));
            let Some((pivot, coeff)) = hit else { break };
            let row = &self.rows[&pivot];
            let factor = -coeff;
            vector.axpy(&factor, &row.vector);
            tag.axpy(&factor, &row.tag);
            cursor = pivot + 1;
        }
        Reduction {
            remainder: vector,
            tag,
        }
    }

    pub fn contains(&self, vector: &SparseVec) -> bool {
        self.reduce(vector.clone(), SparseVec::new())
            .remainder
            .is_zero()
    }

    /// Inserts `vector`; returns the reduction so callers can harvest a
    /// kernel relation when the vector turned out to be dependent.
    pub fn insert(&mut self, vector: SparseVec, tag: SparseVec) -> Reduction {
        let reduction = self.reduce(vector, tag);
        if let Some((pivot, lead)) = reduction.remainder.leading() {
            let inv = lead.recip();
            let row = Row {
                vector: reduction.remainder.scaled(&inv),
                tag: reduction.tag.scaled(&inv),
            };
            self.rows.insert(pivot, row);
        }
        reduction
    }

    /// Inserts without tag bookkeeping; returns whether the rank grew.
    pub fn push(&mut self, vector: SparseVec) -> bool {
        !self.insert(vector, SparseVec::new()).remainder.is_zero()
    }

    /// Fully reduced row echelon form, ordered by pivot column.
    pub fn rref(&self) -> Vec<SparseVec> {
        let mut reduced: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (&pivot, row) in self.rows.iter().rev() {
            let mut v = row.vector.clone();
            for (&other, other_row) in reduced.iter() {
                let c = v.get(other);
                if !c.is_zero() {
                    v.axpy(&-c, other_row);
                }
            }
            reduced.insert(pivot, v);
        }
        reduced.into_values().collect()
    }
}

/// Rank of a family of vectors.
pub fn rank<'a>(vectors: impl IntoIterator<Item = &'a SparseVec>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.push(v.clone());
    }
    e.rank()
}

/// Kernel of the linear map sending `e_j` to `columns[j]`, as a basis of
/// coefficient vectors in the order the relations are discovered.
pub fn kernel(columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let red = e.insert(col.clone(), SparseVec::unit(j));
        if red.remainder.is_zero() {
            out.push(red.tag);
        }
    }
    out
}

/// Coordinates of `target` in the basis `basis`, or `None` when it is not in the span.
pub fn solve_in_span(basis: &[SparseVec], target: &SparseVec) -> Option<SparseVec> {
    let mut e = Echelon::new();
    for (j, b) in basis.iter().enumerate() {
        e.insert(b.clone(), SparseVec::unit(j));
    }
    let red = e.reduce(target.clone(), SparseVec::new());
    if red.remainder.is_zero() {
        let mut coords = red.tag;
        coords.scale(&-Rational::one());
        Some(coords)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| rat(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rank_and_kernel() {
        let cols = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1]), v(&[1, 3, 4])];
        assert_eq!(rank(&cols), 2);
        let ker = kernel(&cols);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            let mut image = SparseVec::new();
            for (j, c) in k.iter() {
                image.axpy(c, &cols[j]);
            }
            assert!(image.is_zero());
        }
    }

    #[test]
    fn solve_recovers_coordinates() {
        let basis = vec![v(&[1, 1, 0]), v(&[0, 2, 1])];
        let target = v(&[3, 1, -1]).scaled(&ratio(1, 2));
        let coords = solve_in_span(&basis, &target).expect("in span");
        let mut back = SparseVec::new();
        for (j, c) in coords.iter() {
            back.axpy(c, &basis[j]);
        }
        assert_eq!(back, target);
        assert!(solve_in_span(&basis, &v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn rref_is_fully_reduced() {
        let mut e = Echelon::new();
        e.push(v(&[1, 2, 3]));
        e.push(v(&[0, 1, 5]));
        let rows = e.rref();
        assert_eq!(rows[0], v(&[1, 0, -7]));
        assert_eq!(rows[1], v(&[0, 1, 5]));
    }

    #[test]
    fn zero_vectors_do_not_raise_rank() {
        let mut e = Echelon::new();
        assert!(!e.push(SparseVec::new()));
        assert_eq!(e.rank(), 0);
    }
}
