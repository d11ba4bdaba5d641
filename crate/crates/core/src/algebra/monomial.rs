use std::cmp::Ordering;
use std::fmt;

/// Maximum number of generators a model may carry.
pub const MAX_GENERATORS: usize = 64;

/// Exterior monomial in degree-1 generators, stored as the set of its
/// (strictly increasing) generator indices.
///
/// Ordering is lexicographic on the index sequences, which is also the order
/// used for every basis, matrix and report.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn generator(index: usize) -> Monomial {
        assert!(index < MAX_GENERATORS, "generator index {index} out of range");
        Monomial(1 << index)
    }

    /// Builds the monomial of a strictly increasing index list.
    pub fn from_sorted(indices: &[usize]) -> Option<Monomial> {
        let mut bits = 0u64;
        let mut last = None;
        for &i in indices {
            if i >= MAX_GENERATORS || last.is_some_and(|l| l >= i) {
                return None;
            }
            bits |= 1 << i;
            last = Some(i);
        }
        Some(Monomial(bits))
    }

    /// Sorts an arbitrary index list, returning the sign of the sorting
    /// permutation, or `None` when an index repeats (the product vanishes).
    pub fn from_unsorted(indices: &[usize]) -> Option<(i8, Monomial)> {
        let mut acc = (1i8, Monomial::ONE);
        for &i in indices {
            if i >= MAX_GENERATORS {
                return None;
            }
            let (s, m) = acc.1.product(Monomial::generator(i))?;
            acc = (acc.0 * s, m);
        }
        Some(acc)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_bits(bits: u64) -> Monomial {
        Monomial(bits)
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_GENERATORS && self.0 & (1 << index) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Highest generator index plus one (0 for the unit).
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// `self ∧ other = sign · result`, or `None` when they share a generator.
    pub fn product(self, other: Monomial) -> Option<(i8, Monomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Each generator of `other` moves left past the generators of `self`
        // with larger index.
        let mut swaps = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            swaps += (self.0 >> j).count_ones();
            rest &= rest - 1;
        }
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Monomial(self.0 | other.0)))
    }

    /// Splits off the generators strictly below and strictly above `index`.
    pub fn split_at(self, index: usize) -> (Monomial, Monomial) {
        let below = self.0 & ((1u64 << index) - 1);
        let above = if index + 1 >= 64 {
            0
        } else {
            self.0 & !((1u64 << (index + 1)) - 1)
        };
        (Monomial(below), Monomial(above))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        let diff = self.0 ^ other.0;
        let t = diff.trailing_zeros();
        // Shared prefix below t; whoever owns bit t continues with index t,
        // the other either stops (shorter, so smaller) or continues higher.
        if self.0 & (1 << t) != 0 {
            if other.0 >> t == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if self.0 >> t == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<usize> = self.indices().collect();
        write!(f, "Monomial{idx:?}")
    }
}
