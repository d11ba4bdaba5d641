//! Lie algebras given by structure constants, their lower central series and
//! Carnot-graded associates, and the dictionary with quadratic Sullivan models.
//!
//! Sign convention: `[X_l, X_k] = Σ_i c^i_{l,k} X_i` corresponds to
//! `d v_i = -Σ_{l<k} c^i_{l,k} v_l v_k`, so `[x_1, x_2] = -n` gives `d n = x_1 x_2`.

mod model;
mod series;

pub use model::{
    associated_graded_model, ce_model, ce_model_with_weights, is_carnot_homogeneous,
    lie_from_model, truncate,
};
pub use series::{adapted_basis, carnot, lower_central_series, AdaptedBasis, SubspaceChain};

use std::collections::{BTreeMap, HashSet};

use crate::algebra::MAX_GENERATORS;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::rational::{one, Rational};

/// Finite-dimensional Lie algebra over ℚ in a named basis.
///
/// Only brackets `[X_l, X_k]` with `l < k` are stored; the rest follow by
/// skew-symmetry. Equality compares names and constants in the given bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    brackets: BTreeMap<(usize, usize), SparseVec>,
}

/// A failure of the Jacobi identity on a basis triple `i < j < k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiDefect {
    pub triple: (usize, usize, usize),
    pub defect: SparseVec,
}

impl LieAlgebra {
    /// Builds an algebra from bracket entries `(l, k, [X_l, X_k])`.
    ///
    /// Entries with `l > k` are stored skew-symmetrically. Repeated pairs and
    /// nonzero self-brackets are rejected.
    pub fn new(
        names: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, SparseVec)>,
    ) -> Result<LieAlgebra> {
        let n = names.len();
        if n > MAX_GENERATORS {
            return Err(Error::DimensionCap {
                cap: MAX_GENERATORS,
                got: n,
            });
        }
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() || !seen.insert(name.as_str()) {
                return Err(Error::Invalid(format!("duplicate or empty basis name {name:?}")));
            }
        }
        let mut brackets = BTreeMap::new();
        for (l, k, value) in entries {
            if l >= n || k >= n || value.max_index().is_some_and(|m| m >= n) {
                return Err(Error::Invalid(format!("bracket [{l},{k}] out of range")));
            }
            if l == k {
                if value.is_zero() {
                    continue;
                }
                return Err(Error::Invalid(format!(
                    "[{0},{0}] must vanish by skew-symmetry",
                    names[l]
                )));
            }
            let (key, value) = if l < k {
                ((l, k), value)
            } else {
                ((k, l), value.scaled(&-one()))
            };
            if brackets.contains_key(&key) {
                return Err(Error::Invalid(format!(
                    "bracket [{},{}] declared twice",
                    names[key.0], names[key.1]
                )));
            }
            if !value.is_zero() {
                brackets.insert(key, value);
            }
        }
        Ok(LieAlgebra { names, brackets })
    }

    pub fn abelian(names: Vec<String>) -> Result<LieAlgebra> {
        LieAlgebra::new(names, std::iter::empty())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Nonzero brackets `[X_l, X_k]`, `l < k`, in lexicographic order of pairs.
    pub fn brackets(&self) -> impl Iterator<Item = ((usize, usize), &SparseVec)> {
        self.brackets.iter().map(|(&p, v)| (p, v))
    }

    pub fn bracket_basis(&self, l: usize, k: usize) -> SparseVec {
        use std::cmp::Ordering::*;
        match l.cmp(&k) {
            Equal => SparseVec::new(),
            Less => self.brackets.get(&(l, k)).cloned().unwrap_or_default(),
            Greater => self
                .brackets
                .get(&(k, l))
                .map(|v| v.scaled(&-one()))
                .unwrap_or_default(),
        }
    }

    /// `c^i_{l,k}`.
    pub fn structure_constant(&self, i: usize, l: usize, k: usize) -> Rational {
        self.bracket_basis(l, k).get(i)
    }

    /// Bilinear extension of the bracket to coordinate vectors.
    pub fn bracket(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (l, a) in u.iter() {
            for (k, b) in v.iter() {
                if l == k {
                    continue;
                }
                let br = self.bracket_basis(l, k);
                if !br.is_zero() {
                    out.axpy(&(a * b), &br);
                }
            }
        }
        out
    }

    /// Basis triples on which `[[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j] ≠ 0`.
    pub fn jacobi_defect(&self) -> Vec<JacobiDefect> {
        let n = self.dim();
        let e = SparseVec::unit;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut total = self.bracket(&self.bracket_basis(i, j), &e(k));
                    total.axpy(&one(), &self.bracket(&self.bracket_basis(j, k), &e(i)));
                    total.axpy(&one(), &self.bracket(&self.bracket_basis(k, i), &e(j)));
                    if !total.is_zero() {
                        out.push(JacobiDefect {
                            triple: (i, j, k),
                            defect: total,
                        });
                    }
                }
            }
        }
        out
    }

    /// Re-expresses the algebra in the basis whose vectors (in current
    /// coordinates) are `columns`.
    pub fn change_basis(&self, columns: &[SparseVec], names: Vec<String>) -> Result<LieAlgebra> {
        let n = self.dim();
        if columns.len() != n || names.len() != n {
            return Err(Error::Invalid(format!(
                "change of basis needs {n} vectors and names"
            )));
        }
        let mut echelon = Echelon::new();
        for (j, c) in columns.iter().enumerate() {
            echelon.insert(c.clone(), SparseVec::unit(j));
        }
        if echelon.rank() != n {
            return Err(Error::Invalid("change of basis is singular".into()));
        }
        let minus_one = -one();
        let mut entries = Vec::new();
        for l in 0..n {
            for k in l + 1..n {
                let image = self.bracket(&columns[l], &columns[k]);
                if image.is_zero() {
                    continue;
                }
                let red = echelon.reduce(image, SparseVec::new());
                debug_assert!(red.remainder.is_zero());
                entries.push((l, k, red.tag.scaled(&minus_one)));
            }
        }
        LieAlgebra::new(names, entries)
    }

    /// Same structure constants, names ignored.
    pub fn structure_eq(&self, other: &LieAlgebra) -> bool {
        self.dim() == other.dim() && self.brackets == other.brackets
    }
}
