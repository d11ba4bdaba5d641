use std::collections::HashSet;

use num_traits::One;

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};

/// Descending chain of subspaces, each stored by its reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceChain {
    pub subspaces: Vec<Vec<SparseVec>>,
    /// False when the chain stabilized at a nonzero subspace.
    pub terminates: bool,
}

impl SubspaceChain {
    pub fn dims(&self) -> Vec<usize> {
        self.subspaces.iter().map(Vec::len).collect()
    }

    /// `dim g^(i) - dim g^(i+1)` for each nonzero stage.
    pub fn quotient_dims(&self) -> Vec<usize> {
        let d = self.dims();
        d.windows(2).map(|w| w[0] - w[1]).collect()
    }
}

/// `g^(0) = g`, `g^(i) = [g^(i-1), g]`, until it reaches 0 or stops shrinking.
pub fn lower_central_series(lie: &LieAlgebra) -> SubspaceChain {
    let n = lie.dim();
    let mut current: Vec<SparseVec> = (0..n).map(SparseVec::unit).collect();
    let mut subspaces = vec![current.clone()];
    if n == 0 {
        return SubspaceChain {
            subspaces,
            terminates: true,
        };
    }
    loop {
        let mut next = Echelon::new();
        for v in &current {
            for j in 0..n {
                next.push(lie.bracket(v, &SparseVec::unit(j)));
            }
        }
        let basis = next.rref();
        if basis.len() == current.len() {
            return SubspaceChain {
                subspaces,
                terminates: false,
            };
        }
        let done = basis.is_empty();
        subspaces.push(basis.clone());
        if done {
            return SubspaceChain {
                subspaces,
                terminates: true,
            };
        }
        current = basis;
    }
}

/// Basis adapted to the lower central series: the vectors of weight `>= i`
/// span `g^(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedBasis {
    /// New basis vectors in the original coordinates (columns of the change of basis).
    pub vectors: Vec<SparseVec>,
    pub weights: Vec<u32>,
    pub names: Vec<String>,
}

impl AdaptedBasis {
    /// Dense change-of-basis matrix, row-major, columns are the new vectors.
    pub fn matrix(&self) -> Vec<Vec<crate::Rational>> {
        let n = self.vectors.len();
        let cols: Vec<_> = self.vectors.iter().map(|v| v.to_dense(n)).collect();
        (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.vectors
            .iter()
            .enumerate()
            .all(|(j, v)| *v == SparseVec::unit(j))
    }
}

/// Extends bases of `g^(s-1) ⊂ … ⊂ g^(0)` by complements, from the deepest stage
/// outwards. Complements are chosen greedily among the reduced echelon basis
/// vectors of each stage, so a basis that is already adapted comes back unchanged.
pub fn adapted_basis(lie: &LieAlgebra) -> Result<AdaptedBasis> {
    let chain = lower_central_series(lie);
    if !chain.terminates {
        return Err(Error::NotNilpotent {
            stable_dim: chain.subspaces.last().map_or(0, Vec::len),
        });
    }
    let stages = chain.subspaces.len() - 1;
    let mut span = Echelon::new();
    let mut by_weight: Vec<Vec<SparseVec>> = vec![Vec::new(); stages];
    for i in (0..stages).rev() {
        for candidate in &chain.subspaces[i] {
            if span.push(candidate.clone()) {
                by_weight[i].push(candidate.clone());
            }
        }
    }
    let mut vectors = Vec::new();
    let mut weights = Vec::new();
    for (w, vs) in by_weight.into_iter().enumerate() {
        for v in vs {
            vectors.push(v);
            weights.push(w as u32);
        }
    }
    let names = adapted_names(lie.names(), &vectors);
    Ok(AdaptedBasis {
        vectors,
        weights,
        names,
    })
}

/// Unit vectors keep their original name; other vectors take the name of
/// their leading coordinate with primes appended until unique.
fn adapted_names(original: &[String], vectors: &[SparseVec]) -> Vec<String> {
    let mut used: HashSet<String> = HashSet::new();
    let mut out: Vec<Option<String>> = vec![None; vectors.len()];
    for (j, v) in vectors.iter().enumerate() {
        if let Some((i, c)) = v.leading() {
            if v.nnz() == 1 && c.is_one() {
                out[j] = Some(original[i].clone());
                used.insert(original[i].clone());
            }
        }
    }
    for (j, v) in vectors.iter().enumerate() {
        if out[j].is_some() {
            continue;
        }
        let base = v.leading().map_or("v", |(i, _)| original[i].as_str());
        let mut name = format!("{base}'");
        while used.contains(&name) {
            name.push('\'');
        }
        used.insert(name.clone());
        out[j] = Some(name);
    }
    out.into_iter().map(|n| n.expect("every vector named")).collect()
}

/// Associated Carnot-graded algebra `⊕ g^(i)/g^(i+1)`, in the adapted basis.
///
/// Brackets of weight-`i` and weight-`j` vectors are projected onto the
/// weight `i + j + 1` component.
pub fn carnot(lie: &LieAlgebra) -> Result<LieAlgebra> {
    let basis = adapted_basis(lie)?;
    let adapted = lie.change_basis(&basis.vectors, basis.names.clone())?;
    Ok(project_to_graded(&adapted, &basis.weights))
}

pub(crate) fn project_to_graded(lie: &LieAlgebra, weights: &[u32]) -> LieAlgebra {
    let entries: Vec<_> = lie
        .brackets()
        .map(|((l, k), v)| {
            let target = weights[l] + weights[k] + 1;
            (l, k, v.filtered(|i| weights[i] == target))
        })
        .filter(|(_, _, v)| !v.is_zero())
        .collect();
    LieAlgebra::new(lie.names().to_vec(), entries).expect("projection keeps a valid table")
}
