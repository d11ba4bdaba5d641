use serde::Serialize;

use crate::algebra::SullivanModel;
use crate::cohomology::CohomologyRing;
use crate::error::Result;
use crate::lie::{adapted_basis, ce_model, lie_from_model, lower_central_series, LieAlgebra};

/// Isomorphism invariants. Different fingerprints rule out an isomorphism;
/// equal ones prove nothing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub dimension: usize,
    pub lcs_quotient_dims: Vec<usize>,
    pub betti: Vec<usize>,
    /// Indexed by degree, starting at 0.
    pub indecomposables: Vec<usize>,
}

/// One field in which two fingerprints disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FingerprintDifference {
    pub field: &'static str,
    /// Degree or stage at which the entries first differ, if positional.
    pub position: Option<usize>,
    pub left: Option<usize>,
    pub right: Option<usize>,
}

fn first_difference(field: &'static str, a: &[usize], b: &[usize]) -> Option<FingerprintDifference> {
    let len = a.len().max(b.len());
    (0..len)
        .find(|&i| a.get(i) != b.get(i))
        .map(|i| FingerprintDifference {
            field,
            position: Some(i),
            left: a.get(i).copied(),
            right: b.get(i).copied(),
        })
}

impl Fingerprint {
    /// Fields where `self` and `other` disagree, in declaration order.
    pub fn differences(&self, other: &Fingerprint) -> Vec<FingerprintDifference> {
        let mut out = Vec::new();
        if self.dimension != other.dimension {
            out.push(FingerprintDifference {
                field: "dimension",
                position: None,
                left: Some(self.dimension),
                right: Some(other.dimension),
            });
        }
        out.extend(first_difference(
            "lcs_quotient_dims",
            &self.lcs_quotient_dims,
            &other.lcs_quotient_dims,
        ));
        out.extend(first_difference("betti", &self.betti, &other.betti));
        out.extend(first_difference(
            "indecomposables",
            &self.indecomposables,
            &other.indecomposables,
        ));
        out
    }
}

fn fingerprint_parts(lie: &LieAlgebra, model: &SullivanModel) -> Result<Fingerprint> {
    let ring = CohomologyRing::new(model)?;
    let indecomposables = (0..=model.dim())
        .map(|p| ring.indecomposables(p).map(|i| i.count))
        .collect::<Result<Vec<_>>>()?;
    Ok(Fingerprint {
        dimension: lie.dim(),
        lcs_quotient_dims: lower_central_series(lie).quotient_dims(),
        betti: ring.betti(),
        indecomposables,
    })
}

/// Fingerprint of a nilpotent Lie algebra, computed on its model in an
/// adapted basis.
pub fn fingerprint(lie: &LieAlgebra) -> Result<Fingerprint> {
    let model = ce_model(lie, &adapted_basis(lie)?)?;
    fingerprint_parts(lie, &model)
}

/// Fingerprint of the Lie algebra a model encodes.
pub fn fingerprint_model(model: &SullivanModel) -> Result<Fingerprint> {
    fingerprint_parts(&lie_from_model(model)?, model)
}
