use super::{AdaptedBasis, LieAlgebra};
use crate::algebra::{Form, Monomial, SullivanModel};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;

/// Model of `lie` in the adapted basis `basis`, weights carried from it.
pub fn ce_model(lie: &LieAlgebra, basis: &AdaptedBasis) -> Result<SullivanModel> {
    let adapted = lie.change_basis(&basis.vectors, basis.names.clone())?;
    ce_model_with_weights(&adapted, &basis.weights)
}

/// Model of `lie` in its given basis: `d v_i = -Σ_{l<k} c^i_{l,k} v_l v_k`.
///
/// The weights are attached as given; nothing checks that they are adapted
/// to the lower central series.
pub fn ce_model_with_weights(lie: &LieAlgebra, weights: &[u32]) -> Result<SullivanModel> {
    let n = lie.dim();
    if weights.len() != n {
        return Err(Error::Invalid(format!("{n} basis vectors but {} weights", weights.len())));
    }
    let mut differential = vec![Form::zero(n); n];
    for ((l, k), value) in lie.brackets() {
        let m = Monomial::from_sorted(&[l, k]).expect("l < k");
        for (i, c) in value.iter() {
            differential[i].add_term(m, &-c.clone());
        }
    }
    let gens = lie
        .names()
        .iter()
        .cloned()
        .zip(weights.iter().copied())
        .collect();
    SullivanModel::new(gens, differential)
}

/// Inverse of [`ce_model_with_weights`]; weights are dropped.
pub fn lie_from_model(model: &SullivanModel) -> Result<LieAlgebra> {
    model.require_d_squared_zero()?;
    let n = model.dim();
    let mut entries: std::collections::BTreeMap<(usize, usize), SparseVec> = Default::default();
    for i in 0..n {
        for (m, c) in model.differential_of(i).terms() {
            let mut idx = m.indices();
            let (l, k) = (idx.next().expect("quadratic"), idx.next().expect("quadratic"));
            entries.entry((l, k)).or_default().add_at(i, &-c.clone());
        }
    }
    LieAlgebra::new(
        model.names(),
        entries.into_iter().map(|((l, k), v)| (l, k, v)),
    )
}

/// Keeps, in each `d v_i`, only the monomials of weight exactly `weight(v_i) - 1`.
pub fn associated_graded_model(model: &SullivanModel) -> Result<SullivanModel> {
    model.require_triangular()?;
    let differential = (0..model.dim())
        .map(|i| {
            let w = model.generators()[i].weight;
            model
                .differential_of(i)
                .filter_terms(|m| w > 0 && model.monomial_weight(m) == w - 1)
        })
        .collect();
    let gens = model
        .generators()
        .iter()
        .map(|g| (g.name.clone(), g.weight))
        .collect();
    SullivanModel::new(gens, differential)
}

/// Every monomial of every `d v_i` has weight exactly `weight(v_i) - 1`.
pub fn is_carnot_homogeneous(model: &SullivanModel) -> bool {
    (0..model.dim()).all(|i| {
        let w = model.generators()[i].weight;
        model
            .differential_of(i)
            .terms()
            .all(|(m, _)| w > 0 && model.monomial_weight(m) == w - 1)
    })
}

/// Sub-model on the generators of weight `<= max_weight`.
pub fn truncate(model: &SullivanModel, max_weight: u32) -> Result<SullivanModel> {
    model.require_triangular()?;
    let kept: Vec<usize> = (0..model.dim())
        .filter(|&i| model.generators()[i].weight <= max_weight)
        .collect();
    let mut position = vec![None; model.dim()];
    for (new, &old) in kept.iter().enumerate() {
        position[old] = Some(new);
    }
    let n = kept.len();
    let differential = kept
        .iter()
        .map(|&i| {
            model
                .differential_of(i)
                .reindex(n, |j| position[j])
                .ok_or_else(|| Error::Invalid("truncation is not closed under d".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let gens = kept
        .iter()
        .map(|&i| {
            let g = &model.generators()[i];
            (g.name.clone(), g.weight)
        })
        .collect();
    SullivanModel::new(gens, differential)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::adapted_basis;
    use crate::rational::rat;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn abelian_model_has_zero_differential() {
        let a = LieAlgebra::abelian(names(&["a", "b"])).unwrap();
        let m = ce_model(&a, &adapted_basis(&a).unwrap()).unwrap();
        assert!(m.differentials().iter().all(Form::is_zero));
        assert!(is_carnot_homogeneous(&m));
        assert_eq!(lie_from_model(&m).unwrap(), a);
    }

    #[test]
    fn sign_convention() {
        // [x1, x2] = -n  =>  d n = x1 x2
        let h = LieAlgebra::new(
            names(&["x1", "x2", "n"]),
            vec![(0, 1, SparseVec::unit(2).scaled(&rat(-1)))],
        )
        .unwrap();
        let m = ce_model_with_weights(&h, &[0, 0, 1]).unwrap();
        assert_eq!(m.differential_of(2), &Form::from_terms(3, &[(rat(1), &[0, 1])]));
        assert_eq!(lie_from_model(&m).unwrap(), h);
    }

    #[test]
    fn truncation_extremes() {
        let h = LieAlgebra::new(
            names(&["x1", "x2", "n"]),
            vec![(0, 1, SparseVec::unit(2).scaled(&rat(-1)))],
        )
        .unwrap();
        let m = ce_model_with_weights(&h, &[0, 0, 1]).unwrap();
        assert_eq!(truncate(&m, 5).unwrap(), m);
        let base = truncate(&m, 0).unwrap();
        assert_eq!(base.dim(), 2);
        assert!(base.differentials().iter().all(|f| f.is_zero()));
    }
}
