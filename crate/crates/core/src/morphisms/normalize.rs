use num_traits::Zero;

use super::{verify_cdga_morphism, GeneratorMap};
use crate::algebra::{Form, Monomial, SullivanModel};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A model brought to normal form, with the isomorphism that does it.
#[derive(Debug, Clone)]
pub struct Normalization {
    /// From the input model to `model`.
    pub map: GeneratorMap,
    pub model: SullivanModel,
    /// Coefficient of `x_{r+1} x_{r+2}` that cannot be absorbed, for the
    /// shape with two more weight-0 than weight-1 generators. `None` when
    /// every pair can be absorbed.
    pub residual: Option<Rational>,
}

/// Generator positions by role: `x_1..x_s` (weight 0), `n_1..n_r` (weight 1), `m`.
struct Shape {
    x: Vec<usize>,
    n: Vec<usize>,
    m: usize,
    /// `t[a][b]` for `a < b`: coefficient of `x_a x_b` in the perturbation.
    t: Vec<Vec<Rational>>,
}

fn shape_error(msg: impl Into<String>) -> Error {
    Error::FamilyShape(msg.into())
}

fn detect(model: &SullivanModel) -> Result<Shape> {
    let dim = model.dim();
    let by_weight = |w: u32| -> Vec<usize> {
        (0..dim)
            .filter(|&i| model.generators()[i].weight == w)
            .collect()
    };
    let (x, n, top) = (by_weight(0), by_weight(1), by_weight(2));
    if x.len() + n.len() + top.len() != dim || top.len() != 1 {
        return Err(shape_error(
            "expected weights 0, 1 and a single generator of weight 2",
        ));
    }
    let m = top[0];
    if n.is_empty() || !(x.len() == n.len() + 1 || x.len() == n.len() + 2) {
        return Err(shape_error(format!(
            "{} weight-0 and {} weight-1 generators do not fit either shape",
            x.len(),
            n.len()
        )));
    }
    let mono = |a: usize, b: usize| {
        Monomial::from_unsorted(&[a, b]).expect("distinct generators")
    };
    for &i in &x {
        if !model.differential_of(i).is_zero() {
            return Err(shape_error(format!("d({}) must vanish", model.generators()[i].name)));
        }
    }
    for (j, &nj) in n.iter().enumerate() {
        let (s, mo) = mono(x[j], x[j + 1]);
        let expected = Form::monomial(dim, mo, Rational::from_integer(s.into()));
        if model.differential_of(nj) != &expected {
            return Err(shape_error(format!(
                "d({}) must be {}",
                model.generators()[nj].name,
                model.display_form(&expected)
            )));
        }
    }
    let mut rest = model.differential_of(m).clone();
    for (j, &nj) in n.iter().enumerate() {
        let (s, mo) = mono(x[j], nj);
        let c = rest.coefficient(mo);
        let want = Rational::from_integer(s.into());
        if c != want {
            return Err(shape_error(format!(
                "d({}) must contain {}^{} with coefficient 1",
                model.generators()[m].name,
                model.generators()[x[j]].name,
                model.generators()[nj].name
            )));
        }
        rest.add_term(mo, &-want);
    }
    let position: Vec<Option<usize>> = (0..dim).map(|i| x.iter().position(|&xi| xi == i)).collect();
    let mut t = vec![vec![Rational::zero(); x.len()]; x.len()];
    for (mo, c) in rest.terms() {
        let idx: Vec<usize> = mo.indices().collect();
        let (Some(a), Some(b)) = (position[idx[0]], position[idx[1]]) else {
            return Err(shape_error(format!(
                "perturbation term {} is not in the weight-0 generators",
                model.display_form(&Form::monomial(dim, mo, c.clone()))
            )));
        };
        let (s, _) = mono(x[a.min(b)], x[a.max(b)]);
        let c = if s < 0 { -c.clone() } else { c.clone() };
        t[a.min(b)][a.max(b)] = c;
    }
    Ok(Shape { x, n, m, t })
}

/// Absorbs a perturbation `p ∈ Λ²⟨x⟩` of `d m` into shifts of the `n_j`.
///
/// Accepts models with weight-0 generators `x_1..x_s`, weight-1 generators
/// `n_1..n_r` (with `s = r + 1` or `s = r + 2`) and one weight-2 generator
/// `m`, where `d x = 0`, `d n_j = x_j x_{j+1}` and
/// `d m = Σ x_j n_j + Σ t_{a,b} x_a x_b`. The shift
/// `n_j ↦ n_j - Σ_{b>j} t_{j,b} x_b` removes every `t_{a,b}` with `a ≤ r`.
/// If `s = r + 2` the coefficient `t` of `x_{r+1} x_{r+2}` survives; when it
/// is nonzero, `x_{r+2} ↦ x_{r+2} / t` scales it to 1. The result is verified
/// before it is returned.
pub fn normalize_perturbation(model: &SullivanModel) -> Result<Normalization> {
    let Shape { x, n, m, t } = detect(model)?;
    let dim = model.dim();
    let mut shift = GeneratorMap::identity(dim);
    for (j, &nj) in n.iter().enumerate() {
        let mut image = Form::generator(dim, nj);
        for (b, &xb) in x.iter().enumerate().skip(j + 1) {
            if !t[j][b].is_zero() {
                image = &image - &Form::generator(dim, xb).scaled(&t[j][b]);
            }
        }
        shift = shift.with_image(nj, image)?;
    }
    let r = n.len();
    let residual = (x.len() == r + 2).then(|| t[r][r + 1].clone());
    let mut dm = Form::zero(dim);
    for (j, &nj) in n.iter().enumerate() {
        dm = &dm + &Form::generator(dim, x[j]).wedge(&Form::generator(dim, nj))?;
    }
    let mut map = shift;
    if let Some(t) = residual.as_ref().filter(|t| !t.is_zero()) {
        let (a, b) = (x[r], x[r + 1]);
        let rescale = GeneratorMap::identity(dim)
            .with_image(b, Form::generator(dim, b).scaled(&t.recip()))?;
        map = map.then(&rescale)?;
        dm = &dm + &Form::generator(dim, a).wedge(&Form::generator(dim, b))?;
    }
    let normalized = model.with_differential(m, dm)?;
    let verdict = verify_cdga_morphism(model, &normalized, &map)?;
    assert!(
        verdict.is_ok(),
        "normalization map failed verification: {verdict:?}"
    );
    Ok(Normalization {
        map,
        model: normalized,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{perturb_top, theorem1_family, theorem2_family};
    use crate::rational::rat;

    #[test]
    fn absorbs_graded_family_perturbation() {
        // k = 1: x1, x2, n1, m; p = 5 x1x2
        let base = theorem1_family(1).unwrap();
        let p = Form::from_terms(4, &[(rat(5), &[0, 1])]);
        let out = normalize_perturbation(&perturb_top(&base, &p).unwrap()).unwrap();
        assert_eq!(out.residual, None);
        assert_eq!(out.model, base);
        let expected = Form::from_terms(4, &[(rat(1), &[2]), (rat(-5), &[1])]);
        assert_eq!(out.map.image(2), &expected);
    }

    #[test]
    fn rescales_non_graded_residual() {
        // k = 2: x1..x5, n1..n3, m; graded part plus 3 x4x5
        let graded = crate::lie::associated_graded_model(&theorem2_family(2).unwrap()).unwrap();
        let p = Form::from_terms(9, &[(rat(3), &[3, 4])]);
        let out = normalize_perturbation(&perturb_top(&graded, &p).unwrap()).unwrap();
        assert_eq!(out.residual, Some(rat(3)));
        assert_eq!(out.model, theorem2_family(2).unwrap());
        assert_eq!(out.map.image(4), &Form::generator(9, 4).scaled(&crate::rational::ratio(1, 3)));
    }

    #[test]
    fn zero_perturbation_is_identity() {
        let graded = crate::lie::associated_graded_model(&theorem2_family(2).unwrap()).unwrap();
        let out = normalize_perturbation(&graded).unwrap();
        assert_eq!(out.residual, Some(rat(0)));
        assert_eq!(out.map, GeneratorMap::identity(9));
        assert_eq!(out.model, graded);
    }

    #[test]
    fn rejects_other_shapes() {
        let a = SullivanModel::abelian(vec![("a".into(), 0)]).unwrap();
        assert!(matches!(normalize_perturbation(&a), Err(Error::FamilyShape(_))));
    }
}
