//! Checking proposed isomorphisms rather than searching for them.
//!
//! A morphism of models is fixed by where it sends the degree-1 generators
//! ([`GeneratorMap`]); [`verify_cdga_morphism`] checks that it commutes with
//! the differentials and is invertible. Refutations come from invariants
//! ([`fingerprint`]), from ring-level checks ([`verify_cohomology_ring_iso`]) and
//! from the decomposability test for 2-forms ([`is_decomposable_2form`]).

mod decomposable;
mod fingerprint;
mod normalize;
mod ring;

pub use decomposable::{is_decomposable_2form, skew_matrix, Decomposability};
pub use fingerprint::{fingerprint, fingerprint_model, Fingerprint, FingerprintDifference};
pub use normalize::{normalize_perturbation, Normalization};
pub use ring::{verify_cohomology_ring_iso, RingVerdict, Side};

use serde::Serialize;

use crate::algebra::{Form, SullivanModel};
use crate::error::{Error, Result};
use crate::linalg::{rank, SparseVec};

/// Images of the source generators, each a linear form over the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap {
    target_dim: usize,
    images: Vec<Form>,
}

impl GeneratorMap {
    pub fn new(target_dim: usize, images: Vec<Form>) -> Result<GeneratorMap> {
        for (i, f) in images.iter().enumerate() {
            if f.dim() != target_dim {
                return Err(Error::DomainMismatch {
                    left: target_dim,
                    right: f.dim(),
                });
            }
            if !f.is_zero() && !f.has_degree(1) {
                return Err(Error::Invalid(format!("image of generator {i} is not linear")));
            }
        }
        Ok(GeneratorMap { target_dim, images })
    }

    pub fn identity(n: usize) -> GeneratorMap {
        GeneratorMap {
            target_dim: n,
            images: (0..n).map(|i| Form::generator(n, i)).collect(),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.images.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn images(&self) -> &[Form] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Form {
        &self.images[i]
    }

    /// Returns a copy with the image of generator `i` replaced.
    pub fn with_image(&self, i: usize, image: Form) -> Result<GeneratorMap> {
        let mut images = self.images.clone();
        images[i] = image;
        GeneratorMap::new(self.target_dim, images)
    }

    /// Multiplicative extension to arbitrary forms.
    pub fn apply(&self, f: &Form) -> Result<Form> {
        if f.dim() != self.source_dim() {
            return Err(Error::DomainMismatch {
                left: self.source_dim(),
                right: f.dim(),
            });
        }
        let mut out = Form::zero(self.target_dim);
        for (m, c) in f.terms() {
            let mut product = Form::constant(self.target_dim, c.clone());
            for i in m.indices() {
                product = product.wedge(&self.images[i])?;
                if product.is_zero() {
                    break;
                }
            }
            out = out.try_add(&product)?;
        }
        Ok(out)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GeneratorMap) -> Result<GeneratorMap> {
        let images = self
            .images
            .iter()
            .map(|f| next.apply(f))
            .collect::<Result<Vec<_>>>()?;
        GeneratorMap::new(next.target_dim, images)
    }

    /// Coefficient columns of the linear part.
    pub fn columns(&self) -> Vec<SparseVec> {
        self.images
            .iter()
            .map(|f| {
                f.terms()
                    .map(|(m, c)| (m.indices().next().expect("linear image"), c.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        rank(&self.columns())
    }

    pub fn is_invertible(&self) -> bool {
        self.source_dim() == self.target_dim && self.rank() == self.target_dim
    }
}

/// Outcome of [`verify_cdga_morphism`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MorphismVerdict {
    Isomorphism,
    /// `difference = d(φ v) - φ(d v)` on the first failing generator.
    NotCommuting {
        generator: usize,
        name: String,
        difference: Form,
    },
    Singular {
        rank: usize,
    },
}

impl MorphismVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, MorphismVerdict::Isomorphism)
    }
}

/// Checks `φ ∘ d_src = d_dst ∘ φ` on every generator, then invertibility of
/// the linear part.
pub fn verify_cdga_morphism(
    src: &SullivanModel,
    dst: &SullivanModel,
    map: &GeneratorMap,
) -> Result<MorphismVerdict> {
    if map.source_dim() != src.dim() || map.target_dim() != dst.dim() {
        return Err(Error::Invalid(format!(
            "map goes from {} to {} generators, models have {} and {}",
            map.source_dim(),
            map.target_dim(),
            src.dim(),
            dst.dim()
        )));
    }
    for i in 0..src.dim() {
        let lhs = dst.apply_differential(map.image(i))?;
        let rhs = map.apply(src.differential_of(i))?;
        let difference = &lhs - &rhs;
        if !difference.is_zero() {
            return Ok(MorphismVerdict::NotCommuting {
                generator: i,
                name: src.generators()[i].name.clone(),
                difference,
            });
        }
    }
    if !map.is_invertible() {
        return Ok(MorphismVerdict::Singular { rank: map.rank() });
    }
    Ok(MorphismVerdict::Isomorphism)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{section3_pair, theorem1_family};
    use crate::rational::rat;

    #[test]
    fn identity_is_an_isomorphism() {
        let m = theorem1_family(2).unwrap();
        let id = GeneratorMap::identity(m.dim());
        assert!(verify_cdga_morphism(&m, &m, &id).unwrap().is_ok());
    }

    #[test]
    fn explicit_shift_absorbs_perturbation() {
        // dm = Σ x_i n_i + x1x3 + 2 x2x4 on the source side
        let target = theorem1_family(2).unwrap();
        let (x, n, m) = (|i: usize| i - 1, |j: usize| 3 + j, 7usize);
        let p = Form::from_terms(8, &[(rat(1), &[x(1), x(3)]), (rat(2), &[x(2), x(4)])]);
        let src = target
            .with_differential(m, target.differential_of(m) + &p)
            .unwrap();
        let map = GeneratorMap::identity(8)
            .with_image(n(1), Form::from_terms(8, &[(rat(1), &[n(1)]), (rat(-1), &[x(3)])]))
            .unwrap()
            .with_image(n(2), Form::from_terms(8, &[(rat(1), &[n(2)]), (rat(-2), &[x(4)])]))
            .unwrap();
        assert!(verify_cdga_morphism(&src, &target, &map).unwrap().is_ok());
    }

    #[test]
    fn identity_fails_on_d_for_the_five_dimensional_pair() {
        let (d1, d2) = section3_pair();
        let verdict = verify_cdga_morphism(&d1, &d2, &GeneratorMap::identity(5)).unwrap();
        let a2b = Form::from_terms(5, &[(rat(1), &[1, 2])]);
        assert_eq!(
            verdict,
            MorphismVerdict::NotCommuting {
                generator: 4,
                name: "d".into(),
                difference: a2b,
            }
        );
    }

    #[test]
    fn zero_map_is_singular() {
        let a = SullivanModel::abelian(vec![("a".into(), 0)]).unwrap();
        let zero = GeneratorMap::new(1, vec![Form::zero(1)]).unwrap();
        assert_eq!(
            verify_cdga_morphism(&a, &a, &zero).unwrap(),
            MorphismVerdict::Singular { rank: 0 }
        );
    }

    #[test]
    fn composition_applies_right_to_left() {
        let swap = GeneratorMap::new(2, vec![Form::generator(2, 1), Form::generator(2, 0)]).unwrap();
        let double = GeneratorMap::new(
            2,
            vec![Form::generator(2, 0).scaled(&rat(2)), Form::generator(2, 1)],
        )
        .unwrap();
        let both = swap.then(&double).unwrap();
        assert_eq!(both.image(0), &Form::generator(2, 1));
        assert_eq!(both.image(1), &Form::generator(2, 0).scaled(&rat(2)));
        let x0x1 = Form::from_terms(2, &[(rat(1), &[0, 1])]);
        assert_eq!(swap.apply(&x0x1).unwrap(), x0x1.scaled(&rat(-1)));
    }
}
