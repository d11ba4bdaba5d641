use std::collections::HashSet;

use itertools::Itertools;

use super::{Form, Monomial, MAX_GENERATORS};
use crate::error::{Error, Result};

/// A degree-1 generator with its lower degree (weight).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub index: usize,
    pub weight: u32,
}

/// Free graded-commutative algebra on degree-1 generators with a quadratic
/// differential, extended to all of ΛV as a derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SullivanModel {
    generators: Vec<Generator>,
    differential: Vec<Form>,
}

impl SullivanModel {
    /// Validates names, dimensions and that every `d v` is quadratic.
    /// Neither `d² = 0` nor triangularity is enforced here; see
    /// [`SullivanModel::check_d_squared`] and [`SullivanModel::is_triangular`].
    pub fn new(generators: Vec<(String, u32)>, differential: Vec<Form>) -> Result<SullivanModel> {
        let n = generators.len();
        if n > MAX_GENERATORS {
            return Err(Error::DimensionCap {
                cap: MAX_GENERATORS,
                got: n,
            });
        }
        if differential.len() != n {
            return Err(Error::Invalid(format!(
                "{n} generators but {} differentials",
                differential.len()
            )));
        }
        let mut seen = HashSet::new();
        for (name, _) in &generators {
            if name.is_empty() || !seen.insert(name.as_str()) {
                return Err(Error::Invalid(format!("duplicate or empty generator name {name:?}")));
            }
        }
        for (i, dv) in differential.iter().enumerate() {
            if dv.dim() != n {
                return Err(Error::DomainMismatch {
                    left: n,
                    right: dv.dim(),
                });
            }
            if !dv.has_degree(2) {
                return Err(Error::Invalid(format!(
                    "d({}) must be a quadratic form",
                    generators[i].0
                )));
            }
        }
        let generators = generators
            .into_iter()
            .enumerate()
            .map(|(index, (name, weight))| Generator {
                name,
                index,
                weight,
            })
            .collect();
        Ok(SullivanModel {
            generators,
            differential,
        })
    }

    /// The model with `d = 0`.
    pub fn abelian(generators: Vec<(String, u32)>) -> Result<SullivanModel> {
        let n = generators.len();
        SullivanModel::new(generators, vec![Form::zero(n); n])
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.weight).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn generator_form(&self, index: usize) -> Form {
        Form::generator(self.dim(), index)
    }

    /// `d v_i`.
    pub fn differential_of(&self, index: usize) -> &Form {
        &self.differential[index]
    }

    pub fn differentials(&self) -> &[Form] {
        &self.differential
    }

    pub fn max_weight(&self) -> u32 {
        self.generators.iter().map(|g| g.weight).max().unwrap_or(0)
    }

    /// Sum of the generator weights (lower degree of the monomial).
    pub fn monomial_weight(&self, m: Monomial) -> u32 {
        m.indices().map(|i| self.generators[i].weight).sum()
    }

    pub fn display_form(&self, f: &Form) -> String {
        f.display_with(&self.names())
    }

    /// Returns a copy with `d v_i` replaced.
    pub fn with_differential(&self, index: usize, dv: Form) -> Result<SullivanModel> {
        let mut differential = self.differential.clone();
        differential[index] = dv;
        SullivanModel::new(
            self.generators
                .iter()
                .map(|g| (g.name.clone(), g.weight))
                .collect(),
            differential,
        )
    }

    fn check_domain(&self, f: &Form) -> Result<()> {
        if f.dim() != self.dim() {
            return Err(Error::DomainMismatch {
                left: self.dim(),
                right: f.dim(),
            });
        }
        Ok(())
    }

    /// `d` of a single monomial via the graded Leibniz rule.
    pub fn differential_of_monomial(&self, m: Monomial) -> Form {
        let mut out = Form::zero(self.dim());
        for (position, i) in m.indices().enumerate() {
            let dv = &self.differential[i];
            if dv.is_zero() {
                continue;
            }
            let (prefix, suffix) = m.split_at(i);
            let outer = if position % 2 == 0 { 1 } else { -1 };
            for (q, c) in dv.terms() {
                let Some((s1, left)) = prefix.product(q) else { continue };
                let Some((s2, full)) = left.product(suffix) else { continue };
                let sign = outer * s1 * s2;
                out.add_term(full, &if sign < 0 { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// Applies the differential to an arbitrary form.
    pub fn apply_differential(&self, f: &Form) -> Result<Form> {
        self.check_domain(f)?;
        let mut out = Form::zero(self.dim());
        for (m, c) in f.terms() {
            for (q, e) in self.differential_of_monomial(m).terms() {
                out.add_term(q, &(c * e));
            }
        }
        Ok(out)
    }

    pub fn is_closed(&self, f: &Form) -> Result<bool> {
        Ok(self.apply_differential(f)?.is_zero())
    }

    /// Generators on which `d²` does not vanish, with the offending `d² v`.
    pub fn check_d_squared(&self) -> Vec<(usize, Form)> {
        (0..self.dim())
            .filter_map(|i| {
                let dd = self
                    .apply_differential(&self.differential[i])
                    .expect("differential lives over the model");
                (!dd.is_zero()).then_some((i, dd))
            })
            .collect()
    }

    /// Every monomial of `d v_i` has weight strictly below `weight(v_i)`.
    pub fn is_triangular(&self) -> bool {
        self.first_non_triangular().is_none()
    }

    pub(crate) fn first_non_triangular(&self) -> Option<usize> {
        (0..self.dim()).find(|&i| {
            let w = self.generators[i].weight;
            self.differential[i]
                .terms()
                .any(|(m, _)| self.monomial_weight(m) >= w)
        })
    }

    pub(crate) fn require_triangular(&self) -> Result<()> {
        match self.first_non_triangular() {
            None => Ok(()),
            Some(i) => Err(Error::NotTriangular {
                generator: self.generators[i].name.clone(),
            }),
        }
    }

    pub(crate) fn require_d_squared_zero(&self) -> Result<()> {
        let defects = self.check_d_squared();
        if defects.is_empty() {
            Ok(())
        } else {
            Err(Error::DSquaredNonzero(defects))
        }
    }

    /// Monomials of exterior degree `p`, lexicographic; optionally only those
    /// of total weight `weight`.
    pub fn monomial_basis(&self, p: usize, weight: Option<u32>) -> Vec<Monomial> {
        monomial_basis(self.dim(), p)
            .into_iter()
            .filter(|&m| weight.is_none_or(|w| self.monomial_weight(m) == w))
            .collect()
    }
}

/// All monomials of degree `p` in `n` generators, lexicographic.
pub fn monomial_basis(n: usize, p: usize) -> Vec<Monomial> {
    if p > n {
        return Vec::new();
    }
    (0..n)
        .combinations(p)
        .map(|idx| Monomial::from_sorted(&idx).expect("combinations are increasing"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn heisenberg() -> SullivanModel {
        let gens = vec![("x1".into(), 0), ("x2".into(), 0), ("n".into(), 1)];
        let d = vec![
            Form::zero(3),
            Form::zero(3),
            Form::from_terms(3, &[(rat(1), &[0, 1])]),
        ];
        SullivanModel::new(gens, d).unwrap()
    }

    #[test]
    fn basis_sizes() {
        let h = heisenberg();
        assert_eq!(h.monomial_basis(2, None).len(), 3);
        assert_eq!(h.monomial_basis(0, None), vec![Monomial::ONE]);
        assert!(h.monomial_basis(4, None).is_empty());
        assert_eq!(h.monomial_basis(2, Some(1)).len(), 2);
    }

    #[test]
    fn differential_basics() {
        let h = heisenberg();
        assert!(h.apply_differential(&Form::one(3)).unwrap().is_zero());
        assert!(h.check_d_squared().is_empty());
        // d(x1 n) = -x1 x1 x2 = 0
        let x1n = Form::from_terms(3, &[(rat(1), &[0, 2])]);
        assert!(h.apply_differential(&x1n).unwrap().is_zero());
        assert!(h.is_triangular());
    }

    #[test]
    fn rejects_bad_input() {
        let gens = vec![("a".into(), 0), ("a".into(), 0)];
        assert!(SullivanModel::abelian(gens).is_err());
        let gens = vec![("a".into(), 0), ("b".into(), 1)];
        let bad = vec![Form::zero(2), Form::generator(2, 0)];
        assert!(SullivanModel::new(gens, bad).is_err());
    }
}
