use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::Monomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Exact rational linear combination of exterior monomials over `dim` generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

/// Exterior degree of a form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormDegree {
    /// The zero form, homogeneous of every degree.
    Zero,
    Pure(usize),
    Mixed,
}

impl Form {
    pub fn zero(dim: usize) -> Form {
        Form {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Form {
        Form::monomial(dim, Monomial::ONE, c)
    }

    pub fn one(dim: usize) -> Form {
        Form::constant(dim, Rational::one())
    }

    pub fn generator(dim: usize, index: usize) -> Form {
        assert!(index < dim, "generator {index} out of range for dimension {dim}");
        Form::monomial(dim, Monomial::generator(index), Rational::one())
    }

    pub fn monomial(dim: usize, m: Monomial, c: Rational) -> Form {
        assert!(m.span() <= dim, "monomial outside the generator set");
        let mut f = Form::zero(dim);
        f.add_term(m, &c);
        f
    }

    /// Builds `sum c · v_{i1} ∧ … ∧ v_{ip}` from unsorted index lists.
    pub fn from_terms(dim: usize, terms: &[(Rational, &[usize])]) -> Form {
        let mut f = Form::zero(dim);
        for (c, idx) in terms {
            assert!(idx.iter().all(|&i| i < dim), "index out of range");
            if let Some((s, m)) = Monomial::from_unsorted(idx) {
                f.add_term(m, &(c * Rational::from_integer(s.into())));
            }
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn degree(&self) -> FormDegree {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        match degrees.next() {
            None => FormDegree::Zero,
            Some(d) if degrees.all(|e| e == d) => FormDegree::Pure(d),
            Some(_) => FormDegree::Mixed,
        }
    }

    /// True when the form is zero or homogeneous of degree `p`.
    pub fn has_degree(&self, p: usize) -> bool {
        match self.degree() {
            FormDegree::Zero => true,
            FormDegree::Pure(d) => d == p,
            FormDegree::Mixed => false,
        }
    }

    pub fn scaled(&self, c: &Rational) -> Form {
        if c.is_zero() {
            return Form::zero(self.dim);
        }
        Form {
            dim: self.dim,
            terms: self.terms.iter().map(|(&m, x)| (m, x * c)).collect(),
        }
    }

    fn check_domain(&self, other: &Form) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DomainMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Form) -> Result<Form> {
        self.check_domain(other)?;
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c);
        }
        Ok(out)
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        self.check_domain(other)?;
        let mut out = Form::zero(self.dim);
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if let Some((s, m)) = a.product(b) {
                    let c = ca * cb;
                    out.add_term(m, &if s < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(Monomial) -> bool) -> Form {
        Form {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(&m, _)| keep(m))
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }

    /// Rewrites the form over a different generator set via an index map;
    /// `None` when some monomial uses a generator without an image.
    pub fn reindex(&self, dim: usize, map: impl Fn(usize) -> Option<usize>) -> Option<Form> {
        let mut out = Form::zero(dim);
        for (&m, c) in &self.terms {
            let idx: Vec<usize> = m.indices().map(&map).collect::<Option<_>>()?;
            let (s, mono) = Monomial::from_unsorted(&idx)?;
            out.add_term(mono, &if s < 0 { -c.clone() } else { c.clone() });
        }
        Some(out)
    }

    /// Renders with the given generator names, e.g. `x1^n1 - 1/2 x2^x3`.
    /// The output is accepted back by the `form` parser.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let word: Vec<&str> = m
                .indices()
                .map(|j| names.get(j).map(String::as_str).unwrap_or("?"))
                .collect();
            if word.is_empty() {
                let _ = write!(out, "{abs}");
            } else {
                if !abs.is_one() {
                    let _ = write!(out, "{abs} ");
                }
                out.push_str(&word.join("^"));
            }
        }
        out
    }
}

impl std::fmt::Debug for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = (0..self.dim).map(|i| format!("v{i}")).collect();
        write!(f, "Form[{}]({})", self.dim, self.display_with(&names))
    }
}

impl Serialize for Form {
    /// Serialized as a list of `[coefficient, [indices…]]` pairs; human-facing
    /// reports use [`Form::display_with`] instead.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(String, Vec<usize>)> = self
            .terms
            .iter()
            .map(|(m, c)| (c.to_string(), m.indices().collect()))
            .collect();
        terms.serialize(serializer)
    }
}

impl Add for &Form {
    type Output = Form;

    /// Panics when the forms live over different generator sets; use
    /// [`Form::try_add`] for a checked version.
    fn add(self, rhs: &Form) -> Form {
        self.try_add(rhs).expect("adding forms over different generator sets")
    }
}

impl Sub for &Form {
    type Output = Form;

    fn sub(self, rhs: &Form) -> Form {
        self + &(-rhs)
    }
}

impl Neg for &Form {
    type Output = Form;

    fn neg(self) -> Form {
        Form {
            dim: self.dim,
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }
}
