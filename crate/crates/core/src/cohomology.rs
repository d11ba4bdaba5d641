//! Exact cohomology of a Sullivan model: Betti numbers, representative
//! cocycles, cup products and indecomposables `H⁺ / (H⁺ · H⁺)`.
//!
//! All bases are lexicographic in the monomials and all eliminations pivot on
//! the leading column, so representatives are reproducible. Representatives
//! are one valid choice among many; compare classes through
//! [`CohomologyRing::class_coordinates`], never through the forms themselves.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Form, Monomial, SullivanModel};
use crate::error::{Error, Result};
use crate::lie::is_carnot_homogeneous;
use crate::linalg::{kernel, Echelon, SparseVec};
use crate::rational::Rational;

/// The matrix of `d: Λ^p → Λ^{p+1}` in lexicographic monomial bases.
#[derive(Debug, Clone)]
pub struct CochainMatrix {
    /// Column labels (basis of Λ^p).
    pub source: Vec<Monomial>,
    /// Row labels (basis of Λ^{p+1}).
    pub target: Vec<Monomial>,
    /// Sparse columns, indexed by row position.
    pub columns: Vec<SparseVec>,
}

impl CochainMatrix {
    pub fn rank(&self) -> usize {
        crate::linalg::rank(&self.columns)
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut rows = vec![vec![Rational::zero(); self.source.len()]; self.target.len()];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col.iter() {
                rows[i][j] = c.clone();
            }
        }
        rows
    }
}

fn index_of(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().enumerate().map(|(i, &m)| (m, i)).collect()
}

fn to_sparse(f: &Form, index: &HashMap<Monomial, usize>) -> SparseVec {
    f.terms().map(|(m, c)| (index[&m], c.clone())).collect()
}

fn columns_of(
    model: &SullivanModel,
    source: &[Monomial],
    target_index: &HashMap<Monomial, usize>,
) -> Vec<SparseVec> {
    source
        .iter()
        .map(|&m| to_sparse(&model.differential_of_monomial(m), target_index))
        .collect()
}

pub fn cochain_matrix(model: &SullivanModel, p: usize) -> CochainMatrix {
    let source = model.monomial_basis(p, None);
    let target = model.monomial_basis(p + 1, None);
    let columns = columns_of(model, &source, &index_of(&target));
    CochainMatrix {
        source,
        target,
        columns,
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Betti numbers `b_0 … b_n`, from `b_p = C(n,p) - rank d_p - rank d_{p-1}`.
pub fn betti(model: &SullivanModel) -> Result<Vec<usize>> {
    model.require_d_squared_zero()?;
    let n = model.dim();
    let ranks: Vec<usize> = (0..=n)
        .into_par_iter()
        .map(|p| cochain_matrix(model, p).rank())
        .collect();
    Ok((0..=n)
        .map(|p| binomial(n, p) - ranks[p] - if p > 0 { ranks[p - 1] } else { 0 })
        .collect())
}

/// Dimension of `H^p` split by total lower degree (monomial weight).
///
/// Needs a Carnot-homogeneous differential, which lowers the weight by
/// exactly one and therefore splits the complex. Every weight occurring in
/// `Λ^p` is listed, including those with zero cohomology.
pub fn betti_by_weight(model: &SullivanModel, p: usize) -> Result<BTreeMap<u32, usize>> {
    if !is_carnot_homogeneous(model) {
        let bad = (0..model.dim())
            .find(|&i| {
                let w = model.generators()[i].weight;
                model
                    .differential_of(i)
                    .terms()
                    .any(|(m, _)| w == 0 || model.monomial_weight(m) != w - 1)
            })
            .unwrap_or(0);
        return Err(Error::NotHomogeneous {
            generator: model.generators()[bad].name.clone(),
        });
    }
    model.require_d_squared_zero()?;
    let next_index = index_of(&model.monomial_basis(p + 1, None));
    let here_index = index_of(&model.monomial_basis(p, None));
    let mut by_weight: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
    for m in model.monomial_basis(p, None) {
        by_weight.entry(model.monomial_weight(m)).or_default().push(m);
    }
    let mut below: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
    if p > 0 {
        for m in model.monomial_basis(p - 1, None) {
            below.entry(model.monomial_weight(m)).or_default().push(m);
        }
    }
    let mut out = BTreeMap::new();
    for (&w, monos) in &by_weight {
        let cocycles = monos.len() - crate::linalg::rank(&columns_of(model, monos, &next_index));
        let coboundaries = below
            .get(&(w + 1))
            .map_or(0, |src| crate::linalg::rank(&columns_of(model, src, &here_index)));
        out.insert(w, cocycles - coboundaries);
    }
    Ok(out)
}

/// A cohomology class in coordinates of the chosen representative basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassVector {
    pub degree: usize,
    #[serde(serialize_with = "crate::rational::serialize_vec")]
    pub coords: Vec<Rational>,
}

impl ClassVector {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn unit(degree: usize, len: usize, i: usize) -> ClassVector {
        let mut coords = vec![Rational::zero(); len];
        coords[i] = Rational::from_integer(1.into());
        ClassVector { degree, coords }
    }
}

#[derive(Debug, Clone)]
struct DegreeData {
    basis_index: HashMap<Monomial, usize>,
    cocycle_dim: usize,
    coboundary_dim: usize,
    representatives: Vec<Form>,
    /// Coboundaries (tag 0) followed by representatives (tag e_i).
    reducer: Echelon,
}

fn compute_degree(model: &SullivanModel, p: usize) -> DegreeData {
    let basis = model.monomial_basis(p, None);
    let basis_index = index_of(&basis);
    let mut reducer = Echelon::new();
    if p > 0 {
        for col in columns_of(model, &model.monomial_basis(p - 1, None), &basis_index) {
            reducer.push(col);
        }
    }
    let coboundary_dim = reducer.rank();
    let next_index = index_of(&model.monomial_basis(p + 1, None));
    let cocycles = kernel(&columns_of(model, &basis, &next_index));
    let mut representatives = Vec::new();
    for z in &cocycles {
        let red = reducer.insert(z.clone(), SparseVec::unit(representatives.len()));
        if !red.remainder.is_zero() {
            let mut f = Form::zero(model.dim());
            for (i, c) in z.iter() {
                f.add_term(basis[i], c);
            }
            representatives.push(f);
        }
    }
    DegreeData {
        basis_index,
        cocycle_dim: cocycles.len(),
        coboundary_dim,
        representatives,
        reducer,
    }
}

/// Cohomology of a model in degrees `0..=max_degree`, with enough reduction
/// data to express any cocycle in the representative basis.
#[derive(Debug, Clone)]
pub struct CohomologyRing {
    model: SullivanModel,
    degrees: Vec<DegreeData>,
}

/// Indecomposables of `H^p`: count and classes completing `H⁺·H⁺` to `H^p`.
#[derive(Debug, Clone, Serialize)]
pub struct Indecomposables {
    pub degree: usize,
    pub count: usize,
    pub decomposable_dim: usize,
    pub representatives: Vec<ClassVector>,
}

impl CohomologyRing {
    /// All degrees `0..=n`.
    pub fn new(model: &SullivanModel) -> Result<CohomologyRing> {
        CohomologyRing::up_to(model, model.dim())
    }

    /// Degrees `0..=max_degree` only (clamped to `n`).
    pub fn up_to(model: &SullivanModel, max_degree: usize) -> Result<CohomologyRing> {
        model.require_d_squared_zero()?;
        let top = max_degree.min(model.dim());
        let degrees = (0..=top)
            .into_par_iter()
            .map(|p| compute_degree(model, p))
            .collect();
        Ok(CohomologyRing {
            model: model.clone(),
            degrees,
        })
    }

    pub fn model(&self) -> &SullivanModel {
        &self.model
    }

    /// Highest degree computed.
    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    fn degree(&self, p: usize) -> Result<&DegreeData> {
        self.degrees.get(p).ok_or_else(|| {
            Error::Invalid(format!(
                "degree {p} not computed (max {})",
                self.max_degree()
            ))
        })
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.representatives.len()).collect()
    }

    pub fn betti_number(&self, p: usize) -> usize {
        self.degrees.get(p).map_or(0, |d| d.representatives.len())
    }

    pub fn cocycle_dim(&self, p: usize) -> Result<usize> {
        Ok(self.degree(p)?.cocycle_dim)
    }

    pub fn coboundary_dim(&self, p: usize) -> Result<usize> {
        Ok(self.degree(p)?.coboundary_dim)
    }

    /// Closed, linearly independent modulo coboundaries, spanning `H^p`.
    pub fn representatives(&self, p: usize) -> Result<&[Form]> {
        Ok(&self.degree(p)?.representatives)
    }

    fn sparse_of(&self, f: &Form, p: usize) -> Result<SparseVec> {
        if f.dim() != self.model.dim() {
            return Err(Error::DomainMismatch {
                left: self.model.dim(),
                right: f.dim(),
            });
        }
        if !f.has_degree(p) {
            return Err(Error::Invalid(format!("form is not homogeneous of degree {p}")));
        }
        Ok(to_sparse(f, &self.degree(p)?.basis_index))
    }

    /// Writes a closed form as `Σ coords_i · rep_i + exact`.
    pub fn class_coordinates(&self, f: &Form, p: usize) -> Result<ClassVector> {
        let v = self.sparse_of(f, p)?;
        let df = self.model.apply_differential(f)?;
        if !df.is_zero() {
            return Err(Error::NotClosed { differential: df });
        }
        let data = self.degree(p)?;
        let red = data.reducer.reduce(v, SparseVec::new());
        assert!(
            red.remainder.is_zero(),
            "closed form outside cocycle span: cohomology data inconsistent"
        );
        let mut coords = red.tag.to_dense(data.representatives.len());
        for c in &mut coords {
            *c = -c.clone();
        }
        Ok(ClassVector { degree: p, coords })
    }

    /// Whether a closed form is a coboundary.
    pub fn is_exact(&self, f: &Form, p: usize) -> Result<bool> {
        Ok(self.class_coordinates(f, p)?.is_zero())
    }

    /// A cocycle representing the class.
    pub fn form_of(&self, class: &ClassVector) -> Result<Form> {
        let reps = self.representatives(class.degree)?;
        if reps.len() != class.coords.len() {
            return Err(Error::Invalid("class vector length differs from Betti number".into()));
        }
        let mut out = Form::zero(self.model.dim());
        for (c, r) in class.coords.iter().zip(reps) {
            out = &out + &r.scaled(c);
        }
        Ok(out)
    }

    /// Cup product, computed on representatives and reduced again.
    pub fn cup(&self, u: &ClassVector, v: &ClassVector) -> Result<ClassVector> {
        let p = u.degree + v.degree;
        if p > self.max_degree() {
            return Err(Error::Invalid(format!(
                "product lands in degree {p}, beyond {}",
                self.max_degree()
            )));
        }
        let product = self.form_of(u)?.wedge(&self.form_of(v)?)?;
        self.class_coordinates(&product, p)
    }

    /// Echelon of the decomposable subspace `Σ_{0<i<p} H^i · H^{p-i}` in
    /// class coordinates of `H^p`.
    fn decomposables(&self, p: usize) -> Result<Echelon> {
        let mut span = Echelon::new();
        for i in 1..p {
            let j = p - i;
            if i > j {
                break;
            }
            let (left, right) = (self.representatives(i)?, self.representatives(j)?);
            for (a_idx, a) in left.iter().enumerate() {
                let start = if i == j { a_idx } else { 0 };
                for b in &right[start..] {
                    let class = self.class_coordinates(&a.wedge(b)?, p)?;
                    span.push(SparseVec::from_dense(&class.coords));
                }
            }
        }
        Ok(span)
    }

    pub fn decomposable_dim(&self, p: usize) -> Result<usize> {
        Ok(self.decomposables(p)?.rank())
    }

    /// Whether the given classes of `H^p` are independent modulo decomposables.
    pub fn independent_mod_decomposables(&self, classes: &[ClassVector]) -> Result<bool> {
        let Some(first) = classes.first() else { return Ok(true) };
        let p = first.degree;
        let mut span = self.decomposables(p)?;
        for c in classes {
            if c.degree != p || !span.push(SparseVec::from_dense(&c.coords)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Number of algebra generators needed in degree `p`.
    pub fn indecomposables(&self, p: usize) -> Result<Indecomposables> {
        let b = self.degree(p)?.representatives.len();
        if p == 0 {
            return Ok(Indecomposables {
                degree: 0,
                count: 0,
                decomposable_dim: 0,
                representatives: Vec::new(),
            });
        }
        let mut span = self.decomposables(p)?;
        let decomposable_dim = span.rank();
        let representatives: Vec<ClassVector> = (0..b)
            .map(|i| ClassVector::unit(p, b, i))
            .filter(|e| span.push(SparseVec::from_dense(&e.coords)))
            .collect();
        Ok(Indecomposables {
            degree: p,
            count: representatives.len(),
            decomposable_dim,
            representatives,
        })
    }
}
