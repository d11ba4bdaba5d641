use num_traits::Zero;
use serde::Serialize;

use crate::algebra::Form;
use crate::error::{Error, Result};
use crate::linalg::{rank, SparseVec};
use crate::rational::Rational;

/// Answer of [`is_decomposable_2form`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Decomposability {
    /// `u ∧ v` equals the input exactly.
    Decomposable { u: Form, v: Form },
    /// `square = w ∧ w` is nonzero and the skew matrix has rank `rank > 2`.
    Indecomposable { square: Form, rank: usize },
}

impl Decomposability {
    pub fn is_decomposable(&self) -> bool {
        matches!(self, Decomposability::Decomposable { .. })
    }
}

/// Skew-symmetric coefficient matrix `M` with `w = Σ_{i<j} M[i][j] v_i v_j`.
pub fn skew_matrix(w: &Form) -> Result<Vec<Vec<Rational>>> {
    if !w.has_degree(2) {
        return Err(Error::Invalid("decomposability needs a 2-form".into()));
    }
    let n = w.dim();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (mono, c) in w.terms() {
        let mut idx = mono.indices();
        let (i, j) = (idx.next().expect("2-form"), idx.next().expect("2-form"));
        m[i][j] = c.clone();
        m[j][i] = -c.clone();
    }
    Ok(m)
}

fn row_form(row: &[Rational]) -> Form {
    let mut f = Form::zero(row.len());
    for (j, c) in row.iter().enumerate() {
        if !c.is_zero() {
            f = &f + &Form::generator(row.len(), j).scaled(c);
        }
    }
    f
}

/// Decides whether `w = u ∧ v` for linear forms `u, v`.
///
/// The decision uses the rank of the skew matrix (at most 2). The square
/// `w ∧ w` is computed separately and returned as the certificate when the
/// answer is no; a factorization is built from two rows of the matrix when
/// the answer is yes.
pub fn is_decomposable_2form(w: &Form) -> Result<Decomposability> {
    let m = skew_matrix(w)?;
    let rows: Vec<SparseVec> = m.iter().map(|r| SparseVec::from_dense(r)).collect();
    let r = rank(&rows);
    if r > 2 {
        return Ok(Decomposability::Indecomposable {
            square: w.wedge(w)?,
            rank: r,
        });
    }
    let n = w.dim();
    let Some((a, b)) = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !m[i][j].is_zero())
    else {
        return Ok(Decomposability::Decomposable {
            u: Form::zero(n),
            v: Form::zero(n),
        });
    };
    // For w = u ∧ v of rank 2: w = (-row_b / M[a][b]) ∧ row_a.
    let u = row_form(&m[b]).scaled(&-m[a][b].recip());
    let v = row_form(&m[a]);
    debug_assert_eq!(&u.wedge(&v)?, w);
    Ok(Decomposability::Decomposable { u, v })
}
