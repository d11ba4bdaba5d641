//! Constructors for the rigid families and the non-isomorphic pair.
//!
//! Generator names follow the usual notation: `x_i` of weight 0, `n_j` of
//! weight 1, `m` of weight 2; `a1, a2, b, c, d` of weights 0, 0, 1, 2, 3 for
//! the pair.

use crate::algebra::{Form, SullivanModel};
use crate::error::{Error, Result};
use crate::rational::{one, rat};

fn wedge2(dim: usize, a: usize, b: usize) -> Form {
    Form::generator(dim, a)
        .wedge(&Form::generator(dim, b))
        .expect("same dimension")
}

/// `x_1..x_s`, `n_1..n_r`, `m` with `d n_j = x_j x_{j+1}` and
/// `d m = Σ x_j n_j + extra`.
fn chain_model(s: usize, r: usize, extra: &[(usize, usize)]) -> Result<SullivanModel> {
    let dim = s + r + 1;
    let (x, n, m) = (|i: usize| i - 1, |j: usize| s + j - 1, s + r);
    let mut gens: Vec<(String, u32)> = (1..=s).map(|i| (format!("x{i}"), 0)).collect();
    gens.extend((1..=r).map(|j| (format!("n{j}"), 1)));
    gens.push(("m".into(), 2));
    let mut d = vec![Form::zero(dim); dim];
    for j in 1..=r {
        d[n(j)] = wedge2(dim, x(j), x(j + 1));
        d[m] = &d[m] + &wedge2(dim, x(j), n(j));
    }
    for &(a, b) in extra {
        d[m] = &d[m] + &wedge2(dim, x(a), x(b));
    }
    SullivanModel::new(gens, d)
}

/// `x_1..x_{2k}`, `n_1..n_{2k-1}`, `m`; `d n_i = x_i x_{i+1}`, `d m = Σ x_i n_i`.
pub fn theorem1_family(k: usize) -> Result<SullivanModel> {
    if k < 1 {
        return Err(Error::Invalid("the graded family needs k >= 1".into()));
    }
    chain_model(2 * k, 2 * k - 1, &[])
}

/// As [`theorem1_family`] with an extra `x_{2k+1}` and `x_{2k} x_{2k+1}` added to `d m`.
pub fn theorem2_family(k: usize) -> Result<SullivanModel> {
    if k < 2 {
        return Err(Error::Invalid("the non-graded family needs k >= 2".into()));
    }
    chain_model(2 * k + 1, 2 * k - 1, &[(2 * k, 2 * k + 1)])
}

/// The 10-generator model with `d m = x1n1 + x1n2 + x2n3 + x3x4`.
pub fn theorem4_example() -> SullivanModel {
    let dim = 10;
    let (x, n, m) = (|i: usize| i - 1, |j: usize| 3 + j, 9);
    let mut gens: Vec<(String, u32)> = (1..=4).map(|i| (format!("x{i}"), 0)).collect();
    gens.extend((1..=5).map(|j| (format!("n{j}"), 1)));
    gens.push(("m".into(), 2));
    let mut d = vec![Form::zero(dim); dim];
    for (j, (a, b)) in [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4)].into_iter().enumerate() {
        d[n(j + 1)] = wedge2(dim, x(a), x(b));
    }
    d[m] = [
        wedge2(dim, x(1), n(1)),
        wedge2(dim, x(1), n(2)),
        wedge2(dim, x(2), n(3)),
        wedge2(dim, x(3), x(4)),
    ]
    .iter()
    .fold(Form::zero(dim), |acc, f| &acc + f);
    SullivanModel::new(gens, d).expect("well-formed example")
}

/// Two 5-generator models differing only in `d d`: `a1 c`, resp. `a1 c + a2 b`.
pub fn section3_pair() -> (SullivanModel, SullivanModel) {
    let dim = 5;
    let (a1, a2, b, c, dd) = (0, 1, 2, 3, 4);
    let gens: Vec<(String, u32)> = [("a1", 0), ("a2", 0), ("b", 1), ("c", 2), ("d", 3)]
        .into_iter()
        .map(|(n, w)| (n.to_string(), w))
        .collect();
    let mut d = vec![Form::zero(dim); dim];
    d[b] = wedge2(dim, a1, a2);
    d[c] = wedge2(dim, a1, b);
    d[dd] = wedge2(dim, a1, c);
    let first = SullivanModel::new(gens.clone(), d.clone()).expect("well-formed");
    d[dd] = &d[dd] + &wedge2(dim, a2, b);
    let second = SullivanModel::new(gens, d).expect("well-formed");
    (first, second)
}

/// Generators of `H(first)` with their images in `H(second)` for the pair
/// from [`section3_pair`].
pub fn section3_ring_map() -> Vec<(Form, Form)> {
    let dim = 5;
    let mono = |idx: &[usize]| Form::from_terms(dim, &[(one(), idx)]);
    let (a1, a2, b, c, d) = (0, 1, 2, 3, 4);
    let bc_a2d = Form::from_terms(dim, &[(one(), &[b, c]), (rat(-1), &[a2, d])]);
    let a1cd_a2bd = Form::from_terms(dim, &[(one(), &[a1, c, d]), (rat(-1), &[a2, b, d])]);
    vec![
        (mono(&[a1]), mono(&[a1])),
        (mono(&[a2]), mono(&[a2])),
        (mono(&[a2, b]), mono(&[a2, b])),
        (bc_a2d.clone(), bc_a2d),
        (mono(&[a1, b, c]), mono(&[a1, b, c])),
        (mono(&[a1, c, d]), a1cd_a2bd),
        (mono(&[a1, b, c, d]), mono(&[a1, b, c, d])),
    ]
}

/// Adds `p` to the differential of the unique top-weight generator.
pub fn perturb_top(model: &SullivanModel, p: &Form) -> Result<SullivanModel> {
    let top = model.max_weight();
    let tops: Vec<usize> = (0..model.dim())
        .filter(|&i| model.generators()[i].weight == top)
        .collect();
    let [m] = tops[..] else {
        return Err(Error::FamilyShape(format!(
            "{} generators of top weight {top}",
            tops.len()
        )));
    };
    model.with_differential(m, model.differential_of(m).try_add(p)?)
}
