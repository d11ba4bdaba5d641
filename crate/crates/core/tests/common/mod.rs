//! Test-side oracles and instance generators.
//!
//! Nothing here goes through the library's echelon, forms or cohomology
//! code: cochain matrices are filled by evaluating the Chevalley–Eilenberg
//! formula on basis tuples, and ranks come from a plain dense elimination.

#![allow(dead_code)]

use std::collections::BTreeMap;

use nilrigid::linalg::SparseVec;
use nilrigid::{LieAlgebra, Rational};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

// ---------------------------------------------------------------- dense algebra

/// Row echelon form in place; returns the pivot columns.
fn eliminate(rows: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (j, y) in pivot_row.iter().enumerate() {
                if !y.is_zero() {
                    row[j] -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut m = rows.to_vec();
    eliminate(&mut m, first.len()).len()
}

/// Basis of `{x : M x = 0}` for `M` given by rows with `ncols` columns.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = eliminate(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

// ------------------------------------------------------------ exterior algebra

/// A form as a map from strictly increasing index tuples to coefficients.
pub type Ext = BTreeMap<Vec<usize>, Rational>;

pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// Sign of the permutation sorting `seq`, or `None` on a repeated index.
fn sort_sign(seq: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] == seq[j] {
                return None;
            }
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    Some((if inversions % 2 == 0 { 1 } else { -1 }, sorted))
}

pub fn ext_wedge(a: &Ext, b: &Ext) -> Ext {
    let mut out = Ext::new();
    for (ia, ca) in a {
        for (ib, cb) in b {
            let seq: Vec<usize> = ia.iter().chain(ib).copied().collect();
            if let Some((s, key)) = sort_sign(&seq) {
                let e = out.entry(key).or_insert_with(Rational::zero);
                *e += ca * cb * q(s);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn ext_from_vector(basis: &[Vec<usize>], v: &[Rational]) -> Ext {
    basis
        .iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

pub fn ext_to_vector(basis: &[Vec<usize>], f: &Ext) -> Vec<Rational> {
    let index: BTreeMap<&Vec<usize>, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut v = vec![Rational::zero(); basis.len()];
    for (m, c) in f {
        v[index[m]] = c.clone();
    }
    v
}

pub fn ext_from_form(f: &nilrigid::Form) -> Ext {
    f.terms().map(|(m, c)| (m.indices().collect(), c.clone())).collect()
}

// ------------------------------------------------- Chevalley–Eilenberg oracle

/// `(l, k) -> [(s, c^s_{lk})]` for all ordered pairs, skew-symmetric.
fn bracket_table(lie: &LieAlgebra) -> BTreeMap<(usize, usize), Vec<(usize, Rational)>> {
    let mut t = BTreeMap::new();
    for ((l, k), v) in lie.brackets() {
        let pos: Vec<(usize, Rational)> = v.iter().map(|(s, c)| (s, c.clone())).collect();
        let neg = pos.iter().map(|(s, c)| (*s, -c.clone())).collect();
        t.insert((l, k), pos);
        t.insert((k, l), neg);
    }
    t
}

/// Matrix of `d : Λ^p 𝔤* → Λ^{p+1} 𝔤*` (rows indexed by `(p+1)`-subsets),
/// from `dω(X_0..X_p) = Σ_{a<b} (−1)^{a+b} ω([X_a,X_b], X_0..^a..^b..X_p)`.
pub fn ce_matrix(lie: &LieAlgebra, p: usize) -> Vec<Vec<Rational>> {
    let n = lie.dim();
    let table = bracket_table(lie);
    let cols = subsets(n, p);
    let col_index: BTreeMap<Vec<usize>, usize> =
        cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let rows = subsets(n, p + 1);
    rows.iter()
        .map(|j| {
            let mut row = vec![Rational::zero(); cols.len()];
            for a in 0..j.len() {
                for b in a + 1..j.len() {
                    let Some(br) = table.get(&(j[a], j[b])) else { continue };
                    let sign_ab = if (a + b) % 2 == 0 { 1 } else { -1 };
                    let rest: Vec<usize> = j
                        .iter()
                        .enumerate()
                        .filter(|&(t, _)| t != a && t != b)
                        .map(|(_, &x)| x)
                        .collect();
                    for (s, c) in br {
                        let mut seq = vec![*s];
                        seq.extend(&rest);
                        if let Some((sign, key)) = sort_sign(&seq) {
                            row[col_index[&key]] += c * q(sign_ab * sign);
                        }
                    }
                }
            }
            row
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Betti numbers from ranks of the CE matrices.
pub fn oracle_betti(lie: &LieAlgebra) -> Vec<usize> {
    let n = lie.dim();
    let ranks: Vec<usize> = (0..n).map(|p| dense_rank(&ce_matrix(lie, p))).collect();
    (0..=n)
        .map(|p| {
            let out = if p < n { ranks[p] } else { 0 };
            let inc = if p > 0 { ranks[p - 1] } else { 0 };
            binomial(n, p) - out - inc
        })
        .collect()
}

/// Degree-`p` data: cocycle basis (as forms), coboundary vectors, basis.
pub struct DegreeOracle {
    pub basis: Vec<Vec<usize>>,
    pub cocycles: Vec<Ext>,
    pub coboundaries: Vec<Vec<Rational>>,
}

pub fn degree_oracle(lie: &LieAlgebra, p: usize) -> DegreeOracle {
    let n = lie.dim();
    let basis = subsets(n, p);
    let cocycles = nullspace(&ce_matrix(lie, p), basis.len())
        .iter()
        .map(|v| ext_from_vector(&basis, v))
        .collect();
    let coboundaries = if p == 0 {
        Vec::new()
    } else {
        let d = ce_matrix(lie, p - 1);
        let ncols = binomial(n, p - 1);
        (0..ncols).map(|c| d.iter().map(|row| row[c].clone()).collect()).collect()
    };
    DegreeOracle {
        basis,
        cocycles,
        coboundaries,
    }
}

/// `(b_p, number of algebra generators in degree p)`: generators are
/// `dim Z^p − rank(B^p + Σ_{0<i<p} Z^i ∧ Z^{p−i})`.
pub fn oracle_generators(lie: &LieAlgebra, p: usize) -> (usize, usize) {
    let top = degree_oracle(lie, p);
    let b = top.cocycles.len() - dense_rank(&top.coboundaries);
    let mut span = top.coboundaries.clone();
    let lower: Vec<DegreeOracle> = (0..p).map(|i| degree_oracle(lie, i)).collect();
    for i in 1..=p / 2 {
        for a in &lower[i].cocycles {
            for c in &lower[p - i].cocycles {
                span.push(ext_to_vector(&top.basis, &ext_wedge(a, c)));
            }
        }
    }
    (b, top.cocycles.len() - dense_rank(&span))
}

/// Whether each form is closed, and whether the list stays independent
/// modulo coboundaries and decomposables (first dependent prefix length).
pub fn oracle_listed_classes(lie: &LieAlgebra, p: usize, forms: &[Ext]) -> (bool, Option<usize>) {
    let d = ce_matrix(lie, p);
    let top = degree_oracle(lie, p);
    let closed = forms.iter().all(|f| {
        let v = ext_to_vector(&top.basis, f);
        d.iter().all(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum::<Rational>().is_zero())
    });
    let mut span = top.coboundaries.clone();
    for i in 1..=p / 2 {
        let (lo, hi) = (degree_oracle(lie, i), degree_oracle(lie, p - i));
        for a in &lo.cocycles {
            for c in &hi.cocycles {
                span.push(ext_to_vector(&top.basis, &ext_wedge(a, c)));
            }
        }
    }
    let mut r = dense_rank(&span);
    for (i, f) in forms.iter().enumerate() {
        span.push(ext_to_vector(&top.basis, f));
        let r2 = dense_rank(&span);
        if r2 == r {
            return (closed, Some(i + 1));
        }
        r = r2;
    }
    (closed, None)
}

/// `dim 𝔤/[𝔤,𝔤]` from the span of all brackets.
pub fn oracle_abelianization(lie: &LieAlgebra) -> usize {
    let n = lie.dim();
    let rows: Vec<Vec<Rational>> = lie.brackets().map(|(_, v)| v.to_dense(n)).collect();
    n - dense_rank(&rows)
}

// ------------------------------------------------ family Lie algebras by hand

/// `[l, k] = Σ c·name` as `(l, k, &[(c, name)])`.
pub type BracketEntry<'a> = (&'a str, &'a str, &'a [(i64, &'a str)]);

pub fn lie_from_list(names: &[&str], brackets: &[BracketEntry]) -> LieAlgebra {
    let idx = |s: &str| names.iter().position(|n| *n == s).expect("known name");
    LieAlgebra::new(
        names.iter().map(|s| s.to_string()).collect(),
        brackets.iter().map(|(a, b, v)| {
            let vec: SparseVec = v.iter().map(|&(c, s)| (idx(s), q(c))).collect();
            (idx(a), idx(b), vec)
        }),
    )
    .expect("well-formed bracket list")
}

/// `x_1..x_s, n_1..n_{s'−1}, m` with `[x_i,x_{i+1}] = −n_i`, `[x_i,n_i] = −m`,
/// plus `[x_{2k},x_{2k+1}] = −m` when `extra`.
pub fn chain_lie(xs: usize, ns: usize, extra: bool) -> LieAlgebra {
    let mut names: Vec<String> = (1..=xs).map(|i| format!("x{i}")).collect();
    names.extend((1..=ns).map(|j| format!("n{j}")));
    names.push("m".into());
    let (x, n, m) = (|i: usize| i - 1, |j: usize| xs + j - 1, xs + ns);
    let mut entries = Vec::new();
    for i in 1..=ns {
        entries.push((x(i), x(i + 1), [(n(i), q(-1))].into_iter().collect::<SparseVec>()));
        entries.push((x(i), n(i), [(m, q(-1))].into_iter().collect()));
    }
    if extra {
        entries.push((x(xs - 1), x(xs), [(m, q(-1))].into_iter().collect()));
    }
    LieAlgebra::new(names, entries).expect("well-formed")
}

pub fn theorem1_lie(k: usize) -> LieAlgebra {
    chain_lie(2 * k, 2 * k - 1, false)
}

/// `bar` drops the `[x_{2k},x_{2k+1}]` bracket.
pub fn theorem2_lie(k: usize, bar: bool) -> LieAlgebra {
    chain_lie(2 * k + 1, 2 * k - 1, !bar)
}

pub fn theorem4_lie(bar: bool) -> LieAlgebra {
    let names = ["x1", "x2", "x3", "x4", "n1", "n2", "n3", "n4", "n5", "m"];
    let mut b: Vec<BracketEntry> = vec![
        ("x1", "x2", &[(-1, "n1")]),
        ("x1", "x3", &[(-1, "n2")]),
        ("x2", "x3", &[(-1, "n3")]),
        ("x1", "x4", &[(-1, "n4")]),
        ("x2", "x4", &[(-1, "n5")]),
        ("x1", "n1", &[(-1, "m")]),
        ("x1", "n2", &[(-1, "m")]),
        ("x2", "n3", &[(-1, "m")]),
    ];
    if !bar {
        b.push(("x3", "x4", &[(-1, "m")]));
    }
    lie_from_list(&names, &b)
}

pub fn section3_lies() -> (LieAlgebra, LieAlgebra) {
    let names = ["a1", "a2", "b", "c", "d"];
    let mut b: Vec<BracketEntry> = vec![
        ("a1", "a2", &[(-1, "b")]),
        ("a1", "b", &[(-1, "c")]),
        ("a1", "c", &[(-1, "d")]),
    ];
    let first = lie_from_list(&names, &b);
    b.push(("a2", "b", &[(-1, "d")]));
    (first, lie_from_list(&names, &b))
}

/// Degree-3 classes listed for the non-graded family: `(k, bar, classes)`.
pub const LISTED_CLASSES: [(usize, bool, &[&str]); 4] = [
    (
        2,
        false,
        &[
            "x4^x5^n2 + x1^n1^n2 - x2^x3^m",
            "x4^x5^n1 - x3^n1^n3 - x1^x2^m",
            "x3^n2^n3",
            "x3^n1^n2 + x1^x5^n3 - x1^x3^m",
            "x2^n1^n2",
            "x1^n1^n2 + x2^x5^n3 - x2^x3^m",
        ],
    ),
    (
        2,
        true,
        &[
            "x3^n2^n3",
            "x3^n1^n3 + x1^x2^m",
            "x3^n1^n2 - x1^x3^m",
            "x2^n1^n2",
            "-x1^n1^n2 + x2^x3^m",
        ],
    ),
    (
        3,
        false,
        &[
            "x6^x7^n4 + x1^n1^n4 + x2^n2^n4 + x3^n3^n4 - x4^x5^m",
            "x6^x7^n3 + x1^n1^n3 + x2^n2^n3 - x5^n3^n5 - x3^x4^m",
            "x6^x7^n2 + x1^n1^n2 - x4^n2^n4 - x5^n2^n5 - x2^x3^m",
            "x6^x7^n1 - x3^n1^n3 - x4^n1^n4 - x5^n1^n5 - x1^x2^m",
            "x5^n4^n5",
            "x4^n3^n4",
            "x1^n1^n4 + x2^n2^n4 + x3^n3^n4 + x4^x7^n5 - x4^x5^m",
            "x3^n2^n3",
            "x2^n1^n2",
        ],
    ),
    (
        3,
        true,
        &[
            "x5^n4^n5",
            "-x1^n1^n3 - x2^n2^n3 + x5^n3^n5 + x3^x4^m",
            "-x1^n1^n2 + x4^n2^n4 + x5^n2^n5 + x2^x3^m",
            "x3^n1^n3 + x4^n1^n4 + x5^n1^n5 + x1^x2^m",
            "x4^n3^n4",
            "-x1^n1^n4 - x2^n2^n4 - x3^n3^n4 + x4^x5^m",
            "x3^n2^n3",
            "x2^n1^n2",
        ],
    ),
];

// ------------------------------------------------------------ random algebras

fn random_coeff(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-3i64..=3);
    let den = if rng.gen_bool(0.2) { rng.gen_range(1i64..=3) } else { 1 };
    Rational::new(num.into(), den.into())
}

/// A nilpotent algebra of dimension `dim`, built as iterated central
/// extensions by random closed 2-forms (closedness from the oracle's own
/// CE matrix), then rewritten in a random basis.
pub fn random_nilpotent_lie(rng: &mut ChaCha8Rng, dim: usize) -> LieAlgebra {
    assert!(dim >= 1);
    let start = rng.gen_range(1..=dim.min(3));
    let mut entries: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for i in start..dim {
        let current = LieAlgebra::new(
            names("e", i),
            entries.iter().map(|(&(l, k), v)| (l, k, v.clone())),
        )
        .expect("valid so far");
        let basis = subsets(i, 2);
        let closed = nullspace(&ce_matrix(&current, 2), basis.len());
        let mut omega = vec![Rational::zero(); basis.len()];
        for z in &closed {
            let c = random_coeff(rng);
            for (o, x) in omega.iter_mut().zip(z) {
                *o += &c * x;
            }
        }
        for (pair, c) in basis.iter().zip(&omega) {
            if !c.is_zero() {
                entries.entry((pair[0], pair[1])).or_default().add_at(i, c);
            }
        }
    }
    let lie = LieAlgebra::new(names("e", dim), entries.into_iter().map(|((l, k), v)| (l, k, v)))
        .expect("valid");
    random_basis_change(rng, &lie)
}

pub fn random_basis_change(rng: &mut ChaCha8Rng, lie: &LieAlgebra) -> LieAlgebra {
    let n = lie.dim();
    loop {
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| q(rng.gen_range(-2i64..=2))).collect())
            .collect();
        if dense_rank(&cols) == n {
            let sparse: Vec<SparseVec> = cols.iter().map(|c| SparseVec::from_dense(c)).collect();
            return lie.change_basis(&sparse, names("f", n)).expect("invertible");
        }
    }
}

/// A valid algebra with one structure constant perturbed.
pub fn corrupted_lie(rng: &mut ChaCha8Rng, dim: usize) -> LieAlgebra {
    let lie = random_nilpotent_lie(rng, dim.max(3));
    let n = lie.dim();
    let l = rng.gen_range(0..n);
    let mut k = rng.gen_range(0..n - 1);
    if k >= l {
        k += 1;
    }
    let (l, k) = (l.min(k), l.max(k));
    let s = rng.gen_range(0..n);
    let mut delta = q(0);
    while delta.is_zero() {
        delta = random_coeff(rng);
    }
    let mut entries: BTreeMap<(usize, usize), SparseVec> =
        lie.brackets().map(|(key, v)| (key, v.clone())).collect();
    entries.entry((l, k)).or_default().add_at(s, &delta);
    LieAlgebra::new(lie.names().to_vec(), entries.into_iter().map(|((l, k), v)| (l, k, v)))
        .expect("still skew")
}

// ------------------------------------------------------------- morphisms

fn add_scaled(acc: &mut Ext, f: &Ext, c: &Rational) {
    for (m, x) in f {
        let e = acc.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c * x;
    }
    acc.retain(|_, x| !x.is_zero());
}

/// Whether linear generator images commute with the differentials and are
/// invertible, recomputed in `Ext` arithmetic.
pub fn oracle_is_isomorphism(
    src: &nilrigid::SullivanModel,
    dst: &nilrigid::SullivanModel,
    images: &[nilrigid::Form],
) -> bool {
    let phi: Vec<Ext> = images.iter().map(ext_from_form).collect();
    if phi.iter().flat_map(|f| f.keys()).any(|m| m.len() != 1) {
        return false;
    }
    let d_dst: Vec<Ext> = (0..dst.dim()).map(|i| ext_from_form(dst.differential_of(i))).collect();
    let commutes = (0..src.dim()).all(|v| {
        let mut lhs = Ext::new();
        for (m, c) in &phi[v] {
            add_scaled(&mut lhs, &d_dst[m[0]], c);
        }
        let mut rhs = Ext::new();
        for (m, c) in ext_from_form(src.differential_of(v)) {
            add_scaled(&mut rhs, &ext_wedge(&phi[m[0]], &phi[m[1]]), &c);
        }
        lhs == rhs
    });
    let basis = subsets(dst.dim(), 1);
    let rows: Vec<Vec<Rational>> = phi.iter().map(|f| ext_to_vector(&basis, f)).collect();
    commutes && src.dim() == dst.dim() && dense_rank(&rows) == src.dim()
}

/// `d ∘ d` on `Λ^1 → Λ^3` vanishes (equivalently, the Jacobi identity).
pub fn oracle_d_squared_zero(lie: &LieAlgebra) -> bool {
    let (d1, d2) = (ce_matrix(lie, 1), ce_matrix(lie, 2));
    d2.iter().all(|row| {
        (0..lie.dim()).all(|c| {
            row.iter()
                .zip(&d1)
                .map(|(a, r1)| a * &r1[c])
                .sum::<Rational>()
                .is_zero()
        })
    })
}
