//! Free nilpotent Lie algebras in the Lyndon basis.
//!
//! The basis element for a Lyndon word `w` is its standard bracketing `P_w`
//! (bracket the standard factorization recursively). As an associative
//! polynomial, `P_w = w + (larger words)`, so any Lie polynomial is rewritten
//! in the basis by repeatedly cancelling its smallest word. A word of length
//! `m` gets weight `m - 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::algebra::MAX_GENERATORS;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{Echelon, SparseVec};
use crate::rational::Rational;

/// A Lyndon word over the alphabet `0..l`, printed with letters `a, b, c, …`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LyndonWord(Vec<u8>);

impl LyndonWord {
    /// `None` unless `letters` is strictly smaller than all its proper rotations.
    pub fn new(letters: Vec<u8>) -> Option<LyndonWord> {
        is_lyndon(&letters).then_some(LyndonWord(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(u, v)` with `w = uv` and `v` the longest proper Lyndon suffix.
    pub fn standard_factorization(&self) -> Option<(LyndonWord, LyndonWord)> {
        (1..self.len())
            .find(|&i| is_lyndon(&self.0[i..]))
            .map(|i| (LyndonWord(self.0[..i].to_vec()), LyndonWord(self.0[i..].to_vec())))
    }

    /// Standard bracketing as a tree.
    pub fn bracketing(&self) -> BracketTree {
        match self.standard_factorization() {
            None => BracketTree::Letter(self.0[0]),
            Some((u, v)) => BracketTree::bracket(u.bracketing(), v.bracketing()),
        }
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.0 {
            write!(f, "{}", letter_name(c))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn letter_name(c: u8) -> char {
    (b'a' + c) as char
}

fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty()
        && (1..w.len()).all(|i| {
            let mut rot = w[i..].to_vec();
            rot.extend_from_slice(&w[..i]);
            w < &rot[..]
        })
}

/// Lyndon words over `l` letters of lengths `1..=max_len`, grouped by length,
/// each group in lexicographic order (Duval's generation).
pub fn lyndon_words(l: usize, max_len: usize) -> Vec<Vec<LyndonWord>> {
    let mut out = vec![Vec::new(); max_len];
    if l == 0 || max_len == 0 {
        return out;
    }
    let top = (l - 1) as u8;
    let mut w: Vec<u8> = vec![0];
    while !w.is_empty() {
        out[w.len() - 1].push(LyndonWord(w.clone()));
        let n = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - n]);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    for group in &mut out {
        group.sort();
    }
    out
}

fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of the length-`n` part of the free Lie algebra on `l` generators.
pub fn witt_number(l: usize, n: usize) -> usize {
    assert!(n >= 1);
    let total: i128 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| mobius(d) as i128 * (l as i128).pow((n / d) as u32))
        .sum();
    (total / n as i128) as usize
}

/// A binary bracket expression over the letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BracketTree {
    Letter(u8),
    Bracket(Box<BracketTree>, Box<BracketTree>),
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Letter(c) => write!(f, "{}", letter_name(*c)),
            BracketTree::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

impl BracketTree {
    pub fn bracket(a: BracketTree, b: BracketTree) -> BracketTree {
        BracketTree::Bracket(Box::new(a), Box::new(b))
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        match self {
            BracketTree::Letter(_) => 1,
            BracketTree::Bracket(a, b) => a.len() + b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn max_letter(&self) -> u8 {
        match self {
            BracketTree::Letter(c) => *c,
            BracketTree::Bracket(a, b) => a.max_letter().max(b.max_letter()),
        }
    }

    /// Expansion in the free associative algebra.
    fn expand(&self) -> Poly {
        match self {
            BracketTree::Letter(c) => Poly::from([(vec![*c], Rational::from_integer(1.into()))]),
            BracketTree::Bracket(a, b) => commutator(&a.expand(), &b.expand()),
        }
    }
}

type Poly = BTreeMap<Vec<u8>, Rational>;

fn add_into(target: &mut Poly, word: Vec<u8>, c: Rational) {
    let entry = target.entry(word);
    match entry {
        std::collections::btree_map::Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn commutator(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (u, a) in p {
        for (v, b) in q {
            let (mut uv, mut vu) = (u.clone(), v.clone());
            uv.extend_from_slice(v);
            vu.extend_from_slice(u);
            add_into(&mut out, uv, a * b);
            add_into(&mut out, vu, -(a * b));
        }
    }
    out
}

/// Free nilpotent Lie algebra of class `c` on `l` generators, in the Lyndon basis.
#[derive(Debug, Clone)]
pub struct FreeNilpotentAlgebra {
    pub generators: usize,
    pub class: usize,
    /// Basis words ordered by length, then lexicographically.
    pub words: Vec<LyndonWord>,
    pub weights: Vec<u32>,
    pub lie: LieAlgebra,
    index: HashMap<Vec<u8>, usize>,
    polys: Vec<Poly>,
}

impl FreeNilpotentAlgebra {
    /// Coordinates of a Lie polynomial in the basis; words longer than the
    /// class are dropped.
    fn rewrite(&self, mut poly: Poly) -> SparseVec {
        poly.retain(|w, _| w.len() <= self.class);
        let mut out = SparseVec::new();
        while let Some((word, c)) = poly.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            let i = *self
                .index
                .get(&word)
                .expect("smallest word of a Lie polynomial is Lyndon");
            out.add_at(i, &c);
            for (w, a) in &self.polys[i] {
                add_into(&mut poly, w.clone(), -(&c * a));
            }
        }
        out
    }

    /// Expands a bracket expression into the basis; zero beyond the class.
    pub fn bracket_to_basis(&self, tree: &BracketTree) -> Result<SparseVec> {
        if tree.max_letter() as usize >= self.generators {
            return Err(Error::Invalid("bracket uses a letter outside the alphabet".into()));
        }
        if tree.len() > self.class {
            return Ok(SparseVec::new());
        }
        Ok(self.rewrite(tree.expand()))
    }

    pub fn names(&self) -> Vec<String> {
        self.words.iter().map(|w| w.to_string()).collect()
    }

    /// Positions of the basis words of length `len`.
    pub fn component(&self, len: usize) -> std::ops::Range<usize> {
        let start = self.words.iter().position(|w| w.len() == len).unwrap_or(self.words.len());
        let end = self.words.iter().rposition(|w| w.len() == len).map_or(start, |e| e + 1);
        start..end
    }
}

/// Builds the class-`c` free nilpotent Lie algebra on `l ≥ 1` letters.
pub fn free_nilpotent_lie(l: usize, c: usize) -> Result<FreeNilpotentAlgebra> {
    free_nilpotent_lie_capped(l, c, MAX_GENERATORS)
}

/// As [`free_nilpotent_lie`] with an explicit cap on the total dimension.
pub fn free_nilpotent_lie_capped(l: usize, c: usize, cap: usize) -> Result<FreeNilpotentAlgebra> {
    if l == 0 || c == 0 || l > 26 {
        return Err(Error::Invalid("need 1 to 26 generators and class at least 1".into()));
    }
    let total: usize = (1..=c).map(|n| witt_number(l, n)).sum();
    if total > cap.min(MAX_GENERATORS) {
        return Err(Error::DimensionCap {
            cap: cap.min(MAX_GENERATORS),
            got: total,
        });
    }
    let words: Vec<LyndonWord> = lyndon_words(l, c).into_iter().flatten().collect();
    let index = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.0.clone(), i))
        .collect();
    let polys = words.iter().map(|w| w.bracketing().expand()).collect();
    let weights = words.iter().map(|w| (w.len() - 1) as u32).collect();
    let names: Vec<String> = words.iter().map(|w| w.to_string()).collect();
    let mut algebra = FreeNilpotentAlgebra {
        generators: l,
        class: c,
        words,
        weights,
        lie: LieAlgebra::abelian(names.clone())?,
        index,
        polys,
    };
    let n = algebra.words.len();
    let mut entries = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if algebra.words[a].len() + algebra.words[b].len() > c {
                continue;
            }
            let value = algebra.rewrite(commutator(&algebra.polys[a], &algebra.polys[b]));
            if !value.is_zero() {
                entries.push((a, b, value));
            }
        }
    }
    algebra.lie = LieAlgebra::new(names, entries)?;
    Ok(algebra)
}

/// The free nilpotent algebra of class `k + 1` extended by a subspace `S`
/// of the length-`(k + 2)` component.
///
/// `subspace` lists vectors in the coordinates of the length-`(k + 2)`
/// Lyndon words (lexicographic). Brackets landing in that component are
/// projected onto `S` along the span of the Lyndon words that are not pivots
/// of the reduced echelon basis of `S`; the basis vectors added for `S` are
/// those reduced rows, named after their pivot word.
pub fn theorem3_family(l: usize, k: usize, subspace: &[SparseVec]) -> Result<LieAlgebra> {
    let free = free_nilpotent_lie(l, k + 2)?;
    let top = free.component(k + 2);
    let width = top.len();
    let mut echelon = Echelon::new();
    for v in subspace {
        if v.max_index().is_some_and(|i| i >= width) {
            return Err(Error::Invalid(format!(
                "subspace vector has a coordinate beyond the {width} words of length {}",
                k + 2
            )));
        }
        if !echelon.push(v.clone()) {
            return Err(Error::Invalid("subspace vectors are linearly dependent".into()));
        }
    }
    let rows = echelon.rref();
    let pivots: Vec<usize> = rows.iter().map(|r| r.leading().expect("nonzero row").0).collect();
    let keep = top.start;
    let mut names: Vec<String> = free.names()[..keep].to_vec();
    names.extend(pivots.iter().map(|&p| free.words[top.start + p].to_string()));
    let mut entries = Vec::new();
    for ((a, b), value) in free.lie.brackets() {
        if a >= keep || b >= keep {
            continue;
        }
        let mut image = value.filtered(|i| i < keep);
        for (r, &p) in pivots.iter().enumerate() {
            let alpha = value.get(top.start + p);
            if !alpha.is_zero() {
                image.add_at(keep + r, &alpha);
            }
        }
        if !image.is_zero() {
            entries.push((a, b, image));
        }
    }
    LieAlgebra::new(names, entries)
}
