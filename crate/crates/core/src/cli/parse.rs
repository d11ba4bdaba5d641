//! The line-oriented input format.
//!
//! ```text
//! # comment
//! generators x1:0 x2:0 n1:1 m:2     # weights optional, all or none
//! bracket [x1,x2] = -n1 + 1/2 m
//! form x1^x2 + 3 x1^n1
//! ```
//!
//! Map files use `map NAME = LINEAR COMBINATION` (generator images),
//! `class FORM -> FORM` (cohomology generators and their images) or
//! `vector LINEAR COMBINATION` (subspace spanning vectors).

use std::collections::HashMap;

use crate::algebra::{Form, Monomial, SullivanModel};
use crate::error::{Error, Result};
use crate::lie::{adapted_basis, ce_model, ce_model_with_weights, lie_from_model, LieAlgebra};
use crate::linalg::SparseVec;
use crate::morphisms::GeneratorMap;
use crate::rational::{parse_rational, Rational};

/// 1-based line and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl Position {
    fn error(self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorDecl {
    pub name: String,
    pub weight: Option<u32>,
    pub position: Position,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketDecl {
    pub left: String,
    pub right: String,
    pub value: Expr,
    pub position: Position,
}

/// A parsed `form` line, kept unresolved until the generators are known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormDecl {
    pub expr: Expr,
    pub text: String,
    pub position: Position,
}

/// Syntax tree of an algebra file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AlgebraFile {
    pub generators: Vec<GeneratorDecl>,
    pub brackets: Vec<BracketDecl>,
    pub forms: Vec<FormDecl>,
}

/// What an algebra file describes: a Lie algebra when no weights are given,
/// a model with those weights otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algebra {
    Lie(LieAlgebra),
    Model(SullivanModel),
}

impl Algebra {
    pub fn lie(&self) -> Result<LieAlgebra> {
        match self {
            Algebra::Lie(l) => Ok(l.clone()),
            Algebra::Model(m) => lie_from_model(m),
        }
    }

    /// The model itself, or the model of the algebra in an adapted basis.
    pub fn model(&self) -> Result<SullivanModel> {
        match self {
            Algebra::Lie(l) => ce_model(l, &adapted_basis(l)?),
            Algebra::Model(m) => Ok(m.clone()),
        }
    }
}

// ---------------------------------------------------------------- lexing

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Sym(char),
    Arrow,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    column: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str, line: usize, offset: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = offset + i + 1;
        let here = Position { line, column };
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '/' {
                i += 1;
                if i >= chars.len() || !chars[i].is_ascii_digit() {
                    return Err(here.error("expected a denominator after '/'"));
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let literal: String = chars[start..i].iter().collect();
            let value = parse_rational(&literal)
                .ok_or_else(|| here.error(format!("invalid rational {literal:?}")))?;
            out.push(Token {
                tok: Tok::Num(value),
                column,
            });
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                column,
            });
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Token {
                tok: Tok::Arrow,
                column,
            });
            i += 2;
        } else if "+-^*[],=:".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                column,
            });
            i += 1;
        } else {
            return Err(here.error(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- expressions

/// A name occurrence inside an expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameRef {
    pub name: String,
    pub position: Position,
}

/// `Σ coefficient · name_1 ^ … ^ name_r`, names unresolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<(Rational, Vec<NameRef>)>,
    pub position: Position,
}

struct Cursor<'a> {
    tokens: &'a [Token],
    at: usize,
    line: usize,
    end_column: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|t| &t.tok)
    }

    fn position(&self) -> Position {
        Position {
            line: self.line,
            column: self.tokens.get(self.at).map_or(self.end_column, |t| t.column),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.at).map(|t| t.tok.clone());
        self.at += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.position().error(format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<NameRef> {
        let position = self.position();
        match self.bump() {
            Some(Tok::Ident(name)) => Ok(NameRef { name, position }),
            _ => Err(position.error("expected a generator name")),
        }
    }

    fn at_end(&self) -> bool {
        self.at >= self.tokens.len()
    }

    fn expr(&mut self) -> Result<Expr> {
        let position = self.position();
        let mut terms = Vec::new();
        let mut sign = Rational::from_integer(1.into());
        if self.eat('-') {
            sign = -sign;
        } else {
            self.eat('+');
        }
        loop {
            let mut coeff = sign.clone();
            let mut names = Vec::new();
            let mut had_number = false;
            if let Some(Tok::Num(v)) = self.peek().cloned() {
                self.at += 1;
                coeff *= v;
                had_number = true;
                self.eat('*');
            }
            if matches!(self.peek(), Some(Tok::Ident(_))) {
                names.push(self.ident()?);
                while self.eat('^') {
                    names.push(self.ident()?);
                }
            } else if !had_number {
                return Err(self.position().error("expected a term"));
            }
            terms.push((coeff, names));
            if self.eat('+') {
                sign = Rational::from_integer(1.into());
            } else if self.eat('-') {
                sign = Rational::from_integer((-1).into());
            } else {
                break;
            }
        }
        Ok(Expr { terms, position })
    }
}

fn cursor(tokens: &[Token], line: usize, text_len: usize) -> Cursor<'_> {
    Cursor {
        tokens,
        at: 0,
        line,
        end_column: text_len + 1,
    }
}

impl Expr {
    /// Resolves names against `names` into a form.
    pub fn to_form(&self, names: &[String]) -> Result<Form> {
        let index: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let mut out = Form::zero(names.len());
        for (c, word) in &self.terms {
            let idx = word
                .iter()
                .map(|r| {
                    index
                        .get(r.name.as_str())
                        .copied()
                        .ok_or_else(|| r.position.error(format!("unknown generator {:?}", r.name)))
                })
                .collect::<Result<Vec<_>>>()?;
            let Some((s, m)) = Monomial::from_unsorted(&idx) else {
                continue;
            };
            out.add_term(m, &if s < 0 { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    /// Resolves a linear combination into coordinates.
    pub fn to_vector(&self, names: &[String]) -> Result<SparseVec> {
        for (c, word) in &self.terms {
            if word.len() > 1 || (word.is_empty() && !num_traits::Zero::is_zero(c)) {
                return Err(self.position.error("expected a linear combination of names"));
            }
        }
        let form = self.to_form(names)?;
        Ok(form
            .terms()
            .map(|(m, c)| (m.indices().next().expect("linear"), c.clone()))
            .collect())
    }

    /// Names in order of first appearance.
    pub fn names(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for (_, word) in &self.terms {
            for r in word {
                if !out.contains(&r.name) {
                    out.push(r.name.clone());
                }
            }
        }
        out
    }
}

/// Parses a standalone expression such as `a1^c + a2^b`.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let tokens = lex(text, 1, 0)?;
    let mut c = cursor(&tokens, 1, text.chars().count());
    let e = c.expr()?;
    if !c.at_end() {
        return Err(c.position().error("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses a form over the given generator names.
pub fn parse_form(text: &str, names: &[String]) -> Result<Form> {
    parse_expr(text)?.to_form(names)
}

/// Parses a form whose generators are the names it mentions, in order of
/// first appearance.
pub fn parse_form_inline(text: &str) -> Result<(Vec<String>, Form)> {
    let e = parse_expr(text)?;
    let names = e.names();
    let f = e.to_form(&names)?;
    Ok((names, f))
}

// ---------------------------------------------------------------- files

/// Non-empty lines with comments removed: `(line number, keyword, rest, column of rest)`.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str, &str, usize)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            return None;
        }
        let lead = body.len() - trimmed.len();
        let kw_len = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let keyword = &trimmed[..kw_len];
        let rest = &trimmed[kw_len..];
        Some((i + 1, keyword, rest, lead + kw_len))
    })
}

fn unknown_keyword(line: usize, keyword: &str, allowed: &str) -> Error {
    Position { line, column: 1 }.error(format!("unknown keyword {keyword:?}; expected {allowed}"))
}

/// Parses the syntax of an algebra file without building anything.
pub fn parse_algebra_file(text: &str) -> Result<AlgebraFile> {
    let mut file = AlgebraFile::default();
    let mut seen_generators = false;
    for (line, keyword, rest, offset) in lines(text) {
        let tokens = lex(rest, line, offset)?;
        let mut c = cursor(&tokens, line, offset + rest.chars().count());
        match keyword {
            "generators" => {
                if seen_generators {
                    return Err(Position { line, column: 1 }.error("generators declared twice"));
                }
                seen_generators = true;
                while !c.at_end() {
                    let name = c.ident()?;
                    let weight = if c.eat(':') {
                        let p = c.position();
                        match c.bump() {
                            Some(Tok::Num(v)) if v.is_integer() => Some(
                                u32::try_from(v.to_integer())
                                    .map_err(|_| p.error("weight out of range"))?,
                            ),
                            _ => return Err(p.error("expected a nonnegative integer weight")),
                        }
                    } else {
                        None
                    };
                    file.generators.push(GeneratorDecl {
                        name: name.name,
                        weight,
                        position: name.position,
                    });
                }
            }
            "bracket" => {
                let position = c.position();
                c.expect('[')?;
                let left = c.ident()?;
                c.expect(',')?;
                let right = c.ident()?;
                c.expect(']')?;
                c.expect('=')?;
                let value = c.expr()?;
                if !c.at_end() {
                    return Err(c.position().error("unexpected trailing input"));
                }
                file.brackets.push(BracketDecl {
                    left: left.name,
                    right: right.name,
                    value,
                    position,
                });
            }
            "form" => {
                let position = c.position();
                let expr = c.expr()?;
                if !c.at_end() {
                    return Err(c.position().error("unexpected trailing input"));
                }
                file.forms.push(FormDecl {
                    expr,
                    text: rest.trim().to_string(),
                    position,
                });
            }
            other => return Err(unknown_keyword(line, other, "generators, bracket or form")),
        }
    }
    Ok(file)
}

impl AlgebraFile {
    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    /// Builds the Lie algebra or model the file describes.
    pub fn build(&self) -> Result<Algebra> {
        let names = self.names();
        let index: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        for (i, g) in self.generators.iter().enumerate() {
            if index[g.name.as_str()] != i {
                return Err(g.position.error(format!("generator {:?} declared twice", g.name)));
            }
        }
        let mut seen = HashMap::new();
        let mut entries = Vec::new();
        for b in &self.brackets {
            let lookup = |name: &str| {
                index
                    .get(name)
                    .copied()
                    .ok_or_else(|| b.position.error(format!("unknown generator {name:?}")))
            };
            let (l, k) = (lookup(&b.left)?, lookup(&b.right)?);
            let value = b.value.to_vector(&names)?;
            if l == k {
                if value.is_zero() {
                    continue;
                }
                return Err(b.position.error(format!("[{0},{0}] must vanish", b.left)));
            }
            if seen.insert((l.min(k), l.max(k)), ()).is_some() {
                return Err(b.position.error(format!(
                    "bracket of {} and {} declared twice",
                    b.left, b.right
                )));
            }
            entries.push((l, k, value));
        }
        let lie = LieAlgebra::new(names, entries)?;
        let weights: Vec<Option<u32>> = self.generators.iter().map(|g| g.weight).collect();
        if weights.iter().all(Option::is_none) {
            return Ok(Algebra::Lie(lie));
        }
        if let Some(g) = self.generators.iter().find(|g| g.weight.is_none()) {
            return Err(g.position.error("either every generator has a weight or none does"));
        }
        let weights: Vec<u32> = weights.into_iter().map(|w| w.expect("checked")).collect();
        Ok(Algebra::Model(ce_model_with_weights(&lie, &weights)?))
    }

    /// The `form` lines, resolved against the declared generators.
    pub fn forms(&self) -> Result<Vec<Form>> {
        let names = self.names();
        self.forms.iter().map(|f| f.expr.to_form(&names)).collect()
    }
}

/// Parses and builds an algebra file.
pub fn parse_algebra(text: &str) -> Result<Algebra> {
    parse_algebra_file(text)?.build()
}

/// Parses `map NAME = LINEAR COMBINATION` lines. Generators without a line
/// go to the target generator of the same name.
pub fn parse_generator_map(text: &str, source: &[String], target: &[String]) -> Result<GeneratorMap> {
    let mut images: Vec<Option<Form>> = vec![None; source.len()];
    for (line, keyword, rest, offset) in lines(text) {
        if keyword != "map" {
            return Err(unknown_keyword(line, keyword, "map"));
        }
        let tokens = lex(rest, line, offset)?;
        let mut c = cursor(&tokens, line, offset + rest.chars().count());
        let name = c.ident()?;
        c.expect('=')?;
        let expr = c.expr()?;
        if !c.at_end() {
            return Err(c.position().error("unexpected trailing input"));
        }
        let i = source
            .iter()
            .position(|s| *s == name.name)
            .ok_or_else(|| name.position.error(format!("unknown source generator {:?}", name.name)))?;
        if images[i].is_some() {
            return Err(name.position.error(format!("{:?} mapped twice", name.name)));
        }
        let v = expr.to_vector(target)?;
        let mut f = Form::zero(target.len());
        for (j, c) in v.iter() {
            f.add_term(Monomial::generator(j), c);
        }
        images[i] = Some(f);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, f)| match f {
            Some(f) => Ok(f),
            None => target
                .iter()
                .position(|t| *t == source[i])
                .map(|j| Form::generator(target.len(), j))
                .ok_or_else(|| {
                    Error::Invalid(format!("no image given for {:?} and no target of that name", source[i]))
                }),
        })
        .collect::<Result<Vec<_>>>()?;
    GeneratorMap::new(target.len(), images)
}

/// Parses `class FORM -> FORM` lines.
pub fn parse_ring_map(text: &str, source: &[String], target: &[String]) -> Result<Vec<(Form, Form)>> {
    let mut out = Vec::new();
    for (line, keyword, rest, offset) in lines(text) {
        if keyword != "class" {
            return Err(unknown_keyword(line, keyword, "class"));
        }
        let tokens = lex(rest, line, offset)?;
        let mut c = cursor(&tokens, line, offset + rest.chars().count());
        let from = c.expr()?;
        if c.bump() != Some(Tok::Arrow) {
            return Err(c.position().error("expected '->'"));
        }
        let to = c.expr()?;
        if !c.at_end() {
            return Err(c.position().error("unexpected trailing input"));
        }
        out.push((from.to_form(source)?, to.to_form(target)?));
    }
    Ok(out)
}

/// Parses `vector LINEAR COMBINATION` lines over the given basis names.
pub fn parse_subspace(text: &str, basis: &[String]) -> Result<Vec<SparseVec>> {
    let mut out = Vec::new();
    for (line, keyword, rest, offset) in lines(text) {
        if keyword != "vector" {
            return Err(unknown_keyword(line, keyword, "vector"));
        }
        let tokens = lex(rest, line, offset)?;
        let mut c = cursor(&tokens, line, offset + rest.chars().count());
        let expr = c.expr()?;
        if !c.at_end() {
            return Err(c.position().error("unexpected trailing input"));
        }
        out.push(expr.to_vector(basis)?);
    }
    Ok(out)
}
