use serde::Serialize;

use crate::algebra::Form;
use crate::cohomology::{ClassVector, CohomologyRing};
use crate::error::{Error, Result};
use crate::linalg::{kernel, rank, solve_in_span, SparseVec};
use crate::rational::Rational;

/// Outcome of [`verify_cohomology_ring_iso`]; the first failing check wins.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RingVerdict {
    Isomorphism,
    NotClosed {
        generator: usize,
        side: Side,
        differential: Form,
    },
    /// Products of the source generators span only `rank` of `betti` dimensions.
    NotGenerating {
        degree: usize,
        rank: usize,
        betti: usize,
    },
    /// `Σ coefficients[i] · words[i]` vanishes in the source but not its image.
    NotWellDefined {
        degree: usize,
        words: Vec<Vec<usize>>,
        #[serde(serialize_with = "crate::rational::serialize_vec")]
        coefficients: Vec<Rational>,
        image: ClassVector,
    },
    NotMultiplicative {
        left: (usize, usize),
        right: (usize, usize),
    },
    NotBijective {
        degree: usize,
        rank: usize,
        source_betti: usize,
        target_betti: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Source,
    Target,
}

impl RingVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, RingVerdict::Isomorphism)
    }
}

/// Generator indices (non-decreasing, odd degrees not repeated) whose
/// degrees add up to `p`.
fn words(degrees: &[usize], p: usize) -> Vec<Vec<usize>> {
    fn go(
        degrees: &[usize],
        start: usize,
        left: usize,
        word: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            out.push(word.clone());
            return;
        }
        for g in start..degrees.len() {
            let d = degrees[g];
            if d == 0 || d > left {
                continue;
            }
            word.push(g);
            let next = if d % 2 == 1 { g + 1 } else { g };
            go(degrees, next, left - d, word, out);
            word.pop();
        }
    }
    let mut out = Vec::new();
    go(degrees, 0, p, &mut Vec::new(), &mut out);
    out
}

fn product(forms: &[Form], word: &[usize], dim: usize) -> Result<Form> {
    word.iter()
        .try_fold(Form::one(dim), |acc, &g| acc.wedge(&forms[g]))
}

/// Linear map `H^p(src) → H^p(dst)` induced by the generator images, as
/// the images of the source basis classes.
struct DegreeMap {
    images: Vec<SparseVec>,
}

/// Checks that `[g_i] ↦ [h_i]` extends to a graded ring isomorphism
/// `H(src) → H(dst)`.
///
/// In order: every `g_i` and `h_i` is closed; the products of the `g_i`
/// span each `H^p(src)`; every linear relation among those products in the
/// source also holds among the image products; the induced linear map is
/// multiplicative on pairs of basis classes; and it is bijective in each degree.
pub fn verify_cohomology_ring_iso(
    src: &CohomologyRing,
    dst: &CohomologyRing,
    generators: &[(Form, Form)],
) -> Result<RingVerdict> {
    let (sm, tm) = (src.model(), dst.model());
    let mut degrees = Vec::new();
    for (i, (g, h)) in generators.iter().enumerate() {
        let p = (1..=sm.dim())
            .find(|&p| g.has_degree(p) && !g.is_zero())
            .ok_or_else(|| Error::Invalid(format!("generator {i} is not a nonzero homogeneous form")))?;
        if h.dim() != tm.dim() || (!h.is_zero() && !h.has_degree(p)) {
            return Err(Error::Invalid(format!(
                "image of generator {i} does not have degree {p}"
            )));
        }
        for (side, model, f) in [(Side::Source, sm, g), (Side::Target, tm, h)] {
            let df = model.apply_differential(f)?;
            if !df.is_zero() {
                return Ok(RingVerdict::NotClosed {
                    generator: i,
                    side,
                    differential: df,
                });
            }
        }
        degrees.push(p);
    }
    let top = src.max_degree().min(dst.max_degree());
    let sources: Vec<Form> = generators.iter().map(|(g, _)| g.clone()).collect();
    let targets: Vec<Form> = generators.iter().map(|(_, h)| h.clone()).collect();
    let mut maps: Vec<DegreeMap> = vec![DegreeMap {
        images: vec![SparseVec::unit(0)],
    }];
    for p in 1..=top {
        let ws = words(&degrees, p);
        let mut s_rows = Vec::with_capacity(ws.len());
        let mut t_rows = Vec::with_capacity(ws.len());
        for w in &ws {
            let s = src.class_coordinates(&product(&sources, w, sm.dim())?, p)?;
            let t = dst.class_coordinates(&product(&targets, w, tm.dim())?, p)?;
            s_rows.push(SparseVec::from_dense(&s.coords));
            t_rows.push(SparseVec::from_dense(&t.coords));
        }
        let (b_src, b_dst) = (src.betti_number(p), dst.betti_number(p));
        let r = rank(&s_rows);
        if r != b_src {
            return Ok(RingVerdict::NotGenerating {
                degree: p,
                rank: r,
                betti: b_src,
            });
        }
        for relation in kernel(&s_rows) {
            let mut image = SparseVec::new();
            for (i, c) in relation.iter() {
                image.axpy(c, &t_rows[i]);
            }
            if !image.is_zero() {
                let (words_used, coefficients) = relation
                    .iter()
                    .map(|(i, c)| (ws[i].clone(), c.clone()))
                    .unzip();
                return Ok(RingVerdict::NotWellDefined {
                    degree: p,
                    words: words_used,
                    coefficients,
                    image: ClassVector {
                        degree: p,
                        coords: image.to_dense(b_dst),
                    },
                });
            }
        }
        let images = (0..b_src)
            .map(|i| {
                let coeffs = solve_in_span(&s_rows, &SparseVec::unit(i))
                    .expect("source products span the degree");
                let mut image = SparseVec::new();
                for (j, c) in coeffs.iter() {
                    image.axpy(c, &t_rows[j]);
                }
                image
            })
            .collect::<Vec<_>>();
        let mapped_rank = rank(&images);
        if b_src != b_dst || mapped_rank != b_dst {
            return Ok(RingVerdict::NotBijective {
                degree: p,
                rank: mapped_rank,
                source_betti: b_src,
                target_betti: b_dst,
            });
        }
        maps.push(DegreeMap { images });
    }
    let apply = |class: &ClassVector| -> ClassVector {
        let mut out = SparseVec::new();
        for (i, c) in class.coords.iter().enumerate() {
            out.axpy(c, &maps[class.degree].images[i]);
        }
        ClassVector {
            degree: class.degree,
            coords: out.to_dense(dst.betti_number(class.degree)),
        }
    };
    for a in 1..=top {
        for b in a..=top - a {
            for i in 0..src.betti_number(a) {
                for j in 0..src.betti_number(b) {
                    let (u, v) = (
                        ClassVector::unit(a, src.betti_number(a), i),
                        ClassVector::unit(b, src.betti_number(b), j),
                    );
                    let lhs = apply(&src.cup(&u, &v)?);
                    let rhs = dst.cup(&apply(&u), &apply(&v))?;
                    if lhs != rhs {
                        return Ok(RingVerdict::NotMultiplicative {
                            left: (a, i),
                            right: (b, j),
                        });
                    }
                }
            }
        }
    }
    Ok(RingVerdict::Isomorphism)
}
