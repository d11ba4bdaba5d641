//! Writing algebras back in the input format.

use std::fmt::Write;

use crate::algebra::{Form, Monomial, SullivanModel};
use crate::error::Result;
use crate::lie::{lie_from_model, LieAlgebra};
use crate::linalg::SparseVec;

fn linear(names: &[String], v: &SparseVec) -> String {
    let mut f = Form::zero(names.len());
    for (i, c) in v.iter() {
        f.add_term(Monomial::generator(i), c);
    }
    f.display_with(names)
}

fn brackets(out: &mut String, lie: &LieAlgebra) {
    let names = lie.names();
    for ((l, k), v) in lie.brackets() {
        let _ = writeln!(out, "bracket [{},{}] = {}", names[l], names[k], linear(names, v));
    }
}

/// A Lie algebra file (no weights).
pub fn emit_lie(lie: &LieAlgebra) -> String {
    let mut out = format!("generators {}\n", lie.names().join(" "));
    brackets(&mut out, lie);
    out
}

/// A weighted file whose brackets encode the model's differential.
pub fn emit_model(model: &SullivanModel) -> Result<String> {
    let lie = lie_from_model(model)?;
    let decls: Vec<String> = model
        .generators()
        .iter()
        .map(|g| format!("{}:{}", g.name, g.weight))
        .collect();
    let mut out = format!("generators {}\n", decls.join(" "));
    brackets(&mut out, &lie);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse::{parse_algebra, Algebra};
    use crate::families::{section3_pair, theorem1_family};

    #[test]
    fn model_round_trip() {
        let m = theorem1_family(1).unwrap();
        let text = emit_model(&m).unwrap();
        assert_eq!(
            text,
            "generators x1:0 x2:0 n1:1 m:2\nbracket [x1,x2] = -n1\nbracket [x1,n1] = -m\n"
        );
        assert_eq!(parse_algebra(&text).unwrap(), Algebra::Model(m));
    }

    #[test]
    fn lie_round_trip() {
        let lie = lie_from_model(&section3_pair().1).unwrap();
        let text = emit_lie(&lie);
        assert!(text.contains("bracket [a2,b] = -d"));
        assert_eq!(parse_algebra(&text).unwrap(), Algebra::Lie(lie));
    }
}
