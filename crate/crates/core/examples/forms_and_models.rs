//! Exterior forms and the Chevalley–Eilenberg model of a small Lie algebra.
//!
//! Run with `cargo run --example forms_and_models`.

use nilrigid::lie::ce_model_with_weights;
use nilrigid::linalg::SparseVec;
use nilrigid::{Form, LieAlgebra, Result};

fn main() -> Result<()> {
    // The 4-dimensional filiform algebra: [x,y] = z, [x,z] = w.
    let names: Vec<String> = ["x", "y", "z", "w"].map(String::from).into();
    let lie = LieAlgebra::new(names, [(0, 1, SparseVec::unit(2)), (0, 2, SparseVec::unit(3))])?;
    assert!(lie.jacobi_defect().is_empty());

    let model = ce_model_with_weights(&lie, &[0, 0, 1, 2])?;
    for (i, g) in model.generators().iter().enumerate() {
        println!("d {} = {}", g.name, model.display_form(model.differential_of(i)));
    }
    assert!(model.check_d_squared().is_empty());

    // d is a derivation: d(z w) = dz w - z dw.
    let n = model.dim();
    let zw = Form::generator(n, 2).wedge(&Form::generator(n, 3))?;
    println!("d(z w) = {}", model.display_form(&model.apply_differential(&zw)?));
    Ok(())
}
