//! Lower central series, adapted bases and the associated Carnot algebra.
//!
//! Run with `cargo run --example carnot_grading`.

use nilrigid::lie::{adapted_basis, carnot, ce_model, is_carnot_homogeneous, lower_central_series};
use nilrigid::linalg::SparseVec;
use nilrigid::rational::rat;
use nilrigid::{LieAlgebra, Result};

fn main() -> Result<()> {
    // [x,y] = z + w, [x,z] = w: filtered but not graded in this basis.
    let names: Vec<String> = ["x", "y", "z", "w"].map(String::from).into();
    let mut zw = SparseVec::unit(2);
    zw.add_at(3, &rat(1));
    let lie = LieAlgebra::new(names, [(0, 1, zw), (0, 2, SparseVec::unit(3))])?;

    let lcs = lower_central_series(&lie);
    println!("lcs dims {:?}, quotients {:?}", lcs.dims(), lcs.quotient_dims());

    let graded = carnot(&lie)?;
    print!("{}", nilrigid::cli::emit::emit_lie(&graded));
    assert!(carnot(&graded)?.structure_eq(&graded));

    let model = ce_model(&graded, &adapted_basis(&graded)?)?;
    println!("weights {:?}, homogeneous {}", model.weights(), is_carnot_homogeneous(&model));
    Ok(())
}
