//! Counting cohomology algebra generators (indecomposables) in degree 3.
//!
//! Run with `cargo run --release --example algebra_generators`.

use nilrigid::cohomology::CohomologyRing;
use nilrigid::families::{theorem1_family, theorem2_family};
use nilrigid::lie::associated_graded_model;
use nilrigid::{Result, SullivanModel};

fn summary(label: &str, model: &SullivanModel) -> Result<()> {
    let ring = CohomologyRing::up_to(model, 3)?;
    let ind = ring.indecomposables(3)?;
    println!(
        "{label:<22} dim {:>2}  b3 {:>3}  decomposable {:>3}  generators {}",
        model.dim(),
        ring.betti_number(3),
        ind.decomposable_dim,
        ind.count
    );
    Ok(())
}

fn main() -> Result<()> {
    for k in 1..=2 {
        summary(&format!("graded k={k}"), &theorem1_family(k)?)?;
    }
    for k in 2..=3 {
        let model = theorem2_family(k)?;
        summary(&format!("non-graded k={k}"), &model)?;
        summary(&format!("  its graded k={k}"), &associated_graded_model(&model)?)?;
    }
    Ok(())
}
