//! Betti numbers, cocycle representatives and cup products.
//!
//! Run with `cargo run --example betti_numbers`.

use nilrigid::cohomology::{betti, betti_by_weight, ClassVector, CohomologyRing};
use nilrigid::families::section3_pair;
use nilrigid::Result;

fn main() -> Result<()> {
    let (model, _) = section3_pair();
    println!("generators {:?}", model.names());
    println!("betti {:?}", betti(&model)?);
    println!("H^2 by weight {:?}", betti_by_weight(&model, 2)?);

    let ring = CohomologyRing::new(&model)?;
    for p in 1..=2 {
        for rep in ring.representatives(p)? {
            println!("H^{p} class  {}", model.display_form(rep));
        }
    }

    // Products of degree-1 classes.
    let b1 = ring.betti_number(1);
    let u = ClassVector::unit(1, b1, 0);
    let v = ClassVector::unit(1, b1, 1);
    let uv = ring.cup(&u, &v)?;
    println!("[{}] . [{}] = {}", model.display_form(&ring.form_of(&u)?), model.display_form(&ring.form_of(&v)?), model.display_form(&ring.form_of(&uv)?));
    println!("H^2 decomposables have dimension {}", ring.decomposable_dim(2)?);
    Ok(())
}
