//! Two five-dimensional models with the same Betti numbers: invariants,
//! a cohomology ring map, and 2-form decomposability.
//!
//! Run with `cargo run --example distinguish_models`.

use nilrigid::cli::parse::parse_form;
use nilrigid::cohomology::CohomologyRing;
use nilrigid::families::{section3_pair, section3_ring_map};
use nilrigid::morphisms::{fingerprint_model, is_decomposable_2form, verify_cdga_morphism, GeneratorMap};
use nilrigid::Result;

fn main() -> Result<()> {
    let (a, b) = section3_pair();
    let (fa, fb) = (fingerprint_model(&a)?, fingerprint_model(&b)?);
    println!("fingerprints equal: {}", fa == fb);

    // The identity on generators is not a CDGA map.
    let id = GeneratorMap::identity(a.dim());
    println!("identity: {:?}", verify_cdga_morphism(&a, &b, &id)?);

    // Check a proposed cohomology ring map, then the same map with one more class.
    let (ra, rb) = (CohomologyRing::new(&a)?, CohomologyRing::new(&b)?);
    let mut map = section3_ring_map();
    let verdict = nilrigid::morphisms::verify_cohomology_ring_iso(&ra, &rb, &map)?;
    println!("proposed map: {verdict:?}");
    let names = a.names();
    map.push((parse_form("a1^d", &names)?, parse_form("a1^d + a2^c", &names)?));
    let verdict = nilrigid::morphisms::verify_cohomology_ring_iso(&ra, &rb, &map)?;
    println!("completed map: {verdict:?}");

    // A 2-form is decomposable exactly when its square vanishes.
    for text in ["a1^c + a2^b", "a1^c + a1^b"] {
        let w = parse_form(text, &names)?;
        println!("{text}: decomposable {}", is_decomposable_2form(&w)?.is_decomposable());
    }
    Ok(())
}
