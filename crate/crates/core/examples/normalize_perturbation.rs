//! Removing a perturbation of the top differential by a change of generators.
//!
//! Run with `cargo run --example normalize_perturbation`.

use nilrigid::families::{perturb_top, theorem1_family};
use nilrigid::morphisms::{normalize_perturbation, verify_cdga_morphism};
use nilrigid::rational::ratio;
use nilrigid::{Form, Result};

fn main() -> Result<()> {
    let graded = theorem1_family(1)?;
    let n = graded.dim();
    let x = |i: usize| Form::generator(n, i);
    // d m gains 2 x1 x2 - 3/4 x1 x2: every weight-0 pair can be absorbed.
    let p = x(0).wedge(&x(1))?.scaled(&ratio(5, 4));
    let perturbed = perturb_top(&graded, &p)?;
    println!("d m = {}", perturbed.display_form(perturbed.differential_of(n - 1)));

    let out = normalize_perturbation(&perturbed)?;
    for (i, img) in out.map.images().iter().enumerate() {
        println!("{} -> {}", perturbed.names()[i], out.model.display_form(img));
    }
    println!("residual {:?}", out.residual.map(|r| r.to_string()));
    assert_eq!(out.model, graded);
    assert!(verify_cdga_morphism(&perturbed, &out.model, &out.map)?.is_ok());
    Ok(())
}
