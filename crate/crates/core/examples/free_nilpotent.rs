//! Lyndon words, free nilpotent Lie algebras and their truncated quotients.
//!
//! Run with `cargo run --example free_nilpotent`.

use nilrigid::free_nilpotent::{free_nilpotent_lie, lyndon_words, theorem3_family, witt_number};
use nilrigid::lie::lower_central_series;
use nilrigid::linalg::SparseVec;
use nilrigid::Result;

fn main() -> Result<()> {
    let words = lyndon_words(2, 5);
    for (len, ws) in (1..).zip(&words) {
        let shown: Vec<String> = ws.iter().map(|w| format!("{w} = {}", w.bracketing())).collect();
        println!("length {len}: {} words (Witt {}): {}", ws.len(), witt_number(2, len), shown.join(", "));
    }

    let free = free_nilpotent_lie(2, 4)?;
    println!("free class-4 on 2 letters: dim {}, lcs quotients {:?}", free.lie.dim(), lower_central_series(&free.lie).quotient_dims());

    // The class-2 free algebra on 3 letters extended by one direction of the
    // length-3 component, given in Lyndon-word coordinates (here `aab`).
    let keep = vec![SparseVec::unit(0)];
    let q = theorem3_family(3, 1, &keep)?;
    println!("quotient: dim {}, lcs quotients {:?}", q.dim(), lower_central_series(&q).quotient_dims());
    Ok(())
}
