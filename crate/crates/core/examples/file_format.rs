//! The text file format and machine-readable reports.
//!
//! Run with `cargo run --example file_format`.

use nilrigid::cli::parse::parse_algebra;
use nilrigid::cli::report::Report;
use nilrigid::cohomology::betti;
use nilrigid::Result;

const HEISENBERG: &str = "\
# three-dimensional Heisenberg algebra
generators x:0 y:0 z:1
bracket [x,y] = -z
";

fn main() -> Result<()> {
    let model = parse_algebra(HEISENBERG)?.model()?;
    println!("d z = {}", model.display_form(model.differential_of(2)));
    print!("{}", nilrigid::cli::emit::emit_model(&model)?);

    let mut report = Report::new("betti");
    report.input("file", "heisenberg.txt").output("betti", betti(&model)?);
    println!("{}", report.to_json());

    // The same computation through the command-line entry point.
    let out = nilrigid::cli::run(["nilrigid", "decomposable", "x^y + x^z"]);
    println!("{}exit {}", out.stdout, out.code);
    Ok(())
}
