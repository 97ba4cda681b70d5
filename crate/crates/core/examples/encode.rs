//! Encodes one message with the regular polar code and with two interleaver
//! realizations, printing every encoder stage.
//!
//! `cargo run -p ipolar --example encode`

use ipolar::encode::ipolar_stage_outputs;
use ipolar::{BitWord, CodeSpec, InterleaverSet};

fn main() -> ipolar::Result<()> {
    let spec = CodeSpec::new(3, [1, 2, 3, 5, 6, 7])?;
    let msg: BitWord = "110101".parse()?;
    for (name, ils) in [
        ("polar", InterleaverSet::identity(3)),
        ("i-polar seed 1", InterleaverSet::sample(3, 1)),
        ("i-polar seed 2", InterleaverSet::sample(3, 2)),
    ] {
        println!("{name}");
        for (m, p) in ils.iter().map(|(m, j, p)| ((m, j), p)) {
            println!("  pi{m:?} = {p:?}");
        }
        for (stage, x) in ipolar_stage_outputs(&msg, &spec, &ils)?.iter().enumerate() {
            println!("  stage {stage}: {x}");
        }
    }
    Ok(())
}
