//! Low-weight multiplicities of long i-polar codes with a weight cap, alone
//! and with a systematic RRA outer code.
//!
//! `cargo run --release -p ipolar --example min_distance`

use std::time::Instant;

use ipolar::design::{db_to_linear, select_unfrozen, REFERENCE_DESIGN_ES_N0_DB};
use ipolar::wef::{ensemble_iowef, ensemble_wef, rra_wef, serial_concat_wef, EnsembleOptions};

fn main() -> ipolar::Result<()> {
    let design = db_to_linear(REFERENCE_DESIGN_ES_N0_DB);
    let cap = EnsembleOptions::capped(20);

    let t = Instant::now();
    let plain = ensemble_wef::<f64>(&select_unfrozen(10, 512, design)?, cap)?;
    println!("(1024,512) i-polar, weights <= 20  [{:.1?}]", t.elapsed());
    for (d, a) in plain.terms().filter(|&(d, _)| d > 0) {
        println!("  A_{d:<3} = {a:.2}");
    }

    let t = Instant::now();
    let inner = ensemble_iowef::<f64>(&select_unfrozen(10, 520, design)?, cap)?;
    let outer = rra_wef::<f64>(512, 3, 8)?;
    let concat = serial_concat_wef(&outer, &inner)?;
    println!("RRA(520,512) + (1024,520) i-polar, weights <= 20  [{:.1?}]", t.elapsed());
    for (d, a) in concat.terms().filter(|&(d, _)| d > 0) {
        println!("  A_{d:<3} = {a:.4}");
    }
    println!("A_16 ratio = {:.3e}", concat.coeff(16) / plain.coeff(16));
    Ok(())
}
