//! Gaussian-approximation design: bit-channel mutual information of a
//! length-32 code and the unfrozen sets chosen at a few design SNRs.
//!
//! `cargo run -p ipolar --example design`

use ipolar::design::{channel_mutual_info, db_to_linear, ga_evolve, select_unfrozen, REFERENCE_DESIGN_ES_N0_DB};

fn main() -> ipolar::Result<()> {
    let rho = db_to_linear(REFERENCE_DESIGN_ES_N0_DB);
    let i0 = channel_mutual_info(rho);
    println!("Es/N0 = {REFERENCE_DESIGN_ES_N0_DB} dB, channel I = {i0:.6}");
    let profile = ga_evolve(i0, 5)?;
    for (i, v) in profile.values.iter().enumerate() {
        println!("  I_5({i:>2}) = {v:.6}");
    }
    for db in [-3.0, REFERENCE_DESIGN_ES_N0_DB, 0.0, 3.0] {
        let spec = select_unfrozen(5, 16, db_to_linear(db))?;
        println!("(32,16) at {db:>5} dB: {:?}", spec.unfrozen());
    }
    Ok(())
}
