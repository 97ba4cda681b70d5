//! Union and simple bounds for the (32,16) ensemble, with the branch the
//! simple bound takes for each weight.
//!
//! `cargo run -p ipolar --example bounds`

use ipolar::bounds::{bound_sweep, simple_bound_terms, SnrAxis, SnrPoint};
use ipolar::repro::reference_32_16;
use ipolar::wef::{ensemble_wef, EnsembleOptions};

fn main() -> ipolar::Result<()> {
    let wef = ensemble_wef::<f64>(&reference_32_16(), EnsembleOptions::default())?;
    let grid: Vec<f64> = (0..=14).map(|i| 0.5 * i as f64).collect();
    println!("{:>8} {:>12} {:>12}", "Eb/N0", "union", "simple");
    for r in bound_sweep(&wef, 32, 16, SnrAxis::EbN0, &grid)? {
        println!("{:>8.1} {:>12.4e} {:>12.4e}", r.snr_db, r.union, r.simple);
    }
    let point = SnrPoint::from_eb_n0_db(2.0, 0.5)?;
    println!("terms at Eb/N0 = 2 dB:");
    for t in simple_bound_terms(&wef, point, 32, 16)? {
        println!("  d={:>2} A_d={:>10.2} {:?} value={:.3e} union={:.3e}", t.d, t.a_d, t.branch, t.value, t.union);
    }
    Ok(())
}
