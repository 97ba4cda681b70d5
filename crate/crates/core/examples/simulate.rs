//! Monte Carlo BLER of the (32,16) i-polar code under SCL next to its
//! simple bound.
//!
//! `cargo run --release -p ipolar --example simulate`

use ipolar::bounds::{simple_bound, SnrAxis, SnrPoint};
use ipolar::repro::reference_32_16;
use ipolar::scheme::{DecoderConfig, Scheme};
use ipolar::sim::{run_bler, StopRule};
use ipolar::wef::{ensemble_wef, EnsembleOptions};
use ipolar::IPolarCode;

fn main() -> ipolar::Result<()> {
    let spec = reference_32_16();
    let wef = ensemble_wef::<f64>(&spec, EnsembleOptions::default())?;
    let scheme = Scheme::IPolar(IPolarCode::sampled(spec, 1));
    let stop = StopRule { min_errors: 200, max_trials: 2_000_000 };
    let rows = run_bler(&scheme, &DecoderConfig::default(), SnrAxis::EbN0, &[1.0, 2.0, 3.0, 4.0], stop, 3)?;
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "Eb/N0", "trials", "BLER", "ML-LB", "bound");
    for r in rows {
        let bound = simple_bound(&wef, SnrPoint::from_eb_n0_db(r.snr_db, 0.5)?, 32, 16)?;
        println!("{:>6.1} {:>10} {:>10.3e} {:>10.3e} {:>10.3e}", r.snr_db, r.trials, r.bler, r.ml_lb, bound);
    }
    Ok(())
}
