//! Two Hamming outer codewords spread over two (128,63) i-polar blocks,
//! against a CRC-aided (256,122) code carrying the same 114 bits.
//!
//! `cargo run --release -p ipolar --example concatenated -- 2.0 2.5`

use ipolar::bounds::SnrAxis;
use ipolar::repro::crossover_schemes;
use ipolar::scheme::DecoderConfig;
use ipolar::sim::{run_bler, StopRule};

fn main() -> ipolar::Result<()> {
    let mut grid: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if grid.is_empty() {
        grid = vec![1.5, 2.0, 2.5];
    }
    let (concat, base) = crossover_schemes()?;
    let stop = StopRule { min_errors: 100, max_trials: 1_000_000 };
    for scheme in [&concat, &base] {
        println!("{}  (rate {:.4})", scheme.describe(), scheme.rate());
        for r in run_bler(scheme, &DecoderConfig::default(), SnrAxis::EbN0, &grid, stop, 1)? {
            println!(
                "  {:.2} dB  BLER {:.3e}  ML-LB {:.3e}  ({} errors / {} trials)",
                r.snr_db, r.bler, r.ml_lb, r.block_errors, r.trials
            );
        }
    }
    Ok(())
}
