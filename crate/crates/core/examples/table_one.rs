//! Ensemble-average WEF of the (32,16) i-polar code next to the exact WEF
//! of the polar code with the same unfrozen set, plus a sampled average.
//!
//! `cargo run --release -p ipolar --example table_one`

use ipolar::repro::{realization_average, reference_32_16};
use ipolar::wef::{ensemble_wef, enumerate_wef_exhaustive, EnsembleOptions};
use ipolar::IPolarCode;
use num_rational::BigRational;

fn main() -> ipolar::Result<()> {
    let spec = reference_32_16();
    let ensemble = ensemble_wef::<BigRational>(&spec, EnsembleOptions::default())?;
    let polar = enumerate_wef_exhaustive::<BigRational>(&IPolarCode::polar(spec.clone()))?;
    let (sampled, types) = realization_average(&spec, 1000)?;
    println!("{:>3} {:>14} {:>22} {:>10} {:>12}", "d", "ensemble", "exact", "polar", "1000 draws");
    for d in 0..=32 {
        let (e, p) = (ensemble.coeff(d), polar.coeff(d));
        if e == BigRational::from_integer(0.into()) && p == e {
            continue;
        }
        println!("{d:>3} {:>14.2} {:>22} {:>10} {:>12.2}", ipolar::wef::Coeff::to_f64(&e), e.to_string(), p.to_string(), sampled[d]);
    }
    println!("{} distinct realization WEFs among 1000 draws", types.len());
    for (counts, n) in &types {
        let low: Vec<String> = (1..=12).filter(|&d| counts[d] > 0).map(|d| format!("A_{d}={}", counts[d])).collect();
        println!("  {n:>4}x  {}", low.join(" "));
    }
    Ok(())
}
