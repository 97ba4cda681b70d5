//! SC, SCL and brute-force ML on one noisy (16,8) i-polar block.
//!
//! `cargo run -p ipolar --example decode`

use ipolar::decode::{discrepancy, ml_decode_bruteforce, sc_decode, scl_decode};
use ipolar::design::{db_to_linear, select_unfrozen};
use ipolar::encode::Encoder;
use ipolar::sim::{awgn_llr, ChannelParams};
use ipolar::{BitWord, IPolarCode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> ipolar::Result<()> {
    let code = IPolarCode::sampled(select_unfrozen(4, 8, db_to_linear(0.0))?, 7);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let msg = BitWord::random(8, &mut rng);
    let cw = code.encode(&msg)?;
    let llr = awgn_llr(&cw, ChannelParams::from_es_n0_db(0.0)?, &mut rng);
    println!("sent     {msg}  codeword {cw}  discrepancy {:.3}", discrepancy(&cw, &llr));

    let sc = sc_decode(&llr, &code.spec, &code.interleavers)?;
    println!("SC       {sc}");
    for l in [2, 4, 16] {
        let list = scl_decode(&llr, &code.spec, &code.interleavers, l)?;
        let best = list.best();
        println!("SCL L={l:<3}{}  metric {:.3}  ({} paths kept)", best.message, best.metric, list.len());
    }
    let (ml, ml_cw) = ml_decode_bruteforce(&llr, &code)?;
    println!("ML       {ml}  discrepancy {:.3}", discrepancy(&ml_cw, &llr));
    Ok(())
}
