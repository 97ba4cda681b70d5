use super::penalty;
use crate::bits::BitWord;
use crate::encode::{generator_rows, Encoder};
use crate::error::{invalid, Result};

/// Largest dimension accepted by [`ml_decode_bruteforce`].
pub const MAX_BRUTEFORCE_K: usize = 20;

/// Exhaustive maximum-likelihood decoding: the message whose codeword has
/// the smallest correlation discrepancy. Messages are visited in
/// lexicographic order and the first minimum wins, so ties go to the
/// lexicographically smallest message.
pub fn ml_decode_bruteforce(llr: &[f64], encoder: &dyn Encoder) -> Result<(BitWord, BitWord)> {
    let k = encoder.dimension();
    let n = encoder.length();
    if k > MAX_BRUTEFORCE_K {
        return Err(invalid!("brute-force ML needs K <= {MAX_BRUTEFORCE_K}, got {k}"));
    }
    if llr.len() != n {
        return Err(invalid!("LLR length {} != N = {n}", llr.len()));
    }
    let rows: Vec<Vec<u8>> = generator_rows(encoder)?
        .into_iter()
        .map(|packed| (0..n).map(|i| (packed[i / 64] >> (i % 64) & 1) as u8).collect())
        .collect();
    let mut best: Option<(f64, u64)> = None;
    let mut cw = vec![0u8; n];
    for index in 0..1u64 << k {
        // message bit 0 is the most significant bit of `index`
        cw.fill(0);
        for (r, row) in rows.iter().enumerate() {
            if index >> (k - 1 - r) & 1 == 1 {
                cw.iter_mut().zip(row).for_each(|(c, &g)| *c ^= g);
            }
        }
        let d: f64 = cw.iter().zip(llr).map(|(&c, &l)| penalty(l, c)).sum();
        if best.is_none_or(|(bd, _)| d < bd) {
            best = Some((d, index));
        }
    }
    let (_, index) = best.expect("at least one message");
    let msg = BitWord::from_u64(index, k);
    let codeword = encoder.encode(&msg)?;
    Ok((msg, codeword))
}
