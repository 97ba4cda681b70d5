//! Polar and i-polar encoders.

use crate::bits::BitWord;
use crate::code::CodeSpec;
use crate::error::{invalid, Result};
use crate::interleaver::InterleaverSet;

/// A GF(2)-linear block encoder.
pub trait Encoder: Sync {
    /// Message length.
    fn dimension(&self) -> usize;
    /// Codeword length.
    fn length(&self) -> usize;
    fn encode(&self, msg: &[u8]) -> Result<BitWord>;
}

/// `x = u G2^{(x)M}` with message bits on the unfrozen positions.
pub fn polar_encode(msg: &BitWord, spec: &CodeSpec) -> Result<BitWord> {
    let mut x = spec.expand_message(msg)?;
    for m in 1..=spec.m_exp() {
        let half = 1 << (m - 1);
        for block in x.chunks_mut(2 * half) {
            let (upper, lower) = block.split_at_mut(half);
            for (a, b) in upper.iter_mut().zip(lower.iter()) {
                *a ^= *b;
            }
        }
    }
    BitWord::from_bits(x)
}

/// Encodes through the interleaved recursion: at every merge of stage `m`
/// the upper block is permuted by `(m-1, j)`, XORed onto the lower block and
/// concatenated with it.
pub fn ipolar_encode(msg: &BitWord, spec: &CodeSpec, ils: &InterleaverSet) -> Result<BitWord> {
    ils.ensure_compatible(spec.m_exp())?;
    let mut x = spec.expand_message(msg)?;
    let mut scratch = vec![0u8; spec.block_len() / 2];
    for m in 1..=spec.m_exp() {
        merge_stage(&mut x, m, ils, &mut scratch);
    }
    BitWord::from_bits(x)
}

/// Output of every encoder stage, `stages[0] = u` and `stages[M] = x`.
pub fn ipolar_stage_outputs(msg: &BitWord, spec: &CodeSpec, ils: &InterleaverSet) -> Result<Vec<BitWord>> {
    ils.ensure_compatible(spec.m_exp())?;
    let mut x = spec.expand_message(msg)?;
    let mut scratch = vec![0u8; spec.block_len() / 2];
    let mut out = vec![BitWord::from_bits(x.clone())?];
    for m in 1..=spec.m_exp() {
        merge_stage(&mut x, m, ils, &mut scratch);
        out.push(BitWord::from_bits(x.clone())?);
    }
    Ok(out)
}

fn merge_stage(x: &mut [u8], m: usize, ils: &InterleaverSet, scratch: &mut [u8]) {
    let half = 1 << (m - 1);
    for (j, block) in x.chunks_mut(2 * half).enumerate() {
        let (upper, lower) = block.split_at_mut(half);
        if let Some(p) = ils.perm(m - 1, j) {
            let tmp = &mut scratch[..half];
            for (t, &src) in tmp.iter_mut().zip(p) {
                *t = upper[src];
            }
            upper.copy_from_slice(tmp);
        }
        for (a, b) in upper.iter_mut().zip(lower.iter()) {
            *a ^= *b;
        }
    }
}

/// A polar code realization: the code spec together with its interleavers.
/// The identity set gives the regular polar code.
#[derive(Clone, Debug, PartialEq)]
pub struct IPolarCode {
    pub spec: CodeSpec,
    pub interleavers: InterleaverSet,
}

impl IPolarCode {
    pub fn new(spec: CodeSpec, interleavers: InterleaverSet) -> Result<Self> {
        interleavers.ensure_compatible(spec.m_exp())?;
        Ok(Self { spec, interleavers })
    }

    pub fn polar(spec: CodeSpec) -> Self {
        let interleavers = InterleaverSet::identity(spec.m_exp());
        Self { spec, interleavers }
    }

    pub fn sampled(spec: CodeSpec, seed: u64) -> Self {
        let interleavers = InterleaverSet::sample(spec.m_exp(), seed);
        Self { spec, interleavers }
    }
}

impl Encoder for IPolarCode {
    fn dimension(&self) -> usize {
        self.spec.dimension()
    }

    fn length(&self) -> usize {
        self.spec.block_len()
    }

    fn encode(&self, msg: &[u8]) -> Result<BitWord> {
        if msg.len() != self.dimension() {
            return Err(invalid!("message length {} != K = {}", msg.len(), self.dimension()));
        }
        ipolar_encode(&BitWord::from_bits(msg.to_vec())?, &self.spec, &self.interleavers)
    }
}

/// Generator rows of a linear encoder (images of the unit vectors), packed
/// into little-endian `u64` words.
pub fn generator_rows(enc: &dyn Encoder) -> Result<Vec<Vec<u64>>> {
    let k = enc.dimension();
    (0..k)
        .map(|i| {
            let cw = enc.encode(&BitWord::unit(k, i))?;
            Ok(pack(&cw))
        })
        .collect()
}

pub(crate) fn pack(bits: &[u8]) -> Vec<u64> {
    let mut words = vec![0u64; bits.len().div_ceil(64)];
    for (i, &b) in bits.iter().enumerate() {
        words[i / 64] |= (b as u64) << (i % 64);
    }
    words
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_kernel() {
        let spec = CodeSpec::full(1).unwrap();
        let x = polar_encode(&"10".parse().unwrap(), &spec).unwrap();
        assert_eq!(x.to_string(), "10");
        let x = polar_encode(&"01".parse().unwrap(), &spec).unwrap();
        assert_eq!(x.to_string(), "11");
    }

    #[test]
    fn zero_message_gives_zero_codeword() {
        let spec = CodeSpec::new(4, [3, 7, 11, 13, 14, 15]).unwrap();
        let ils = InterleaverSet::sample(4, 1);
        let zero = BitWord::zeros(6);
        assert_eq!(polar_encode(&zero, &spec).unwrap().weight(), 0);
        assert_eq!(ipolar_encode(&zero, &spec, &ils).unwrap().weight(), 0);
    }

    #[test]
    fn length_and_compatibility_errors() {
        let spec = CodeSpec::new(3, [6, 7]).unwrap();
        assert!(polar_encode(&BitWord::zeros(3), &spec).is_err());
        assert!(ipolar_encode(&BitWord::zeros(2), &spec, &InterleaverSet::identity(4)).is_err());
    }

    #[test]
    fn stage_outputs_end_in_codeword() {
        let spec = CodeSpec::full(3).unwrap();
        let ils = InterleaverSet::sample(3, 4);
        let msg: BitWord = "10110010".parse().unwrap();
        let stages = ipolar_stage_outputs(&msg, &spec, &ils).unwrap();
        assert_eq!(stages.len(), 4);
        assert_eq!(stages[3], ipolar_encode(&msg, &spec, &ils).unwrap());
    }
}
