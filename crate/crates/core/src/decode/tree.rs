use crate::code::CodeSpec;
use crate::error::{invalid, Result};
use crate::interleaver::InterleaverSet;

/// Per-node bookkeeping shared by the SC-family decoders. Node `(m, j)`
/// covers the message indices `j 2^m .. (j + 1) 2^m`.
pub(crate) struct Tree<'a> {
    pub ils: &'a InterleaverSet,
    /// `info[m][j]`: unfrozen indices below node `(m, j)`.
    info: Vec<Vec<u32>>,
}

impl<'a> Tree<'a> {
    pub fn new(spec: &CodeSpec, ils: &'a InterleaverSet, llr_len: usize) -> Result<Self> {
        ils.ensure_compatible(spec.m_exp())?;
        if llr_len != spec.block_len() {
            return Err(invalid!("LLR length {llr_len} != N = {}", spec.block_len()));
        }
        let mut info = vec![spec.frozen_mask().iter().map(|&f| (!f) as u32).collect::<Vec<_>>()];
        for m in 1..=spec.m_exp() {
            let prev = &info[m - 1];
            let level = prev.chunks(2).map(|c| c[0] + c[1]).collect();
            info.push(level);
        }
        Ok(Self { ils, info })
    }

    pub fn info(&self, m: usize, j: usize) -> u32 {
        self.info[m][j]
    }

    /// Permutation applied to the upper half when node `(m, j)` merges its
    /// children; `None` means identity.
    pub fn perm(&self, m: usize, j: usize) -> Option<&'a [usize]> {
        self.ils.perm(m - 1, j)
    }
}
