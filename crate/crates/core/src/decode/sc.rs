use super::tree::Tree;
use super::{f_minsum, g_update, hard, LlrVector};
use crate::bits::BitWord;
use crate::code::CodeSpec;
use crate::error::Result;
use crate::interleaver::InterleaverSet;

/// Successive-cancellation decoding. The upper-branch LLRs of every merge
/// are routed back through that merge's permutation; frozen bits are zero.
pub fn sc_decode(llr: &LlrVector, spec: &CodeSpec, ils: &InterleaverSet) -> Result<BitWord> {
    let tree = Tree::new(spec, ils, llr.len())?;
    let mut u = vec![0u8; spec.block_len()];
    let mut cw = vec![0u8; spec.block_len()];
    node(&tree, spec.m_exp(), 0, llr, &mut cw, &mut u);
    BitWord::from_bits(spec.extract_message(&u))
}

fn node(tree: &Tree, m: usize, j: usize, llr: &[f64], cw: &mut [u8], u: &mut [u8]) {
    if tree.info(m, j) == 0 {
        cw.fill(0);
        return;
    }
    if m == 0 {
        let bit = hard(llr[0]);
        cw[0] = bit;
        u[j] = bit;
        return;
    }
    let n = 1 << (m - 1);
    let perm = tree.perm(m, j);
    let mut child = vec![0f64; n];
    for i in 0..n {
        let v = f_minsum(llr[i], llr[n + i]);
        match perm {
            Some(p) => child[p[i]] = v,
            None => child[i] = v,
        }
    }
    let (upper, lower) = cw.split_at_mut(n);
    node(tree, m - 1, 2 * j, &child, upper, u);
    // upper now holds the permuted left codeword, as the encoder sees it
    if let Some(p) = perm {
        let left: Vec<u8> = upper.to_vec();
        for i in 0..n {
            upper[i] = left[p[i]];
        }
    }
    for i in 0..n {
        child[i] = g_update(llr[i], llr[n + i], upper[i]);
    }
    node(tree, m - 1, 2 * j + 1, &child, lower, u);
    for i in 0..n {
        upper[i] ^= lower[i];
    }
}
