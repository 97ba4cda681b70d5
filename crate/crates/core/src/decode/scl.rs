use super::tree::Tree;
use super::{cmp_metric_then_message, f_minsum, g_update, penalty, Candidate, CandidateList, LlrVector};
use crate::bits::BitWord;
use crate::code::CodeSpec;
use crate::error::{invalid, Result};
use crate::interleaver::InterleaverSet;

const ROOT: u32 = u32::MAX;

/// Successive-cancellation list decoding with `list_size` paths.
///
/// When more than `list_size` extensions exist at an unfrozen leaf, the
/// survivors are the smallest by `(metric, parent path, bit)`. The returned
/// list is sorted by `(metric, message)`; with `list_size = 1` it holds the
/// SC decision and with `list_size >= 2^K` it holds every codeword.
pub fn scl_decode(llr: &LlrVector, spec: &CodeSpec, ils: &InterleaverSet, list_size: usize) -> Result<CandidateList> {
    if list_size == 0 {
        return Err(invalid!("list size must be at least 1"));
    }
    let tree = Tree::new(spec, ils, llr.len())?;
    let mut state = State {
        tree: &tree,
        list_size,
        metrics: vec![0.0],
        heads: vec![ROOT],
        trail: Vec::with_capacity(spec.dimension() * list_size.min(1 << 16)),
    };
    let (_, codewords) = state.node(spec.m_exp(), 0, llr, 1);
    let n = spec.block_len();
    let k = spec.dimension();
    let mut entries: Vec<Candidate> = (0..state.metrics.len())
        .map(|p| {
            let mut message = vec![0u8; k];
            let mut at = state.heads[p];
            for slot in message.iter_mut().rev() {
                let (parent, bit) = state.trail[at as usize];
                *slot = bit;
                at = parent;
            }
            Candidate {
                message: BitWord::from_bits(message).expect("binary"),
                codeword: BitWord::from_bits(codewords[p * n..(p + 1) * n].to_vec()).expect("binary"),
                metric: state.metrics[p],
            }
        })
        .collect();
    entries.sort_by(cmp_metric_then_message);
    Ok(CandidateList { entries, capacity: list_size })
}

struct State<'a> {
    tree: &'a Tree<'a>,
    list_size: usize,
    metrics: Vec<f64>,
    /// Per path: index of its latest decided message bit in `trail`.
    heads: Vec<u32>,
    /// `(parent, bit)` links of all decided message bits.
    trail: Vec<(u32, u8)>,
}

impl State<'_> {
    /// Decodes node `(m, j)` for `paths` input paths whose LLRs are stored
    /// back to back in `llr`. Returns, for every surviving path, the input
    /// path it descends from, and the surviving codewords back to back.
    fn node(&mut self, m: usize, j: usize, llr: &[f64], paths: usize) -> (Vec<usize>, Vec<u8>) {
        let len = 1usize << m;
        if self.tree.info(m, j) == 0 {
            for p in 0..paths {
                self.metrics[p] += llr[p * len..(p + 1) * len].iter().map(|&l| penalty(l, 0)).sum::<f64>();
            }
            return ((0..paths).collect(), vec![0u8; paths * len]);
        }
        if m == 0 {
            return self.leaf(llr, paths);
        }
        let n = len / 2;
        let perm = self.tree.perm(m, j);

        let mut left = vec![0f64; paths * n];
        for p in 0..paths {
            let l = &llr[p * len..(p + 1) * len];
            let out = &mut left[p * n..(p + 1) * n];
            for i in 0..n {
                let v = f_minsum(l[i], l[n + i]);
                match perm {
                    Some(pm) => out[pm[i]] = v,
                    None => out[i] = v,
                }
            }
        }
        let (origin_l, cw_l) = self.node(m - 1, 2 * j, &left, paths);
        drop(left);

        let paths_l = origin_l.len();
        let mut upper = vec![0u8; paths_l * n];
        let mut right = vec![0f64; paths_l * n];
        for (q, &o) in origin_l.iter().enumerate() {
            let c = &cw_l[q * n..(q + 1) * n];
            let a = &mut upper[q * n..(q + 1) * n];
            match perm {
                Some(pm) => a.iter_mut().zip(pm).for_each(|(x, &s)| *x = c[s]),
                None => a.copy_from_slice(c),
            }
            let l = &llr[o * len..(o + 1) * len];
            let r = &mut right[q * n..(q + 1) * n];
            for i in 0..n {
                r[i] = g_update(l[i], l[n + i], a[i]);
            }
        }
        let (origin_r, cw_r) = self.node(m - 1, 2 * j + 1, &right, paths_l);

        let mut cw = vec![0u8; origin_r.len() * len];
        let mut origin = Vec::with_capacity(origin_r.len());
        for (r, &q) in origin_r.iter().enumerate() {
            let b = &cw_r[r * n..(r + 1) * n];
            let a = &upper[q * n..(q + 1) * n];
            let out = &mut cw[r * len..(r + 1) * len];
            for i in 0..n {
                out[i] = a[i] ^ b[i];
                out[n + i] = b[i];
            }
            origin.push(origin_l[q]);
        }
        (origin, cw)
    }

    fn leaf(&mut self, llr: &[f64], paths: usize) -> (Vec<usize>, Vec<u8>) {
        let mut ext: Vec<(f64, usize, u8)> = Vec::with_capacity(2 * paths);
        for (p, &l) in llr.iter().enumerate().take(paths) {
            for bit in 0..2u8 {
                ext.push((self.metrics[p] + penalty(l, bit), p, bit));
            }
        }
        if ext.len() > self.list_size {
            ext.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
            ext.truncate(self.list_size);
        }
        let mut metrics = Vec::with_capacity(ext.len());
        let mut heads = Vec::with_capacity(ext.len());
        let mut origin = Vec::with_capacity(ext.len());
        let mut bits = Vec::with_capacity(ext.len());
        for &(metric, p, bit) in &ext {
            self.trail.push((self.heads[p], bit));
            heads.push((self.trail.len() - 1) as u32);
            metrics.push(metric);
            origin.push(p);
            bits.push(bit);
        }
        self.metrics = metrics;
        self.heads = heads;
        (origin, bits)
    }
}
