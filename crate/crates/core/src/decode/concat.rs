use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use super::{scl_decode, CandidateList, LlrVector};
use crate::bits::BitWord;
use crate::encode::IPolarCode;
use crate::error::{invalid, Result};
use crate::interleaver::unpermute;
use crate::outer::Detector;

/// Default bound on visited combinations.
pub const DEFAULT_COMBINATION_CAP: usize = 4096;

/// Lazily enumerates index tuples `(i_1, ..., i_Q)` in increasing order of
/// `sum_q metrics[q][i_q]`, ties broken by the tuple itself. Each list must
/// be sorted ascending.
pub struct BestFirstCombinations<'a> {
    metrics: &'a [Vec<f64>],
    heap: BinaryHeap<Entry>,
    seen: HashSet<Vec<usize>>,
}

struct Entry {
    sum: f64,
    index: Vec<usize>,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Entry {}
impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Entry {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other.sum.total_cmp(&self.sum).then_with(|| other.index.cmp(&self.index))
    }
}

impl<'a> BestFirstCombinations<'a> {
    pub fn new(metrics: &'a [Vec<f64>]) -> Self {
        let mut heap = BinaryHeap::new();
        let mut seen = HashSet::new();
        if !metrics.is_empty() && metrics.iter().all(|m| !m.is_empty()) {
            let index = vec![0; metrics.len()];
            seen.insert(index.clone());
            heap.push(Entry { sum: Self::sum(metrics, &index), index });
        }
        Self { metrics, heap, seen }
    }

    fn sum(metrics: &[Vec<f64>], index: &[usize]) -> f64 {
        metrics.iter().zip(index).map(|(m, &i)| m[i]).sum()
    }
}

impl Iterator for BestFirstCombinations<'_> {
    type Item = (Vec<usize>, f64);

    fn next(&mut self) -> Option<Self::Item> {
        let Entry { sum, index } = self.heap.pop()?;
        for q in 0..index.len() {
            if index[q] + 1 < self.metrics[q].len() {
                let mut succ = index.clone();
                succ[q] += 1;
                if self.seen.insert(succ.clone()) {
                    self.heap.push(Entry { sum: Self::sum(self.metrics, &succ), index: succ });
                }
            }
        }
        Some((index, sum))
    }
}

/// Result of decoding a concatenated block.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcatDecision {
    /// De-interleaved concatenation of the outer codewords.
    pub outer_word: BitWord,
    /// Inner codewords back to back, as transmitted.
    pub inner_codeword: BitWord,
    pub metric: f64,
    /// Whether the outer detector accepted the selection.
    pub detected: bool,
    /// Combinations examined.
    pub visited: usize,
}

/// Decodes `Q` inner blocks independently with SCL and searches the
/// combinations of their candidates in order of combined metric (sum of the
/// per-block metrics). The first combination whose de-interleaved word
/// passes `detector` is returned; if none does within `cap` combinations,
/// the most reliable one is.
///
/// `outer_perm` is the interleaver between outer and inner codes,
/// `inner_input = permute(outer_word, outer_perm)`.
pub fn concat_decode(
    llr_blocks: &[LlrVector],
    inner: &[IPolarCode],
    list_size: usize,
    outer_perm: Option<&[usize]>,
    detector: &dyn Detector,
    cap: usize,
) -> Result<ConcatDecision> {
    if llr_blocks.is_empty() || llr_blocks.len() != inner.len() {
        return Err(invalid!("{} LLR blocks for {} inner codes", llr_blocks.len(), inner.len()));
    }
    let lists: Vec<CandidateList> = llr_blocks
        .iter()
        .zip(inner)
        .map(|(l, c)| scl_decode(l, &c.spec, &c.interleavers, list_size))
        .collect::<Result<_>>()?;
    let total_k: usize = inner.iter().map(|c| c.spec.dimension()).sum();
    if let Some(p) = outer_perm {
        if p.len() != total_k {
            return Err(invalid!("outer interleaver length {} != total inner K = {total_k}", p.len()));
        }
    }
    let metrics: Vec<Vec<f64>> = lists.iter().map(|l| l.entries.iter().map(|c| c.metric).collect()).collect();
    let assemble = |index: &[usize]| {
        let mut input = Vec::with_capacity(total_k);
        for (list, &i) in lists.iter().zip(index) {
            input.extend_from_slice(&list.entries[i].message);
        }
        match outer_perm {
            Some(p) => unpermute(&input, p),
            None => input,
        }
    };
    let mut first: Option<(Vec<usize>, f64, Vec<u8>)> = None;
    let mut visited = 0;
    let mut chosen = None;
    for (index, sum) in BestFirstCombinations::new(&metrics).take(cap.max(1)) {
        visited += 1;
        let word = assemble(&index);
        if detector.check(&word) {
            chosen = Some((index, sum, word, true));
            break;
        }
        if first.is_none() {
            first = Some((index, sum, word));
        }
    }
    let (index, metric, word, detected) = match chosen {
        Some(c) => c,
        None => {
            let (index, sum, word) = first.expect("at least one combination");
            (index, sum, word, false)
        }
    };
    let mut cw = Vec::with_capacity(llr_blocks.iter().map(|l| l.len()).sum());
    for (list, &i) in lists.iter().zip(&index) {
        cw.extend_from_slice(&list.entries[i].codeword);
    }
    Ok(ConcatDecision {
        outer_word: BitWord::from_bits(word)?,
        inner_codeword: BitWord::from_bits(cw)?,
        metric,
        detected,
        visited,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn visits_in_sum_order() {
        let metrics = vec![vec![0.0, 1.0], vec![0.0, 2.5]];
        let order: Vec<_> = BestFirstCombinations::new(&metrics).map(|(i, _)| i).collect();
        assert_eq!(order, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn ties_by_index() {
        let metrics = vec![vec![0.0, 1.0], vec![0.0, 1.0]];
        let order: Vec<_> = BestFirstCombinations::new(&metrics).map(|(i, _)| i).collect();
        assert_eq!(order, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
