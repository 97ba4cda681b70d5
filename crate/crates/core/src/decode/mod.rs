//! Decoders for polar and i-polar codes over LLR inputs.
//!
//! All list decoders use the min-sum check-node update and the hard-decision
//! path metric: a decision `b` on an LLR `l` costs `|l|` when `b` disagrees
//! with the sign of `l` and nothing otherwise. With these rules the metric of
//! a complete path equals the correlation discrepancy of its codeword, so a
//! list that never prunes is a maximum-likelihood decoder.

mod bec;
mod concat;
mod ml;
mod sc;
mod scl;
mod tree;

pub use bec::{bec_bit_channel_counts, bec_erasure_probabilities};
pub use concat::{concat_decode, BestFirstCombinations, ConcatDecision, DEFAULT_COMBINATION_CAP};
pub use ml::ml_decode_bruteforce;
pub use sc::sc_decode;
pub use scl::scl_decode;

use std::cmp::Ordering;
use std::ops::Deref;

use crate::bits::BitWord;
use crate::error::{invalid, Result};

/// Magnitude used in place of infinite LLRs.
pub const LLR_SATURATION: f64 = 1e30;

/// Per-bit log-likelihood ratios `log W(y|0) / W(y|1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LlrVector(Vec<f64>);

impl LlrVector {
    /// Rejects NaN; infinite entries are saturated.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let mut values = values;
        for v in values.iter_mut() {
            if v.is_nan() {
                return Err(invalid!("LLR vector contains NaN"));
            }
            *v = v.clamp(-LLR_SATURATION, LLR_SATURATION);
        }
        Ok(Self(values))
    }

    /// Noise-free LLRs of magnitude `amplitude` for `codeword`.
    pub fn noiseless(codeword: &[u8], amplitude: f64) -> Self {
        Self(codeword.iter().map(|&c| if c == 0 { amplitude } else { -amplitude }).collect())
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for LlrVector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// One decoded path.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub message: BitWord,
    pub codeword: BitWord,
    /// Accumulated penalty; smaller is more reliable.
    pub metric: f64,
}

/// Decoder output list in decreasing reliability (increasing metric, then
/// lexicographically increasing message).
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateList {
    pub entries: Vec<Candidate>,
    pub capacity: usize,
}

impl CandidateList {
    pub fn best(&self) -> &Candidate {
        &self.entries[0]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[inline]
pub(crate) fn hard(l: f64) -> u8 {
    (l < 0.0) as u8
}

#[inline]
pub(crate) fn penalty(l: f64, bit: u8) -> f64 {
    if bit != hard(l) {
        l.abs()
    } else {
        0.0
    }
}

/// Min-sum check-node update.
#[inline]
pub(crate) fn f_minsum(a: f64, b: f64) -> f64 {
    let m = a.abs().min(b.abs());
    if (a < 0.0) != (b < 0.0) {
        -m
    } else {
        m
    }
}

/// Bit-node update given the partial-sum bit `u`.
#[inline]
pub(crate) fn g_update(a: f64, b: f64, u: u8) -> f64 {
    if u == 0 {
        b + a
    } else {
        b - a
    }
}

/// `sum_i |l_i| [c_i != hard(l_i)]`: the penalty of codeword `c`.
/// Maximizing the correlation `sum_i (1 - 2 c_i) l_i / 2` is the same as
/// minimizing this.
pub fn discrepancy(codeword: &[u8], llr: &[f64]) -> f64 {
    codeword.iter().zip(llr).map(|(&c, &l)| penalty(l, c)).sum()
}

/// `sum_i (1 - 2 c_i) l_i / 2`.
pub fn correlation(codeword: &[u8], llr: &[f64]) -> f64 {
    codeword.iter().zip(llr).map(|(&c, &l)| if c == 0 { l } else { -l }).sum::<f64>() / 2.0
}

/// Whether the decoded codeword is strictly more likely than the
/// transmitted one. Equal words return `false`.
pub fn ml_lb_event(decoded: &[u8], transmitted: &[u8], llr: &[f64]) -> bool {
    if decoded == transmitted {
        return false;
    }
    discrepancy(decoded, llr) < discrepancy(transmitted, llr)
}

pub(crate) fn cmp_metric_then_message(a: &Candidate, b: &Candidate) -> Ordering {
    a.metric.total_cmp(&b.metric).then_with(|| a.message.cmp(&b.message))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturation_and_nan() {
        let l = LlrVector::new(vec![f64::INFINITY, -f64::INFINITY, 1.5]).unwrap();
        assert_eq!(&*l, &[LLR_SATURATION, -LLR_SATURATION, 1.5]);
        assert!(LlrVector::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn discrepancy_matches_correlation_gap() {
        let llr: [f64; 4] = [0.3, -1.2, 2.0, -0.1];
        let total: f64 = llr.iter().map(|l| l.abs()).sum();
        for c in [[0, 0, 0, 0], [1, 1, 0, 1], [0, 1, 1, 0]] {
            assert!((correlation(&c, &llr) - (total / 2.0 - discrepancy(&c, &llr))).abs() < 1e-12);
        }
    }

    #[test]
    fn ml_lb_guards() {
        let llr = [1.0, 1.0];
        assert!(!ml_lb_event(&[0, 0], &[0, 0], &llr));
        assert!(!ml_lb_event(&[1, 1], &[0, 0], &llr));
        assert!(ml_lb_event(&[0, 0], &[1, 1], &llr));
    }
}
