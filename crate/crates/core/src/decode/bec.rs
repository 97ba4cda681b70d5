use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::interleaver::InterleaverSet;

/// Largest block length for exhaustive erasure enumeration.
pub const MAX_BEC_N: usize = 20;

/// Genie-aided SC on the binary erasure channel, evaluated exactly over all
/// `2^N` erasure patterns. `counts[i][w]` is the number of weight-`w`
/// patterns under which bit channel `i` is erased when all earlier bits are
/// supplied by a genie.
///
/// The decoder works in three-valued logic: the upper branch is erased if
/// either input is, the lower branch only if both are.
pub fn bec_bit_channel_counts(ils: &InterleaverSet) -> Result<Vec<Vec<u64>>> {
    let m_exp = ils.m_exp();
    let n = 1usize << m_exp;
    if n > MAX_BEC_N {
        return Err(invalid!("exhaustive BEC evaluation needs N <= {MAX_BEC_N}"));
    }
    let mut counts = vec![vec![0u64; n + 1]; n];
    let mut erased = vec![false; n];
    let mut out = vec![false; n];
    for pattern in 0u64..1 << n {
        for (i, e) in erased.iter_mut().enumerate() {
            *e = pattern >> i & 1 == 1;
        }
        node(ils, m_exp, 0, &erased, &mut out);
        let w = pattern.count_ones() as usize;
        for (i, &e) in out.iter().enumerate() {
            if e {
                counts[i][w] += 1;
            }
        }
    }
    Ok(counts)
}

fn node(ils: &InterleaverSet, m: usize, j: usize, erased: &[bool], out: &mut [bool]) {
    if m == 0 {
        out[0] = erased[0];
        return;
    }
    let n = 1 << (m - 1);
    let mut child = vec![false; n];
    for i in 0..n {
        let v = erased[i] || erased[n + i];
        match ils.perm(m - 1, j) {
            Some(p) => child[p[i]] = v,
            None => child[i] = v,
        }
    }
    let (upper, lower) = out.split_at_mut(n);
    node(ils, m - 1, 2 * j, &child, upper);
    for i in 0..n {
        child[i] = erased[i] && erased[n + i];
    }
    node(ils, m - 1, 2 * j + 1, &child, lower);
}

/// Exact erasure probability of every bit channel at erasure rate `eps`.
pub fn bec_erasure_probabilities(counts: &[Vec<u64>], eps: &BigRational) -> Vec<BigRational> {
    counts
        .iter()
        .map(|row| {
            let n = row.len() - 1;
            let keep = BigRational::one() - eps;
            row.iter().enumerate().fold(BigRational::zero(), |acc, (w, &c)| {
                if c == 0 {
                    return acc;
                }
                acc + BigRational::from_integer(BigInt::from(c)) * pow(eps, w) * pow(&keep, n - w)
            })
        })
        .collect()
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}
