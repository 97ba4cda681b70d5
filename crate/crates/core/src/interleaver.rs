//! Interleaver realizations for the i-polar encoding graph.
//!
//! A permutation `p` acts on a block `x` as `y[i] = x[p[i]]`. Stage `m`
//! (for `1 <= m < M`) holds `2^(M-m-1)` permutations of size `2^m`; the
//! permutation `(m, j)` is applied to the upper half when the two
//! length-`2^m` blocks `2j` and `2j+1` are merged.

use std::collections::BTreeMap;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InterleaverDoc", into = "InterleaverDoc")]
pub struct InterleaverSet {
    m_exp: usize,
    seed: Option<u64>,
    /// `stages[m - 1][j]` is the permutation `(m, j)`.
    stages: Vec<Vec<Vec<usize>>>,
}

/// Interleaver file document: `{ "m_exp", "seed", "perms": { "m,j": [...] } }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InterleaverDoc {
    pub m_exp: usize,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub perms: BTreeMap<String, Vec<usize>>,
}

/// Number of permutations an `m_exp` realization holds.
pub fn interleaver_count(m_exp: usize) -> usize {
    (1..m_exp).map(|m| 1usize << (m_exp - m - 1)).sum()
}

impl InterleaverSet {
    /// Every permutation is the identity: the regular polar code.
    pub fn identity(m_exp: usize) -> Self {
        let stages = (1..m_exp)
            .map(|m| (0..1usize << (m_exp - m - 1)).map(|_| (0..1usize << m).collect()).collect())
            .collect();
        Self { m_exp, seed: None, stages }
    }

    /// Independent uniform permutations (Fisher-Yates) drawn from a
    /// ChaCha8 stream seeded with `seed`, in order of increasing `(m, j)`.
    pub fn sample(m_exp: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let stages = (1..m_exp)
            .map(|m| {
                (0..1usize << (m_exp - m - 1))
                    .map(|_| {
                        let mut p: Vec<usize> = (0..1usize << m).collect();
                        p.shuffle(&mut rng);
                        p
                    })
                    .collect()
            })
            .collect();
        Self { m_exp, seed: Some(seed), stages }
    }

    pub fn from_perms(m_exp: usize, perms: BTreeMap<(usize, usize), Vec<usize>>) -> Result<Self> {
        let mut set = Self::identity(m_exp);
        let expected = interleaver_count(m_exp);
        if perms.len() != expected {
            return Err(invalid!("expected {expected} permutations for m_exp = {m_exp}, got {}", perms.len()));
        }
        for ((m, j), p) in perms {
            if m == 0 || m >= m_exp || j >= 1usize << (m_exp - m - 1) {
                return Err(invalid!("permutation key ({m},{j}) out of range for m_exp = {m_exp}"));
            }
            check_permutation(&p, 1 << m)?;
            set.stages[m - 1][j] = p;
        }
        Ok(set)
    }

    pub fn m_exp(&self) -> usize {
        self.m_exp
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.stages.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Permutation `(m, j)`; `None` for the trivial stage-0 interleavers.
    pub fn perm(&self, m: usize, j: usize) -> Option<&[usize]> {
        if m == 0 {
            None
        } else {
            Some(&self.stages[m - 1][j])
        }
    }

    pub fn is_identity(&self) -> bool {
        self.iter().all(|(_, _, p)| p.iter().enumerate().all(|(i, &v)| i == v))
    }

    /// All permutations as `(m, j, perm)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &[usize])> {
        self.stages
            .iter()
            .enumerate()
            .flat_map(|(s, v)| v.iter().enumerate().map(move |(j, p)| (s + 1, j, p.as_slice())))
    }

    pub(crate) fn ensure_compatible(&self, m_exp: usize) -> Result<()> {
        if self.m_exp != m_exp {
            return Err(invalid!("interleaver set built for m_exp = {}, code has m_exp = {m_exp}", self.m_exp));
        }
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }
}

/// A uniform permutation of `0..n` from a seeded ChaCha8 stream.
pub fn seeded_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

/// `y[i] = x[p[i]]`.
pub fn permute<T: Copy>(x: &[T], p: &[usize]) -> Vec<T> {
    p.iter().map(|&i| x[i]).collect()
}

/// Undoes [`permute`]: `x[p[i]] = y[i]`.
pub fn unpermute<T: Copy + Default>(y: &[T], p: &[usize]) -> Vec<T> {
    let mut x = vec![T::default(); y.len()];
    for (&v, &i) in y.iter().zip(p) {
        x[i] = v;
    }
    x
}

pub fn check_permutation(p: &[usize], size: usize) -> Result<()> {
    if p.len() != size {
        return Err(invalid!("permutation has length {}, expected {size}", p.len()));
    }
    let mut seen = vec![false; size];
    for &v in p {
        if v >= size || std::mem::replace(&mut seen[v], true) {
            return Err(invalid!("not a permutation of 0..{size}"));
        }
    }
    Ok(())
}

impl TryFrom<InterleaverDoc> for InterleaverSet {
    type Error = Error;
    fn try_from(doc: InterleaverDoc) -> Result<Self> {
        if doc.m_exp == 0 {
            return Err(invalid!("m_exp must be at least 1"));
        }
        if doc.perms.is_empty() {
            return Ok(match doc.seed {
                Some(seed) => Self::sample(doc.m_exp, seed),
                None => Self::identity(doc.m_exp),
            });
        }
        let mut perms = BTreeMap::new();
        for (key, p) in doc.perms {
            let (m, j) = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| Error::Parse(format!("bad permutation key {key:?}, expected \"m,j\"")))?;
            perms.insert((m, j), p);
        }
        let mut set = Self::from_perms(doc.m_exp, perms)?;
        set.seed = doc.seed;
        Ok(set)
    }
}

impl From<InterleaverSet> for InterleaverDoc {
    fn from(set: InterleaverSet) -> Self {
        let perms = set.iter().map(|(m, j, p)| (format!("{m},{j}"), p.to_vec())).collect();
        InterleaverDoc { m_exp: set.m_exp, seed: set.seed, perms }
    }
}
