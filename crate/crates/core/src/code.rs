use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// An `(N, K, A)` polar-type code: block length `N = 2^m_exp` and the
/// ordered unfrozen set `A`. Frozen positions always carry zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CodeSpecDoc", into = "CodeSpecDoc")]
pub struct CodeSpec {
    m_exp: usize,
    unfrozen: Vec<usize>,
    frozen_mask: Vec<bool>,
    design_es_over_n0_db: Option<f64>,
}

/// On-disk form of a [`CodeSpec`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeSpecDoc {
    pub m_exp: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub es_over_n0_db: Option<f64>,
    pub unfrozen: Vec<usize>,
}

impl CodeSpec {
    pub fn new(m_exp: usize, unfrozen: impl IntoIterator<Item = usize>) -> Result<Self> {
        if m_exp == 0 || m_exp > 24 {
            return Err(invalid!("m_exp must be in [1, 24], got {m_exp}"));
        }
        let n = 1usize << m_exp;
        let mut set = BTreeSet::new();
        for i in unfrozen {
            if i >= n {
                return Err(invalid!("unfrozen index {i} out of range for N = {n}"));
            }
            if !set.insert(i) {
                return Err(invalid!("duplicate unfrozen index {i}"));
            }
        }
        if set.is_empty() {
            return Err(invalid!("unfrozen set must not be empty"));
        }
        let mut frozen_mask = vec![true; n];
        for &i in &set {
            frozen_mask[i] = false;
        }
        Ok(Self { m_exp, unfrozen: set.into_iter().collect(), frozen_mask, design_es_over_n0_db: None })
    }

    /// Code whose unfrozen set is every index (rate one).
    pub fn full(m_exp: usize) -> Result<Self> {
        Self::new(m_exp, 0..(1usize << m_exp.min(24)))
    }

    /// Unfrozen set taken from a reliability sequence in priority order
    /// (most reliable first), truncated to `k` indices.
    pub fn from_sequence(m_exp: usize, sequence: &[usize], k: usize) -> Result<Self> {
        let n = 1usize << m_exp;
        let usable: Vec<usize> = sequence.iter().copied().filter(|&i| i < n).collect();
        if k == 0 || k > usable.len() {
            return Err(invalid!("k = {k} not in [1, {}] for this sequence", usable.len()));
        }
        Self::new(m_exp, usable[..k].iter().copied())
    }

    pub fn with_design_snr(mut self, es_over_n0_db: f64) -> Self {
        self.design_es_over_n0_db = Some(es_over_n0_db);
        self
    }

    pub fn m_exp(&self) -> usize {
        self.m_exp
    }

    pub fn block_len(&self) -> usize {
        1 << self.m_exp
    }

    pub fn dimension(&self) -> usize {
        self.unfrozen.len()
    }

    /// Unfrozen indices in increasing order.
    pub fn unfrozen(&self) -> &[usize] {
        &self.unfrozen
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen_mask[i]
    }

    pub fn frozen_mask(&self) -> &[bool] {
        &self.frozen_mask
    }

    pub fn design_es_over_n0_db(&self) -> Option<f64> {
        self.design_es_over_n0_db
    }

    pub fn rate(&self) -> f64 {
        self.dimension() as f64 / self.block_len() as f64
    }

    /// Places message bits on the unfrozen positions in increasing index order.
    pub fn expand_message(&self, msg: &[u8]) -> Result<Vec<u8>> {
        if msg.len() != self.dimension() {
            return Err(invalid!("message length {} != K = {}", msg.len(), self.dimension()));
        }
        let mut u = vec![0u8; self.block_len()];
        for (&i, &b) in self.unfrozen.iter().zip(msg) {
            u[i] = b;
        }
        Ok(u)
    }

    pub fn extract_message(&self, u: &[u8]) -> Vec<u8> {
        self.unfrozen.iter().map(|&i| u[i]).collect()
    }
}

impl TryFrom<CodeSpecDoc> for CodeSpec {
    type Error = Error;
    fn try_from(doc: CodeSpecDoc) -> Result<Self> {
        if doc.k != doc.unfrozen.len() {
            return Err(invalid!("k = {} but {} unfrozen indices listed", doc.k, doc.unfrozen.len()));
        }
        let mut spec = CodeSpec::new(doc.m_exp, doc.unfrozen)?;
        spec.design_es_over_n0_db = doc.es_over_n0_db;
        Ok(spec)
    }
}

impl From<CodeSpec> for CodeSpecDoc {
    fn from(spec: CodeSpec) -> Self {
        CodeSpecDoc {
            m_exp: spec.m_exp,
            k: spec.dimension(),
            es_over_n0_db: spec.design_es_over_n0_db,
            unfrozen: spec.unfrozen,
        }
    }
}
