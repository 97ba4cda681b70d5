//! Transmission schemes: what is encoded, sent and decoded in one trial.

use crate::bits::BitWord;
use crate::decode::{concat_decode, ml_lb_event, sc_decode, scl_decode, LlrVector, DEFAULT_COMBINATION_CAP};
use crate::encode::{Encoder, IPolarCode};
use crate::error::{invalid, Result};
use crate::interleaver::{check_permutation, permute, seeded_permutation};
use crate::outer::{Detector, OuterCode};

/// Serial concatenation: `P` outer codewords are joined, interleaved by
/// `outer_perm` and split into the messages of `Q` inner i-polar blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcatScheme {
    pub outer: OuterCode,
    pub p: usize,
    /// `inner_input = permute(outer_words, outer_perm)`; `None` is identity.
    pub outer_perm: Option<Vec<usize>>,
    pub inner: Vec<IPolarCode>,
}

impl ConcatScheme {
    pub fn new(outer: OuterCode, p: usize, outer_perm: Option<Vec<usize>>, inner: Vec<IPolarCode>) -> Result<Self> {
        if p == 0 || inner.is_empty() {
            return Err(invalid!("P and Q must be positive"));
        }
        let total_outer = p * outer.length();
        let total_inner: usize = inner.iter().map(|c| c.dimension()).sum();
        if total_outer != total_inner {
            return Err(invalid!("P * n_outer = {total_outer} but the inner blocks carry {total_inner} bits"));
        }
        if let Some(perm) = &outer_perm {
            check_permutation(perm, total_outer)?;
        }
        Ok(Self { outer, p, outer_perm, inner })
    }

    /// `Q` copies of `inner_spec` with interleavers drawn from consecutive
    /// seeds, and an outer interleaver drawn from `outer_seed`.
    pub fn seeded(
        outer: OuterCode,
        p: usize,
        outer_seed: Option<u64>,
        inner_spec: &crate::CodeSpec,
        q: usize,
        inner_seed: u64,
    ) -> Result<Self> {
        let inner = (0..q as u64).map(|i| IPolarCode::sampled(inner_spec.clone(), inner_seed.wrapping_add(i))).collect();
        let perm = outer_seed.map(|s| seeded_permutation(p * outer.length(), s));
        Self::new(outer, p, perm, inner)
    }

    pub fn q(&self) -> usize {
        self.inner.len()
    }

    pub fn outer_word_len(&self) -> usize {
        self.p * self.outer.length()
    }
}

impl Detector for ConcatScheme {
    /// Every outer codeword of the de-interleaved word must pass.
    fn check(&self, word: &[u8]) -> bool {
        word.len() == self.outer_word_len() && word.chunks(self.outer.length()).all(|w| self.outer.check(w))
    }
}

/// Something that can be simulated.
#[derive(Clone, Debug, PartialEq)]
pub enum Scheme {
    /// One BPSK symbol per bit, hard decisions.
    Uncoded,
    IPolar(IPolarCode),
    Concatenated(ConcatScheme),
}

/// Decoder settings.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DecoderConfig {
    #[serde(default = "default_list")]
    pub list_size: usize,
    #[serde(default = "default_cap")]
    pub combination_cap: usize,
}

fn default_list() -> usize {
    8
}

fn default_cap() -> usize {
    DEFAULT_COMBINATION_CAP
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self { list_size: default_list(), combination_cap: default_cap() }
    }
}

/// Outcome of decoding one received block.
#[derive(Clone, Debug, PartialEq)]
pub struct Decision {
    pub message: BitWord,
    pub codeword: BitWord,
    /// Whether `codeword` is a codeword of the overall code.
    pub valid: bool,
}

impl Scheme {
    /// Information bits per block.
    pub fn dimension(&self) -> usize {
        match self {
            Scheme::Uncoded => 1,
            Scheme::IPolar(c) => c.dimension(),
            Scheme::Concatenated(s) => s.p * s.outer.dimension(),
        }
    }

    /// Channel bits per block.
    pub fn length(&self) -> usize {
        match self {
            Scheme::Uncoded => 1,
            Scheme::IPolar(c) => c.length(),
            Scheme::Concatenated(s) => s.inner.iter().map(|c| c.length()).sum(),
        }
    }

    pub fn rate(&self) -> f64 {
        self.dimension() as f64 / self.length() as f64
    }

    pub fn encode(&self, msg: &[u8]) -> Result<BitWord> {
        if msg.len() != self.dimension() {
            return Err(invalid!("message length {} != K = {}", msg.len(), self.dimension()));
        }
        match self {
            Scheme::Uncoded => BitWord::from_bits(msg.to_vec()),
            Scheme::IPolar(c) => c.encode(msg),
            Scheme::Concatenated(s) => {
                let mut word = Vec::with_capacity(s.outer_word_len());
                for chunk in msg.chunks(s.outer.dimension()) {
                    word.extend_from_slice(&s.outer.encode(chunk)?);
                }
                let inner_input = match &s.outer_perm {
                    Some(p) => permute(&word, p),
                    None => word,
                };
                let mut out = Vec::with_capacity(self.length());
                let mut at = 0;
                for c in &s.inner {
                    let k = c.dimension();
                    out.extend_from_slice(&c.encode(&inner_input[at..at + k])?);
                    at += k;
                }
                BitWord::from_bits(out)
            }
        }
    }

    pub fn decode(&self, llr: &LlrVector, cfg: &DecoderConfig) -> Result<Decision> {
        if llr.len() != self.length() {
            return Err(invalid!("LLR length {} != N = {}", llr.len(), self.length()));
        }
        match self {
            Scheme::Uncoded => {
                let bit = BitWord::from_bits(vec![(llr[0] < 0.0) as u8])?;
                Ok(Decision { message: bit.clone(), codeword: bit, valid: true })
            }
            Scheme::IPolar(c) => {
                if cfg.list_size == 1 {
                    let message = sc_decode(llr, &c.spec, &c.interleavers)?;
                    let codeword = c.encode(&message)?;
                    return Ok(Decision { message, codeword, valid: true });
                }
                let list = scl_decode(llr, &c.spec, &c.interleavers, cfg.list_size)?;
                let best = list.entries.into_iter().next().expect("non-empty list");
                Ok(Decision { message: best.message, codeword: best.codeword, valid: true })
            }
            Scheme::Concatenated(s) => {
                let mut blocks = Vec::with_capacity(s.q());
                let mut at = 0;
                for c in &s.inner {
                    blocks.push(LlrVector::new(llr[at..at + c.length()].to_vec())?);
                    at += c.length();
                }
                let d = concat_decode(&blocks, &s.inner, cfg.list_size, s.outer_perm.as_deref(), s, cfg.combination_cap)?;
                let k = s.outer.dimension();
                let message = d.outer_word.chunks(s.outer.length()).flat_map(|w| w[..k].to_vec()).collect();
                Ok(Decision { message: BitWord::from_bits(message)?, codeword: d.inner_codeword, valid: d.detected })
            }
        }
    }

    /// Whether a decision counts toward the ML lower bound: it is wrong, it
    /// is a codeword of the overall code, and it is strictly more likely than
    /// what was sent.
    pub fn ml_lower_bound_event(&self, decision: &Decision, sent: &[u8], llr: &[f64]) -> bool {
        decision.valid && ml_lb_event(&decision.codeword, sent, llr)
    }

    pub fn describe(&self) -> String {
        match self {
            Scheme::Uncoded => "uncoded BPSK".into(),
            Scheme::IPolar(c) => format!(
                "{}({},{})",
                if c.interleavers.is_identity() { "polar" } else { "i-polar" },
                c.length(),
                c.dimension()
            ),
            Scheme::Concatenated(s) => format!(
                "{} x{} -> i-polar({},{}) x{}",
                s.outer.describe(),
                s.p,
                s.inner[0].length(),
                s.inner[0].dimension(),
                s.q()
            ),
        }
    }
}
