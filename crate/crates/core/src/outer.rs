//! Outer component codes: CRC, Hamming-type BCH and systematic regular
//! repeat-accumulate (RRA) codes, each with an encoder and an error
//! detector.
//!
//! Bit order: bit 0 of a word is the coefficient of the highest power of
//! `D`. A systematic codeword is `msg || parity`, so the whole word read as
//! a polynomial is a multiple of the generator. For `g = D^3 + D + 1` and
//! `msg = 1000` the parity is `101` (`D^6 mod g = D^2 + 1`).

use serde::{Deserialize, Serialize};

use crate::bits::BitWord;
use crate::encode::Encoder;
use crate::error::{invalid, Error, Result};
use crate::interleaver::{check_permutation, permute, seeded_permutation};
use crate::wef::{hamming_wef, rra_wef, Coeff, WeightPoly};

/// Accepts or rejects a decoded outer codeword.
pub trait Detector: Sync {
    fn check(&self, word: &[u8]) -> bool;
}

/// Detector that accepts every word.
pub struct AcceptAll;

impl Detector for AcceptAll {
    fn check(&self, _: &[u8]) -> bool {
        true
    }
}

/// Detector that rejects every word.
pub struct RejectAll;

impl Detector for RejectAll {
    fn check(&self, _: &[u8]) -> bool {
        false
    }
}

/// A binary polynomial of degree `1..=63`, stored as a bit mask
/// (bit `i` is the coefficient of `D^i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorPoly {
    mask: u64,
    degree: usize,
}

impl GeneratorPoly {
    pub fn from_degrees(degrees: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &d in degrees {
            if d > 63 {
                return Err(invalid!("generator degree {d} exceeds 63"));
            }
            if mask >> d & 1 == 1 {
                return Err(invalid!("duplicate generator degree {d}"));
            }
            mask |= 1 << d;
        }
        Self::from_mask(mask)
    }

    /// Coefficients listed from the highest degree down to `D^0`.
    pub fn from_coefficients(coeffs: &[u8]) -> Result<Self> {
        if coeffs.len() > 64 {
            return Err(invalid!("generator longer than 64 coefficients"));
        }
        let mut mask = 0u64;
        for &c in coeffs {
            if c > 1 {
                return Err(invalid!("generator coefficient {c} is not a bit"));
            }
            mask = mask << 1 | c as u64;
        }
        Self::from_mask(mask)
    }

    pub fn from_mask(mask: u64) -> Result<Self> {
        if mask < 2 {
            return Err(invalid!("generator must have degree at least 1"));
        }
        Ok(Self { mask, degree: 63 - mask.leading_zeros() as usize })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Exponents with nonzero coefficient, highest first.
    pub fn degrees(&self) -> Vec<usize> {
        (0..=self.degree).rev().filter(|&d| self.mask >> d & 1 == 1).collect()
    }

    /// Coefficients from the highest degree down.
    pub fn coefficients(&self) -> Vec<u8> {
        (0..=self.degree).rev().map(|d| (self.mask >> d & 1) as u8).collect()
    }

    /// `word(D) * D^deg mod g(D)`, returned highest degree first.
    pub fn parity(&self, word: &[u8]) -> Vec<u8> {
        let m = self.degree;
        let low = self.mask & !(1u64 << m);
        let mut reg = 0u64;
        for &b in word {
            let top = (reg >> (m - 1) & 1) as u8 ^ b;
            reg = (reg << 1) & low_mask(m);
            if top == 1 {
                reg ^= low;
            }
        }
        (0..m).rev().map(|i| (reg >> i & 1) as u8).collect()
    }

    /// Whether `word(D)` is a multiple of `g(D)`.
    pub fn divides(&self, word: &[u8]) -> bool {
        let m = self.degree;
        let mut reg = 0u64;
        for &b in word {
            reg = reg << 1 | b as u64;
            if reg >> m & 1 == 1 {
                reg ^= self.mask;
            }
        }
        reg == 0
    }

    /// Whether `D` has multiplicative order `2^deg - 1` modulo `g`.
    pub fn is_primitive(&self) -> bool {
        let m = self.degree;
        if self.mask & 1 == 0 || m > 32 {
            return false;
        }
        let period = (1u64 << m) - 1;
        let mut state = 1u64;
        for step in 1..=period {
            state <<= 1;
            if state >> m & 1 == 1 {
                state ^= self.mask;
            }
            if state == 1 {
                return step == period;
            }
        }
        false
    }
}

fn low_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// A cyclic-redundancy-check code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrcSpec {
    pub name: Option<String>,
    pub generator: GeneratorPoly,
}

impl CrcSpec {
    pub fn new(generator: GeneratorPoly) -> Self {
        Self { name: None, generator }
    }

    /// `D^8 + D^7 + D^6 + D^5 + D^4 + D^3 + 1`.
    pub fn g8a() -> Self {
        let generator = GeneratorPoly::from_degrees(&[8, 7, 6, 5, 4, 3, 0]).expect("valid preset");
        Self { name: Some("g8A".into()), generator }
    }

    /// `D^8 + D^7 + D^6 + D^4 + D^2 + 1`.
    pub fn g8b() -> Self {
        let generator = GeneratorPoly::from_degrees(&[8, 7, 6, 4, 2, 0]).expect("valid preset");
        Self { name: Some("g8B".into()), generator }
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "g8a" => Ok(Self::g8a()),
            "g8b" => Ok(Self::g8b()),
            _ => Err(invalid!("unknown CRC preset {name:?} (known: g8A, g8B)")),
        }
    }

    pub fn parity_len(&self) -> usize {
        self.generator.degree()
    }
}

pub fn crc_encode(msg: &[u8], spec: &CrcSpec) -> BitWord {
    let mut out = msg.to_vec();
    out.extend(spec.generator.parity(msg));
    BitWord::from_bits(out).expect("input bits are binary")
}

pub fn crc_check(word: &[u8], spec: &CrcSpec) -> Result<bool> {
    if word.len() <= spec.parity_len() {
        return Err(invalid!("word of length {} too short for a degree-{} CRC", word.len(), spec.parity_len()));
    }
    Ok(spec.generator.divides(word))
}

/// Primitive polynomial used as the generator of the `(2^m - 1, 2^m - m - 1)`
/// Hamming-type BCH code.
pub fn primitive_poly(m_param: usize) -> Result<GeneratorPoly> {
    let degrees: &[usize] = match m_param {
        3 => &[3, 1, 0],
        4 => &[4, 1, 0],
        5 => &[5, 2, 0],
        6 => &[6, 1, 0],
        7 => &[7, 3, 0],
        8 => &[8, 4, 3, 2, 0],
        9 => &[9, 4, 0],
        10 => &[10, 3, 0],
        11 => &[11, 2, 0],
        12 => &[12, 6, 4, 1, 0],
        13 => &[13, 4, 3, 1, 0],
        14 => &[14, 10, 6, 1, 0],
        15 => &[15, 1, 0],
        16 => &[16, 12, 3, 1, 0],
        _ => return Err(invalid!("BCH parameter m must be in [3, 16], got {m_param}")),
    };
    GeneratorPoly::from_degrees(degrees)
}

/// Length `2^m - 1` and dimension `2^m - m - 1`.
pub fn bch_params(m_param: usize) -> Result<(usize, usize)> {
    primitive_poly(m_param)?;
    let n = (1usize << m_param) - 1;
    Ok((n, n - m_param))
}

pub fn bch_encode(msg: &[u8], m_param: usize) -> Result<BitWord> {
    let g = primitive_poly(m_param)?;
    let (_, k) = bch_params(m_param)?;
    if msg.len() != k {
        return Err(invalid!("BCH message length {} != {k}", msg.len()));
    }
    let mut out = msg.to_vec();
    out.extend(g.parity(msg));
    BitWord::from_bits(out)
}

pub fn bch_check(word: &[u8], m_param: usize) -> Result<bool> {
    let g = primitive_poly(m_param)?;
    let (n, _) = bch_params(m_param)?;
    if word.len() != n {
        return Err(invalid!("BCH word length {} != {n}", word.len()));
    }
    Ok(g.divides(word))
}

/// Systematic regular repeat-accumulate code: every message bit repeated
/// `dv` times, permuted, accumulated, and one bit kept out of every `dc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RraSpec {
    pub k: usize,
    pub dv: usize,
    pub m_parity: usize,
    pub dc: usize,
    pub inner_perm: Vec<usize>,
    pub perm_seed: Option<u64>,
}

impl RraSpec {
    pub fn new(k: usize, dv: usize, m_parity: usize, inner_perm: Vec<usize>) -> Result<Self> {
        if k == 0 || dv == 0 || m_parity == 0 {
            return Err(invalid!("RRA parameters must be positive"));
        }
        if !(k * dv).is_multiple_of(m_parity) {
            return Err(invalid!("k * dv = {} is not divisible by m = {m_parity}", k * dv));
        }
        check_permutation(&inner_perm, k * dv)?;
        Ok(Self { k, dv, m_parity, dc: k * dv / m_parity, inner_perm, perm_seed: None })
    }

    pub fn seeded(k: usize, dv: usize, m_parity: usize, seed: u64) -> Result<Self> {
        let mut spec = Self::new(k, dv, m_parity, seeded_permutation(k * dv, seed))?;
        spec.perm_seed = Some(seed);
        Ok(spec)
    }

    pub fn identity(k: usize, dv: usize, m_parity: usize) -> Result<Self> {
        Self::new(k, dv, m_parity, (0..k * dv).collect())
    }

    pub fn length(&self) -> usize {
        self.k + self.m_parity
    }
}

pub fn rra_encode(msg: &[u8], spec: &RraSpec) -> Result<BitWord> {
    if msg.len() != spec.k {
        return Err(invalid!("RRA message length {} != {}", msg.len(), spec.k));
    }
    let repeated: Vec<u8> = msg.iter().flat_map(|&b| std::iter::repeat_n(b, spec.dv)).collect();
    let mixed = permute(&repeated, &spec.inner_perm);
    let mut out = msg.to_vec();
    let mut acc = 0u8;
    for (t, &b) in mixed.iter().enumerate() {
        acc ^= b;
        if (t + 1) % spec.dc == 0 {
            out.push(acc);
        }
    }
    BitWord::from_bits(out)
}

/// Any supported outer code.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OuterCodeDoc", into = "OuterCodeDoc")]
pub enum OuterCode {
    /// CRC over a message of fixed length.
    Crc { spec: CrcSpec, k: usize },
    Bch { m_param: usize },
    Rra(RraSpec),
}

/// Outer-code document, tagged by `type`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum OuterCodeDoc {
    Crc {
        k: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        preset: Option<String>,
        /// Exponents with nonzero coefficient, e.g. `[24, 23, 21, ...]`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degrees: Option<Vec<usize>>,
        /// Coefficients from the highest degree down.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        coefficients: Option<Vec<u8>>,
    },
    Bch {
        m: usize,
    },
    Rra {
        k: usize,
        dv: usize,
        m: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        perm_seed: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        perm: Option<Vec<usize>>,
    },
}

impl TryFrom<OuterCodeDoc> for OuterCode {
    type Error = Error;
    fn try_from(doc: OuterCodeDoc) -> Result<Self> {
        match doc {
            OuterCodeDoc::Crc { k, preset, degrees, coefficients } => {
                let spec = match (preset, degrees, coefficients) {
                    (Some(p), None, None) => CrcSpec::preset(&p)?,
                    (None, Some(d), None) => CrcSpec::new(GeneratorPoly::from_degrees(&d)?),
                    (None, None, Some(c)) => CrcSpec::new(GeneratorPoly::from_coefficients(&c)?),
                    _ => return Err(invalid!("CRC needs exactly one of preset, degrees, coefficients")),
                };
                OuterCode::crc(spec, k)
            }
            OuterCodeDoc::Bch { m } => OuterCode::bch(m),
            OuterCodeDoc::Rra { k, dv, m, perm_seed, perm } => match (perm, perm_seed) {
                (Some(p), seed) => {
                    let mut spec = RraSpec::new(k, dv, m, p)?;
                    spec.perm_seed = seed;
                    Ok(OuterCode::Rra(spec))
                }
                (None, Some(seed)) => Ok(OuterCode::Rra(RraSpec::seeded(k, dv, m, seed)?)),
                (None, None) => Err(invalid!("RRA needs perm_seed or perm")),
            },
        }
    }
}

impl From<OuterCode> for OuterCodeDoc {
    fn from(code: OuterCode) -> Self {
        match code {
            OuterCode::Crc { spec, k } => match spec.name {
                Some(name) => OuterCodeDoc::Crc { k, preset: Some(name), degrees: None, coefficients: None },
                None => OuterCodeDoc::Crc { k, preset: None, degrees: Some(spec.generator.degrees()), coefficients: None },
            },
            OuterCode::Bch { m_param } => OuterCodeDoc::Bch { m: m_param },
            OuterCode::Rra(spec) => OuterCodeDoc::Rra {
                k: spec.k,
                dv: spec.dv,
                m: spec.m_parity,
                perm: spec.perm_seed.is_none().then(|| spec.inner_perm.clone()),
                perm_seed: spec.perm_seed,
            },
        }
    }
}

impl OuterCode {
    pub fn crc(spec: CrcSpec, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid!("CRC message length must be positive"));
        }
        Ok(OuterCode::Crc { spec, k })
    }

    pub fn bch(m_param: usize) -> Result<Self> {
        bch_params(m_param)?;
        Ok(OuterCode::Bch { m_param })
    }

    /// Exact weight enumerator where one is available (BCH and the RRA
    /// ensemble); CRC codes have none.
    pub fn wef<C: Coeff>(&self) -> Result<Option<WeightPoly<C>>> {
        match self {
            OuterCode::Crc { .. } => Ok(None),
            OuterCode::Bch { m_param } => hamming_wef(*m_param).map(Some),
            OuterCode::Rra(s) => rra_wef(s.k, s.dv, s.m_parity).map(Some),
        }
    }

    pub fn describe(&self) -> String {
        let (n, k) = (self.length(), self.dimension());
        match self {
            OuterCode::Crc { spec, .. } => {
                format!("crc({n},{k},{})", spec.name.clone().unwrap_or_else(|| format!("{:?}", spec.generator.degrees())))
            }
            OuterCode::Bch { .. } => format!("bch({n},{k})"),
            OuterCode::Rra(s) => format!("rra({n},{k},dv={})", s.dv),
        }
    }
}

impl Encoder for OuterCode {
    fn dimension(&self) -> usize {
        match self {
            OuterCode::Crc { k, .. } => *k,
            OuterCode::Bch { m_param } => (1 << m_param) - 1 - m_param,
            OuterCode::Rra(s) => s.k,
        }
    }

    fn length(&self) -> usize {
        match self {
            OuterCode::Crc { spec, k } => k + spec.parity_len(),
            OuterCode::Bch { m_param } => (1 << m_param) - 1,
            OuterCode::Rra(s) => s.length(),
        }
    }

    fn encode(&self, msg: &[u8]) -> Result<BitWord> {
        match self {
            OuterCode::Crc { spec, k } => {
                if msg.len() != *k {
                    return Err(invalid!("CRC message length {} != {k}", msg.len()));
                }
                Ok(crc_encode(msg, spec))
            }
            OuterCode::Bch { m_param } => bch_encode(msg, *m_param),
            OuterCode::Rra(s) => rra_encode(msg, s),
        }
    }
}

impl Detector for OuterCode {
    /// Membership test: re-encode the systematic part and compare.
    fn check(&self, word: &[u8]) -> bool {
        if word.len() != self.length() {
            return false;
        }
        match self {
            OuterCode::Crc { spec, .. } => spec.generator.divides(word),
            OuterCode::Bch { m_param } => primitive_poly(*m_param).is_ok_and(|g| g.divides(word)),
            OuterCode::Rra(s) => rra_encode(&word[..s.k], s).is_ok_and(|cw| *cw == *word),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_example() {
        let g = GeneratorPoly::from_degrees(&[3, 1, 0]).unwrap();
        assert_eq!(g.parity(&[1, 0, 0, 0]), vec![1, 0, 1]);
        assert!(g.divides(&[1, 0, 0, 0, 1, 0, 1]));
    }

    #[test]
    fn presets() {
        assert_eq!(CrcSpec::g8a().generator.coefficients(), vec![1, 1, 1, 1, 1, 1, 0, 0, 1]);
        assert_eq!(CrcSpec::g8b().generator.coefficients(), vec![1, 1, 1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(GeneratorPoly::from_coefficients(&[1, 0, 1, 1]).unwrap().degrees(), vec![3, 1, 0]);
    }

    #[test]
    fn primitive_table() {
        for m in 3..=16 {
            assert!(primitive_poly(m).unwrap().is_primitive(), "m = {m}");
        }
        assert!(!GeneratorPoly::from_degrees(&[4, 3, 2, 1, 0]).unwrap().is_primitive());
    }

    #[test]
    fn crc_round_trip_and_short_word() {
        let spec = CrcSpec::g8a();
        let cw = crc_encode(&[1, 0, 1, 1, 0], &spec);
        assert_eq!(cw.len(), 13);
        assert!(crc_check(&cw, &spec).unwrap());
        assert!(crc_check(&[0; 8], &spec).is_err());
    }

    #[test]
    fn rra_trace() {
        let spec = RraSpec::identity(4, 3, 4).unwrap();
        assert_eq!(spec.dc, 3);
        let cw = rra_encode(&[1, 0, 0, 0], &spec).unwrap();
        // accumulator over 111000000000 sampled at 2, 5, 8, 11
        assert_eq!(&cw[4..], &[1, 1, 1, 1]);
        let cw = rra_encode(&[0, 1, 0, 0], &spec).unwrap();
        assert_eq!(&cw[4..], &[0, 1, 1, 1]);
    }

    #[test]
    fn doc_round_trip() {
        for code in [
            OuterCode::crc(CrcSpec::g8b(), 20).unwrap(),
            OuterCode::crc(CrcSpec::new(GeneratorPoly::from_degrees(&[5, 2, 0]).unwrap()), 7).unwrap(),
            OuterCode::bch(6).unwrap(),
            OuterCode::Rra(RraSpec::seeded(8, 3, 4, 11).unwrap()),
            OuterCode::Rra(RraSpec::identity(4, 3, 4).unwrap()),
        ] {
            let text = serde_json::to_string(&code).unwrap();
            let back: OuterCode = serde_json::from_str(&text).unwrap();
            assert_eq!(back, code, "{text}");
        }
        let crc24c = r#"{"type":"crc","k":100,"degrees":[24,23,21,20,17,15,13,12,8,4,2,1,0]}"#;
        let code: OuterCode = serde_json::from_str(crc24c).unwrap();
        assert_eq!(code.length(), 124);
    }

    #[test]
    fn detector_accepts_codewords_only() {
        let code = OuterCode::bch(4).unwrap();
        let cw = code.encode(&[1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 1]).unwrap();
        assert!(code.check(&cw));
        let mut bad = cw.clone();
        bad[3] ^= 1;
        assert!(!code.check(&bad));
    }
}
