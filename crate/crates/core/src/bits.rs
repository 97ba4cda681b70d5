use std::fmt;
use std::ops::{Deref, DerefMut};
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A word over GF(2), one byte (0 or 1) per bit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BitWord(Vec<u8>);

impl BitWord {
    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    /// Unit vector `e_i` of length `len`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut w = Self::zeros(len);
        w.0[i] = 1;
        w
    }

    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if let Some(i) = bits.iter().position(|&b| b > 1) {
            return Err(invalid!("non-binary value {} at index {i}", bits[i]));
        }
        Ok(Self(bits))
    }

    /// Bits of `value`, most significant first, `len` positions.
    pub fn from_u64(value: u64, len: usize) -> Self {
        Self((0..len).map(|i| ((value >> (len - 1 - i)) & 1) as u8).collect())
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        Self((0..len).map(|_| rng.random::<bool>() as u8).collect())
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn xor(&self, other: &BitWord) -> BitWord {
        assert_eq!(self.len(), other.len());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    /// Packed hex, first bit is the MSB of the first nibble; the last nibble is zero-padded.
    pub fn to_hex(&self) -> String {
        self.0
            .chunks(4)
            .map(|c| {
                let v = c.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | (b << (3 - i)));
                char::from_digit(v as u32, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(hex: &str, len: usize) -> Result<Self> {
        if hex.len() * 4 < len || hex.len() * 4 >= len + 4 {
            return Err(invalid!("hex string of {} digits cannot hold {len} bits", hex.len()));
        }
        let mut bits = Vec::with_capacity(hex.len() * 4);
        for c in hex.chars() {
            let v = c.to_digit(16).ok_or_else(|| invalid!("bad hex digit {c:?}"))?;
            bits.extend((0..4).map(|i| ((v >> (3 - i)) & 1) as u8));
        }
        bits.truncate(len);
        Ok(Self(bits))
    }
}

impl Deref for BitWord {
    type Target = [u8];
    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl DerefMut for BitWord {
    fn deref_mut(&mut self) -> &mut [u8] {
        &mut self.0
    }
}

impl From<BitWord> for Vec<u8> {
    fn from(w: BitWord) -> Self {
        w.0
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(invalid!("bad bit character {c:?}")),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl TryFrom<String> for BitWord {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BitWord> for String {
    fn from(w: BitWord) -> Self {
        w.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_hex() {
        let w: BitWord = "1011001".parse().unwrap();
        assert_eq!(w.to_string(), "1011001");
        assert_eq!(w.to_hex(), "b2");
        assert_eq!(BitWord::from_hex("b2", 7).unwrap(), w);
        assert_eq!(w.weight(), 4);
        assert!("10a".parse::<BitWord>().is_err());
        assert!(BitWord::from_bits(vec![0, 2]).is_err());
    }

    #[test]
    fn from_u64_is_msb_first() {
        assert_eq!(BitWord::from_u64(0b100, 3).to_string(), "100");
    }
}
