use super::coeff::Coeff;
use super::poly::WeightPoly;
use crate::encode::{generator_rows, Encoder};
use crate::error::{Error, Result};

/// Largest message length accepted by the exhaustive enumerators.
pub const MAX_EXHAUSTIVE_K: usize = 24;

/// Exact WEF of a linear encoder by visiting all `2^k` codewords
/// (Gray-code order, one generator-row XOR per step).
pub fn enumerate_wef_exhaustive<C: Coeff>(encoder: &dyn Encoder) -> Result<WeightPoly<C>> {
    let k = encoder.dimension();
    if k > MAX_EXHAUSTIVE_K {
        return Err(Error::ResourceLimit(format!(
            "exhaustive enumeration of 2^{k} codewords exceeds the 2^{MAX_EXHAUSTIVE_K} limit"
        )));
    }
    let counts = weight_counts(encoder)?;
    WeightPoly::from_dense(encoder.length(), counts.iter().map(|&c| C::from_u64(c)).collect())
}

/// Raw codeword counts per weight for a linear encoder with `k <= 24`.
pub fn weight_counts(encoder: &dyn Encoder) -> Result<Vec<u64>> {
    let k = encoder.dimension();
    if k > MAX_EXHAUSTIVE_K {
        return Err(Error::ResourceLimit(format!("k = {k} too large for exhaustive enumeration")));
    }
    let rows = generator_rows(encoder)?;
    let words = encoder.length().div_ceil(64);
    let mut cur = vec![0u64; words];
    let mut counts = vec![0u64; encoder.length() + 1];
    counts[0] = 1;
    for i in 1u64..(1u64 << k) {
        let r = &rows[i.trailing_zeros() as usize];
        let mut w = 0u32;
        for (c, x) in cur.iter_mut().zip(r) {
            *c ^= x;
            w += c.count_ones();
        }
        counts[w as usize] += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;
    use crate::code::CodeSpec;
    use crate::encode::IPolarCode;

    #[test]
    fn zero_word_and_mass() {
        let code = IPolarCode::sampled(CodeSpec::new(4, [7, 11, 13, 14, 15]).unwrap(), 2);
        let w: WeightPoly<BigRational> = enumerate_wef_exhaustive(&code).unwrap();
        assert_eq!(w.coeff(0), BigRational::from_integer(1.into()));
        assert_eq!(w.mass(), BigRational::from_integer(32.into()));
    }

    #[test]
    fn repetition_code() {
        let code = IPolarCode::polar(CodeSpec::new(3, [7]).unwrap());
        let w: WeightPoly<f64> = enumerate_wef_exhaustive(&code).unwrap();
        assert_eq!(w.dense(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    }
}
