//! Weight enumerators of the outer component codes.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeff::Coeff;
use super::poly::WeightPoly;
use crate::error::{invalid, Result};

/// Weight distribution of the binary Hamming code of length `n = 2^m - 1`:
/// `A(Y) = [(1+Y)^n + n (1+Y)^((n-1)/2) (1-Y)^((n+1)/2)] / (n+1)`.
pub fn hamming_wef<C: Coeff>(m_param: usize) -> Result<WeightPoly<C>> {
    if !(3..=16).contains(&m_param) {
        return Err(invalid!("Hamming parameter m must be in [3, 16], got {m_param}"));
    }
    let n = (1usize << m_param) - 1;
    let a = (n - 1) / 2;
    let n_big = BigInt::from(n);
    let denom = BigInt::from(n + 1);
    // (1+Y)^a (1-Y)^(a+1) = (1-Y^2)^a (1-Y)
    let mut binom_n = BigInt::one();
    let mut binom_a = BigInt::one();
    let mut coeffs = Vec::with_capacity(n + 1);
    for d in 0..=n {
        if d > 0 {
            binom_n = binom_n * BigInt::from(n - d + 1) / BigInt::from(d);
        }
        let j = d / 2;
        if d % 2 == 0 && j > 0 {
            binom_a = binom_a * BigInt::from(a - j + 1) / BigInt::from(j);
        }
        let sign_j = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let c = if d % 2 == 0 { &sign_j * &binom_a } else { -(&sign_j * &binom_a) };
        let (q, r) = (&binom_n + &n_big * c).div_rem(&denom);
        debug_assert!(r.is_zero());
        coeffs.push(C::from_biguint(&q.to_biguint().expect("weight counts are non-negative")));
    }
    WeightPoly::from_dense(n, coeffs)
}

/// Counts of the punctured accumulator: `acc[a][p]` is the number of
/// length-`len` inputs of weight `a` whose accumulator output, sampled at
/// positions `dc-1, 2dc-1, ...`, has weight `p`.
pub fn punctured_accumulator_counts(len: usize, dc: usize) -> Vec<Vec<BigUint>> {
    let m = len / dc;
    let stride_p = m + 1;
    let stride_s = (len + 1) * stride_p;
    let idx = |s: usize, a: usize, p: usize| s * stride_s + a * stride_p + p;
    let mut cur = vec![BigUint::zero(); 2 * stride_s];
    let mut next = cur.clone();
    cur[idx(0, 0, 0)] = BigUint::one();
    for t in 0..len {
        let retained = (t + 1) % dc == 0;
        let p_max = t / dc;
        for v in next.iter_mut() {
            v.set_zero();
        }
        for s in 0..2 {
            for a in 0..=t {
                for p in 0..=p_max {
                    let c = &cur[idx(s, a, p)];
                    if c.is_zero() {
                        continue;
                    }
                    for bit in 0..2 {
                        let s2 = s ^ bit;
                        let p2 = if retained { p + s2 } else { p };
                        let slot = &mut next[idx(s2, a + bit, p2)];
                        *slot += c;
                    }
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    (0..=len)
        .map(|a| (0..=m).map(|p| &cur[idx(0, a, p)] + &cur[idx(1, a, p)]).collect())
        .collect()
}

/// Ensemble WEF of the systematic regular repeat-accumulate code with a
/// uniform interleaver between repetition and accumulator:
/// `A_{w, w+p} = C(k,w) ACC_{dv w, p} / C(k dv, dv w)`.
pub fn rra_wef<C: Coeff>(k: usize, dv: usize, m_parity: usize) -> Result<WeightPoly<C>> {
    if k == 0 || dv == 0 || m_parity == 0 {
        return Err(invalid!("RRA parameters must be positive"));
    }
    if !(k * dv).is_multiple_of(m_parity) {
        return Err(invalid!("k * dv = {} is not divisible by m = {m_parity}", k * dv));
    }
    let len = k * dv;
    let dc = len / m_parity;
    let acc = punctured_accumulator_counts(len, dc);
    let mut binom_k = BigUint::one();
    let mut coeffs = vec![C::zero(); k + m_parity + 1];
    for w in 0..=k {
        if w > 0 {
            binom_k = binom_k * BigUint::from(k - w + 1) / BigUint::from(w);
        }
        let binom_len = num_integer::binomial(BigUint::from(len), BigUint::from(dv * w));
        for (p, count) in acc[dv * w].iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            let num = BigInt::from(&binom_k * count);
            let v = BigRational::new(num, BigInt::from(binom_len.clone()));
            coeffs[w + p].add_assign(&C::from_rational(&v));
        }
    }
    WeightPoly::from_dense(k + m_parity, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn hamming_7_4() {
        let w: WeightPoly<BigRational> = hamming_wef(3).unwrap();
        assert_eq!(w.dense(), &[q(1), q(0), q(0), q(7), q(7), q(0), q(0), q(1)]);
        assert!(hamming_wef::<f64>(2).is_err());
        assert!(hamming_wef::<f64>(17).is_err());
    }

    #[test]
    fn hamming_matches_recurrence() {
        // (i+1) A_{i+1} + A_i + (n-i+1) A_{i-1} = C(n,i)
        for m in 3..=8 {
            let w: WeightPoly<BigRational> = hamming_wef(m).unwrap();
            let n = (1usize << m) - 1;
            for i in 1..n {
                let lhs = q(i as i64 + 1) * w.coeff(i + 1) + w.coeff(i) + q((n - i + 1) as i64) * w.coeff(i - 1);
                let c = num_integer::binomial(BigInt::from(n), BigInt::from(i));
                assert_eq!(lhs, BigRational::from_integer(c), "m={m} i={i}");
            }
        }
    }

    #[test]
    fn accumulator_counts_cover_all_inputs() {
        let acc = punctured_accumulator_counts(12, 3);
        let total: BigUint = acc.iter().flatten().sum();
        assert_eq!(total, BigUint::from(4096u32));
        assert_eq!(acc[0][0], BigUint::one());
        assert!(acc[0][1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn rra_zero_input_and_mass() {
        let w: WeightPoly<BigRational> = rra_wef(4, 3, 4).unwrap();
        assert_eq!(w.coeff(0), q(1));
        assert_eq!(w.mass(), q(16));
        assert!(rra_wef::<f64>(4, 3, 5).is_err());
    }
}
