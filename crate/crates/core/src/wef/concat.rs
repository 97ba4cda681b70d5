//! Enumerators of parallel and serially concatenated codes.

use super::coeff::{BinomialTable, Coeff};
use super::poly::{IOWeightPoly, WeightPoly};
use crate::error::{invalid, Result};

/// `[A(Y)]^p`: WEF of `p` independent copies of a code.
pub fn power_wef<C: Coeff>(a: &WeightPoly<C>, p: usize) -> Result<WeightPoly<C>> {
    if p == 0 {
        return Err(invalid!("power must be at least 1"));
    }
    let mut out = a.clone();
    for _ in 1..p {
        out = out.multiply(a);
    }
    Ok(out)
}

/// `[A(X,Y)]^q`: IOWEF of `q` parallel copies of an encoder.
pub fn power_iowef<C: Coeff>(a: &IOWeightPoly<C>, q: usize) -> Result<IOWeightPoly<C>> {
    if q == 0 {
        return Err(invalid!("power must be at least 1"));
    }
    let mut out = a.clone();
    for _ in 1..q {
        out = out.multiply(a);
    }
    Ok(out)
}

/// WEF of an outer code serially concatenated with an inner encoder through
/// a uniform interleaver: `A_d = sum_w A^O_w A^I_{w,d} / C(nP, w)`.
pub fn serial_concat_wef<C: Coeff>(outer: &WeightPoly<C>, inner: &IOWeightPoly<C>) -> Result<WeightPoly<C>> {
    let np = outer.len();
    if inner.input_len() != np {
        return Err(invalid!("outer code length {np} != inner input size {}", inner.input_len()));
    }
    let table = C::Table::build(np);
    let scaled: Vec<C> = outer.dense().iter().enumerate().map(|(w, a)| a.div_binomial(&table, np, w)).collect();
    let coeffs = (0..=inner.output_max())
        .map(|d| {
            let mut s = C::zero();
            for (w, a) in inner.row(d).iter().enumerate() {
                if let Some(o) = scaled.get(w) {
                    if !a.is_zero() && !o.is_zero() {
                        s.add_assign(&o.mul(a));
                    }
                }
            }
            s
        })
        .collect();
    WeightPoly::from_dense(inner.output_len(), coeffs)
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn powers() {
        let a = WeightPoly::from_dense(1, vec![q(1), q(1)]).unwrap();
        assert_eq!(power_wef(&a, 1).unwrap(), a);
        assert_eq!(power_wef(&a, 2).unwrap().dense(), &[q(1), q(2), q(1)]);
        assert!(power_wef(&a, 0).is_err());
        let io = IOWeightPoly::from_triples(1, 2, [(0, 0, q(1)), (1, 2, q(1))]).unwrap();
        let sq = power_iowef(&io, 2).unwrap();
        assert_eq!(sq.coeff(1, 2), q(2));
        assert_eq!(sq.coeff(2, 4), q(1));
        assert_eq!((sq.input_len(), sq.output_len()), (2, 4));
    }

    #[test]
    fn zero_outer_gives_one() {
        let inner = IOWeightPoly::from_triples(2, 4, [(0, 0, q(1)), (1, 3, q(2)), (2, 4, q(1))]).unwrap();
        let out = serial_concat_wef(&WeightPoly::one(2), &inner).unwrap();
        assert_eq!(out.dense(), &[q(1)]);
        assert!(serial_concat_wef(&WeightPoly::<BigRational>::one(3), &inner).is_err());
    }
}
