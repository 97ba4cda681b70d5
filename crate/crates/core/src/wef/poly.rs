use num_rational::BigRational;

use super::coeff::Coeff;
use crate::error::{invalid, Result};

/// Weight enumerator `A(Y) = sum_d A_d Y^d` of a length-`len` code (or ensemble).
#[derive(Clone, Debug, PartialEq)]
pub struct WeightPoly<C> {
    len: usize,
    coeffs: Vec<C>,
}

/// Input-output weight enumerator `A(X,Y) = sum_{w,d} A_{w,d} X^w Y^d`.
/// Stored as rows indexed by output weight `d`, each a dense vector over `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct IOWeightPoly<C> {
    input_len: usize,
    output_len: usize,
    rows: Vec<Vec<C>>,
}

pub type ExactWef = WeightPoly<BigRational>;
pub type FloatWef = WeightPoly<f64>;

fn trim<C: Coeff>(v: &mut Vec<C>) {
    while v.len() > 1 && v.last().is_some_and(Coeff::is_zero) {
        v.pop();
    }
}

impl<C: Coeff> WeightPoly<C> {
    /// `coeffs[d]` is `A_d`; `coeffs` may not extend past `len`.
    pub fn from_dense(len: usize, mut coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            coeffs.push(C::zero());
        }
        trim(&mut coeffs);
        if coeffs.len() > len + 1 {
            return Err(invalid!("degree {} exceeds length {len}", coeffs.len() - 1));
        }
        Ok(Self { len, coeffs })
    }

    pub fn from_pairs(len: usize, pairs: impl IntoIterator<Item = (usize, C)>) -> Result<Self> {
        let mut coeffs: Vec<C> = Vec::new();
        for (d, c) in pairs {
            if d > len {
                return Err(invalid!("weight {d} exceeds length {len}"));
            }
            if coeffs.len() <= d {
                coeffs.resize(d + 1, C::zero());
            }
            coeffs[d].add_assign(&c);
        }
        Self::from_dense(len, coeffs)
    }

    /// The enumerator `1` (only the zero word).
    pub fn one(len: usize) -> Self {
        Self { len, coeffs: vec![C::one()] }
    }

    /// Codeword length the enumerator refers to.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_zero)
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> C {
        self.coeffs.get(d).cloned().unwrap_or_else(C::zero)
    }

    pub fn dense(&self) -> &[C] {
        &self.coeffs
    }

    /// Nonzero terms in increasing weight.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &C)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn term_count(&self) -> usize {
        self.terms().count()
    }

    pub fn mass(&self) -> C {
        let mut s = C::zero();
        for c in &self.coeffs {
            s.add_assign(c);
        }
        s
    }

    /// Smallest nonzero weight with a nonzero coefficient, and that coefficient.
    pub fn min_distance(&self) -> Option<(usize, C)> {
        self.terms().find(|(d, _)| *d > 0).map(|(d, c)| (d, c.clone()))
    }

    /// Drops every term above `cap`.
    pub fn truncated(&self, cap: usize) -> Self {
        let mut coeffs: Vec<C> = self.coeffs.iter().take(cap + 1).cloned().collect();
        trim(&mut coeffs);
        Self { len: self.len, coeffs }
    }

    pub fn to_float(&self) -> WeightPoly<f64> {
        WeightPoly { len: self.len, coeffs: self.coeffs.iter().map(Coeff::to_f64).collect() }
    }

    /// Product of two enumerators: the enumerator of the direct sum of the codes.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out[a + b].add_assign(&ca.mul(cb));
            }
        }
        trim(&mut out);
        Self { len: self.len + other.len, coeffs: out }
    }
}

impl<C: Coeff> IOWeightPoly<C> {
    pub fn one(input_len: usize, output_len: usize) -> Self {
        Self { input_len, output_len, rows: vec![vec![C::one()]] }
    }

    pub fn from_triples(
        input_len: usize,
        output_len: usize,
        triples: impl IntoIterator<Item = (usize, usize, C)>,
    ) -> Result<Self> {
        let mut rows: Vec<Vec<C>> = Vec::new();
        for (w, d, c) in triples {
            if w > input_len || d > output_len {
                return Err(invalid!("term ({w},{d}) outside ({input_len},{output_len})"));
            }
            if rows.len() <= d {
                rows.resize(d + 1, Vec::new());
            }
            if rows[d].len() <= w {
                rows[d].resize(w + 1, C::zero());
            }
            rows[d][w].add_assign(&c);
        }
        Ok(Self::from_rows(input_len, output_len, rows))
    }

    pub(crate) fn from_rows(input_len: usize, output_len: usize, mut rows: Vec<Vec<C>>) -> Self {
        for r in rows.iter_mut() {
            while r.last().is_some_and(Coeff::is_zero) {
                r.pop();
            }
        }
        while rows.len() > 1 && rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        if rows.is_empty() {
            rows.push(Vec::new());
        }
        Self { input_len, output_len, rows }
    }

    pub fn input_len(&self) -> usize {
        self.input_len
    }

    pub fn output_len(&self) -> usize {
        self.output_len
    }

    pub fn output_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn input_max(&self) -> usize {
        self.rows.iter().map(|r| r.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Row of output weight `d`, indexed by input weight.
    pub fn row(&self, d: usize) -> &[C] {
        self.rows.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub(crate) fn rows(&self) -> &[Vec<C>] {
        &self.rows
    }

    pub fn coeff(&self, w: usize, d: usize) -> C {
        self.rows.get(d).and_then(|r| r.get(w)).cloned().unwrap_or_else(C::zero)
    }

    /// Nonzero terms `(w, d, A_{w,d})`, ordered by `d` then `w`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(d, r)| r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(w, c)| (w, d, c)))
    }

    pub fn term_count(&self) -> usize {
        self.terms().count()
    }

    pub fn mass(&self) -> C {
        let mut s = C::zero();
        for (_, _, c) in self.terms() {
            s.add_assign(c);
        }
        s
    }

    /// `A(X=1, Y)`.
    pub fn marginal(&self) -> WeightPoly<C> {
        let coeffs = self
            .rows
            .iter()
            .map(|r| {
                let mut s = C::zero();
                for c in r {
                    s.add_assign(c);
                }
                s
            })
            .collect();
        WeightPoly::from_dense(self.output_len, coeffs).expect("rows bounded by output length")
    }

    pub fn truncated(&self, cap: usize) -> Self {
        Self::from_rows(self.input_len, self.output_len, self.rows.iter().take(cap + 1).cloned().collect())
    }

    pub fn to_float(&self) -> IOWeightPoly<f64> {
        IOWeightPoly {
            input_len: self.input_len,
            output_len: self.output_len,
            rows: self.rows.iter().map(|r| r.iter().map(Coeff::to_f64).collect()).collect(),
        }
    }

    /// Product of two IOWEFs: the encoder that runs both side by side.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut rows: Vec<Vec<C>> = vec![Vec::new(); self.rows.len() + other.rows.len() - 1];
        for (d1, r1) in self.rows.iter().enumerate() {
            for (d2, r2) in other.rows.iter().enumerate() {
                if r1.is_empty() || r2.is_empty() {
                    continue;
                }
                let conv = convolve(r1, r2);
                accumulate(&mut rows[d1 + d2], &conv, None);
            }
        }
        Self::from_rows(self.input_len + other.input_len, self.output_len + other.output_len, rows)
    }
}

pub(crate) fn convolve<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j].add_assign(&x.mul(y));
            }
        }
    }
    out
}

/// `dst += scale * src`, growing `dst` as needed.
pub(crate) fn accumulate<C: Coeff>(dst: &mut Vec<C>, src: &[C], scale: Option<&C>) {
    if dst.len() < src.len() {
        dst.resize(src.len(), C::zero());
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if s.is_zero() {
            continue;
        }
        match scale {
            Some(f) => d.add_assign(&s.mul(f)),
            None => d.add_assign(s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn construction_and_queries() {
        let p = WeightPoly::from_pairs(4, [(0, q(1)), (2, q(3)), (4, q(0))]).unwrap();
        assert_eq!(p.max_degree(), 2);
        assert_eq!(p.mass(), q(4));
        assert_eq!(p.min_distance(), Some((2, q(3))));
        assert!(WeightPoly::from_pairs(2, [(3, q(1))]).is_err());
    }

    #[test]
    fn marginal_sums_inputs() {
        let io = IOWeightPoly::from_triples(2, 3, [(0, 0, q(1)), (1, 2, q(2)), (2, 2, q(1))]).unwrap();
        let m = io.marginal();
        assert_eq!(m.dense(), &[q(1), q(0), q(3)]);
        assert_eq!(io.input_max(), 2);
        assert_eq!(io.term_count(), 3);
    }

    #[test]
    fn multiplication() {
        let p = WeightPoly::from_pairs(1, [(0, 1.0), (1, 1.0)]).unwrap();
        let sq = p.multiply(&p);
        assert_eq!(sq.dense(), &[1.0, 2.0, 1.0]);
        assert_eq!(sq.len(), 2);
    }
}
