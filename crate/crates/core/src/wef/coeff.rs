use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient arithmetic used by the weight enumerators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    /// Exact arbitrary-precision rationals.
    Rational,
    /// Double precision with binomial ratios taken through log-factorials.
    Float,
}

impl Arithmetic {
    pub fn name(self) -> &'static str {
        match self {
            Arithmetic::Rational => "rational",
            Arithmetic::Float => "float",
        }
    }
}

impl std::str::FromStr for Arithmetic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(Self::Rational),
            "float" => Ok(Self::Float),
            _ => Err(Error::Parse(format!("unknown arithmetic mode {s:?}"))),
        }
    }
}

/// Binomial data for lengths up to some `n`, shared by a batch of kernel evaluations.
pub trait BinomialTable: Sync {
    fn build(n: usize) -> Self;
}

/// Pascal triangle of exact binomials.
pub struct Pascal(Vec<Vec<BigUint>>);

impl BinomialTable for Pascal {
    fn build(n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
        rows.push(vec![BigUint::one()]);
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = Vec::with_capacity(i + 1);
            row.push(BigUint::one());
            for k in 1..i {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigUint::one());
            rows.push(row);
        }
        Pascal(rows)
    }
}

impl Pascal {
    pub fn get(&self, n: usize, k: usize) -> &BigUint {
        &self.0[n][k]
    }
}

/// `ln(i!)` for `i <= n`.
pub struct LnFactorial(Vec<f64>);

impl BinomialTable for LnFactorial {
    fn build(n: usize) -> Self {
        let mut v = Vec::with_capacity(n + 1);
        let mut acc = 0.0f64;
        v.push(0.0);
        for i in 1..=n {
            acc += (i as f64).ln();
            v.push(acc);
        }
        LnFactorial(v)
    }
}

impl LnFactorial {
    pub fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        self.0[n] - self.0[k] - self.0[n - k]
    }
}

/// A coefficient ring for weight enumerators.
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Table: BinomialTable;
    const MODE: Arithmetic;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_u64(v: u64) -> Self;
    fn from_biguint(v: &BigUint) -> Self;
    fn from_rational(v: &BigRational) -> Self;
    fn add_assign(&mut self, rhs: &Self);
    fn mul(&self, rhs: &Self) -> Self;
    /// `C(d2,k) C(n-d2,d1-k) / C(n,d1)`, the probability that a uniformly
    /// permuted weight-`d1` word overlaps a fixed weight-`d2` word in `k` places.
    fn overlap_probability(table: &Self::Table, n: usize, d1: usize, d2: usize, k: usize) -> Self;
    /// `self / C(n, w)`.
    fn div_binomial(&self, table: &Self::Table, n: usize, w: usize) -> Self;
    fn to_f64(&self) -> f64;
    /// Decimal rendering used in CSV output.
    fn to_decimal(&self) -> String;
    /// Exact rendering where one exists.
    fn to_exact(&self) -> Option<String> {
        None
    }
    fn parse(s: &str) -> Result<Self>;
}

impl Coeff for f64 {
    type Table = LnFactorial;
    const MODE: Arithmetic = Arithmetic::Float;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_u64(v: u64) -> Self {
        v as f64
    }
    fn from_biguint(v: &BigUint) -> Self {
        v.to_f64().unwrap_or(f64::INFINITY)
    }
    fn from_rational(v: &BigRational) -> Self {
        ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn overlap_probability(t: &LnFactorial, n: usize, d1: usize, d2: usize, k: usize) -> Self {
        (t.ln_binomial(d2, k) + t.ln_binomial(n - d2, d1 - k) - t.ln_binomial(n, d1)).exp()
    }
    fn div_binomial(&self, t: &LnFactorial, n: usize, w: usize) -> Self {
        self * (-t.ln_binomial(n, w)).exp()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_decimal(&self) -> String {
        format!("{self}")
    }
    fn parse(s: &str) -> Result<Self> {
        s.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))
    }
}

impl Coeff for BigRational {
    type Table = Pascal;
    const MODE: Arithmetic = Arithmetic::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_u64(v: u64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_biguint(v: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(v.clone()))
    }
    fn from_rational(v: &BigRational) -> Self {
        v.clone()
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn overlap_probability(t: &Pascal, n: usize, d1: usize, d2: usize, k: usize) -> Self {
        let num = t.get(d2, k) * t.get(n - d2, d1 - k);
        BigRational::new(BigInt::from(num), BigInt::from(t.get(n, d1).clone()))
    }
    fn div_binomial(&self, t: &Pascal, n: usize, w: usize) -> Self {
        self / BigRational::from_integer(BigInt::from(t.get(n, w).clone()))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_decimal(&self) -> String {
        rational_to_decimal(self, 20)
    }
    fn to_exact(&self) -> Option<String> {
        Some(if self.is_integer() { self.numer().to_string() } else { format!("{}/{}", self.numer(), self.denom()) })
    }
    fn parse(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

/// Decimal expansion of `r` rounded half away from zero to `digits` fractional digits.
pub fn rational_to_decimal(r: &BigRational, digits: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (a * BigRational::from_integer(scale.clone()) + BigRational::new(1.into(), 2.into())).floor();
    let v = scaled.to_integer();
    let int_part = &v / &scale;
    let frac = (&v % &scale).to_string();
    let mut s = String::new();
    if neg && !v.is_zero() {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if digits > 0 {
        s.push('.');
        s.push_str(&"0".repeat(digits - frac.len()));
        s.push_str(&frac);
    }
    s
}

/// Parses `p/q`, an integer, or a plain decimal string into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let digits = format!("{ip}{fp}");
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        return Ok(BigRational::new(num, BigInt::from(10u32).pow(fp.len() as u32)));
    }
    let v: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering() {
        let r = BigRational::new(2.into(), 3.into());
        assert_eq!(rational_to_decimal(&r, 4), "0.6667");
        let r = BigRational::new((-7).into(), 2.into());
        assert_eq!(rational_to_decimal(&r, 1), "-3.5");
        assert_eq!(rational_to_decimal(&BigRational::from_integer(12.into()), 0), "12");
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("1.25").unwrap(), BigRational::new(5.into(), 4.into()));
        assert_eq!(parse_rational("-4").unwrap(), BigRational::from_integer((-4).into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn float_and_exact_kernels_agree() {
        let p = Pascal::build(40);
        let l = LnFactorial::build(40);
        for (n, d1, d2, k) in [(40, 10, 7, 3), (16, 8, 8, 0), (32, 1, 1, 1)] {
            let e = <BigRational as Coeff>::overlap_probability(&p, n, d1, d2, k);
            let f = <f64 as Coeff>::overlap_probability(&l, n, d1, d2, k);
            assert!((Coeff::to_f64(&e) - f).abs() < 1e-12 * f.max(1e-300));
        }
    }
}
