//! Ensemble-average WEF/IOWEF of i-polar codes under uniform interleavers.
//!
//! Merging two length-`n` components `c1 Pi + c2 | c2` with a uniform `Pi`
//! maps a weight pair `(d1, d2)` to `d1 + 2 d2 - 2k` with probability
//! `C(d2,k) C(n-d2,d1-k) / C(n,d1)`, where `k` is the overlap. Since the
//! output weight is at least `max(d1, d2)`, dropping component terms above a
//! cap `D` never changes output terms at or below `D`.

use rayon::prelude::*;

use super::coeff::{BinomialTable, Coeff};
use super::poly::{accumulate, convolve, IOWeightPoly, WeightPoly};
use crate::code::CodeSpec;
use crate::error::{invalid, Error, Result};

/// Default bound on the number of (dense) terms an intermediate enumerator may hold.
pub const DEFAULT_TERM_BUDGET: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnsembleOptions {
    /// Keep only output weights `<= d_cap`.
    pub d_cap: Option<usize>,
    pub term_budget: usize,
}

impl Default for EnsembleOptions {
    fn default() -> Self {
        Self { d_cap: None, term_budget: DEFAULT_TERM_BUDGET }
    }
}

impl EnsembleOptions {
    pub fn capped(d_cap: usize) -> Self {
        Self { d_cap: Some(d_cap), ..Self::default() }
    }
}

/// Range of overlaps `k` for weights `d1`, `d2` in length `n`.
pub fn overlap_range(n: usize, d1: usize, d2: usize) -> std::ops::RangeInclusive<usize> {
    (d1 + d2).saturating_sub(n)..=d1.min(d2)
}

fn check_half_len(max_degree: usize, half_len: usize, what: &str) -> Result<()> {
    if max_degree > half_len {
        return Err(invalid!("{what} enumerator has degree {max_degree} > half length {half_len}"));
    }
    Ok(())
}

fn budget_error(terms: usize, budget: usize) -> Error {
    Error::ResourceLimit(format!(
        "enumerator would hold up to {terms} terms (budget {budget}); set a weight cap (d_cap) to bound it"
    ))
}

/// Smallest overlap keeping `d1 + 2 d2 - 2k <= cap`.
fn min_k_for_cap(d1: usize, d2: usize, cap: usize) -> usize {
    (d1 + 2 * d2).saturating_sub(cap).div_ceil(2)
}

/// Ensemble WEF of `C_upper Pi + C_lower | C_lower` for a uniform `Pi` of size `half_len`.
pub fn combine_wef<C: Coeff>(
    upper: &WeightPoly<C>,
    lower: &WeightPoly<C>,
    half_len: usize,
    d_cap: Option<usize>,
) -> Result<WeightPoly<C>> {
    combine_wef_with(upper, lower, half_len, d_cap, &C::Table::build(half_len))
}

fn combine_wef_with<C: Coeff>(
    upper: &WeightPoly<C>,
    lower: &WeightPoly<C>,
    n: usize,
    d_cap: Option<usize>,
    table: &C::Table,
) -> Result<WeightPoly<C>> {
    check_half_len(upper.max_degree(), n, "upper")?;
    check_half_len(lower.max_degree(), n, "lower")?;
    let cap = d_cap.unwrap_or(2 * n).min(2 * n);
    let mut out = vec![C::zero(); cap + 1];
    for (d1, a1) in upper.terms() {
        for (d2, a2) in lower.terms() {
            let range = overlap_range(n, d1, d2);
            let k_lo = (*range.start()).max(min_k_for_cap(d1, d2, cap));
            if k_lo > *range.end() {
                continue;
            }
            let a12 = a1.mul(a2);
            for k in k_lo..=*range.end() {
                let p = C::overlap_probability(table, n, d1, d2, k);
                out[d1 + 2 * d2 - 2 * k].add_assign(&a12.mul(&p));
            }
        }
    }
    WeightPoly::from_dense(2 * n, out)
}

/// Ensemble IOWEF of `C_upper Pi + C_lower | C_lower`; input weights add.
pub fn combine_iowef<C: Coeff>(
    upper: &IOWeightPoly<C>,
    lower: &IOWeightPoly<C>,
    half_len: usize,
    d_cap: Option<usize>,
) -> Result<IOWeightPoly<C>> {
    combine_iowef_with(upper, lower, half_len, d_cap, usize::MAX, &C::Table::build(half_len))
}

fn combine_iowef_with<C: Coeff>(
    upper: &IOWeightPoly<C>,
    lower: &IOWeightPoly<C>,
    n: usize,
    d_cap: Option<usize>,
    budget: usize,
    table: &C::Table,
) -> Result<IOWeightPoly<C>> {
    check_half_len(upper.output_max(), n, "upper")?;
    check_half_len(lower.output_max(), n, "lower")?;
    let cap = d_cap.unwrap_or(2 * n).min(2 * n);
    let d_bound = cap.min(upper.output_max() + 2 * lower.output_max());
    let w_bound = upper.input_max() + lower.input_max();
    let dense_terms = (d_bound + 1).saturating_mul(w_bound + 1);
    if dense_terms > budget {
        return Err(budget_error(dense_terms, budget));
    }
    let mut rows: Vec<Vec<C>> = vec![Vec::new(); d_bound + 1];
    for (d1, r1) in upper.rows().iter().enumerate() {
        if r1.is_empty() {
            continue;
        }
        for (d2, r2) in lower.rows().iter().enumerate() {
            if r2.is_empty() {
                continue;
            }
            let range = overlap_range(n, d1, d2);
            let k_lo = (*range.start()).max(min_k_for_cap(d1, d2, cap));
            if k_lo > *range.end() {
                continue;
            }
            let conv = convolve(r1, r2);
            for k in k_lo..=*range.end() {
                let p = C::overlap_probability(table, n, d1, d2, k);
                accumulate(&mut rows[d1 + 2 * d2 - 2 * k], &conv, Some(&p));
            }
        }
    }
    Ok(IOWeightPoly::from_rows(upper.input_len() + lower.input_len(), 2 * n, rows))
}

fn leaf_wef<C: Coeff>(unfrozen: bool) -> WeightPoly<C> {
    if unfrozen {
        WeightPoly::from_dense(1, vec![C::one(), C::one()]).expect("degree 1")
    } else {
        WeightPoly::one(1)
    }
}

fn leaf_iowef<C: Coeff>(unfrozen: bool) -> IOWeightPoly<C> {
    if unfrozen {
        IOWeightPoly::from_triples(1, 1, [(0, 0, C::one()), (1, 1, C::one())]).expect("in range")
    } else {
        IOWeightPoly::one(0, 1)
    }
}

fn fold_tree<T: Send + Sync>(
    leaves: Vec<T>,
    m_exp: usize,
    combine: impl Fn(&T, &T, usize) -> Result<T> + Sync,
) -> Result<T> {
    let mut level = leaves;
    for m in 1..=m_exp {
        let n = 1usize << (m - 1);
        level = level.par_chunks(2).map(|pair| combine(&pair[0], &pair[1], n)).collect::<Result<Vec<_>>>()?;
    }
    Ok(level.pop().expect("root"))
}

/// Ensemble-average WEF of the `(N, K, A)` i-polar ensemble.
pub fn ensemble_wef<C: Coeff>(spec: &CodeSpec, opts: EnsembleOptions) -> Result<WeightPoly<C>> {
    let n_total = spec.block_len();
    if opts.d_cap.is_none() && n_total + 1 > opts.term_budget {
        return Err(budget_error(n_total + 1, opts.term_budget));
    }
    let leaves = (0..n_total).map(|j| leaf_wef::<C>(!spec.is_frozen(j))).collect();
    let table = C::Table::build(n_total / 2);
    fold_tree(leaves, spec.m_exp(), |a, b, n| combine_wef_with(a, b, n, opts.d_cap, &table))
}

/// Ensemble-average IOWEF of the `(N, K, A)` i-polar ensemble.
pub fn ensemble_iowef<C: Coeff>(spec: &CodeSpec, opts: EnsembleOptions) -> Result<IOWeightPoly<C>> {
    let n_total = spec.block_len();
    let leaves = (0..n_total).map(|j| leaf_iowef::<C>(!spec.is_frozen(j))).collect();
    let table = C::Table::build(n_total / 2);
    fold_tree(leaves, spec.m_exp(), |a, b, n| combine_iowef_with(a, b, n, opts.d_cap, opts.term_budget, &table))
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;
    use crate::wef::coeff::Pascal;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn weight_passes_through_frozen_lower() {
        let upper = WeightPoly::from_dense(1, vec![q(1, 1), q(1, 1)]).unwrap();
        let out = combine_wef(&upper, &WeightPoly::one(1), 1, None).unwrap();
        assert_eq!(out.dense(), &[q(1, 1), q(1, 1)]);
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn weight_one_against_weight_one() {
        let y = WeightPoly::from_pairs(2, [(1, q(1, 1))]).unwrap();
        let out = combine_wef(&y, &y, 2, None).unwrap();
        assert_eq!(out.coeff(1), q(1, 2));
        assert_eq!(out.coeff(3), q(1, 2));
        assert_eq!(out.term_count(), 2);
    }

    #[test]
    fn iowef_leaf_pass_through() {
        let upper: IOWeightPoly<BigRational> = leaf_iowef(true);
        let out = combine_iowef(&upper, &IOWeightPoly::one(0, 1), 1, None).unwrap();
        assert_eq!(out.input_len(), 1);
        assert_eq!(out.coeff(0, 0), q(1, 1));
        assert_eq!(out.coeff(1, 1), q(1, 1));
        assert_eq!(out.term_count(), 2);
    }

    #[test]
    fn degree_guard() {
        let big = WeightPoly::from_pairs(4, [(3, 1.0)]).unwrap();
        assert!(combine_wef(&big, &WeightPoly::one(2), 2, None).is_err());
    }

    #[test]
    fn kernel_rows_sum_to_one() {
        let table = Pascal::build(64);
        for n in 1..=16usize {
            for d1 in 0..=n {
                for d2 in 0..=n {
                    let mut s = q(0, 1);
                    for k in overlap_range(n, d1, d2) {
                        s += <BigRational as Coeff>::overlap_probability(&table, n, d1, d2, k);
                    }
                    assert_eq!(s, q(1, 1), "n={n} d1={d1} d2={d2}");
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let spec = CodeSpec::full(6).unwrap();
        let opts = EnsembleOptions { d_cap: None, term_budget: 100 };
        assert!(matches!(ensemble_iowef::<f64>(&spec, opts), Err(Error::ResourceLimit(_))));
        assert!(ensemble_wef::<f64>(&spec, opts).is_ok());
        let opts = EnsembleOptions { d_cap: None, term_budget: 10 };
        assert!(matches!(ensemble_wef::<f64>(&spec, opts), Err(Error::ResourceLimit(_))));
    }
}
