//! Block-error-rate upper bounds over the BI-AWGN channel computed from a
//! weight enumerator.
//!
//! Pairwise error probabilities use `Q(sqrt(2 d rho))` with `rho = Es/N0`
//! (linear), the usual BPSK convention.

use serde::{Deserialize, Serialize};

use crate::design::{db_to_linear, linear_to_db};
use crate::error::{invalid, Result};
use crate::wef::{Coeff, WeightPoly};

/// Gaussian tail probability.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// One operating point. `rho` is linear Es/N0; `rate` is kept so that
/// Eb/N0 can be reported alongside.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnrPoint {
    pub rho: f64,
    pub rate: f64,
}

impl SnrPoint {
    pub fn from_rho(rho: f64, rate: f64) -> Result<Self> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(invalid!("rho must be positive and finite, got {rho}"));
        }
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(invalid!("rate must be in (0, 1], got {rate}"));
        }
        Ok(Self { rho, rate })
    }

    pub fn from_es_n0_db(db: f64, rate: f64) -> Result<Self> {
        Self::from_rho(db_to_linear(db), rate)
    }

    /// `Es/N0 = R * Eb/N0`.
    pub fn from_eb_n0_db(db: f64, rate: f64) -> Result<Self> {
        Self::from_rho(db_to_linear(db) * rate, rate)
    }

    pub fn es_over_n0_db(&self) -> f64 {
        linear_to_db(self.rho)
    }

    pub fn eb_over_n0_db(&self) -> f64 {
        linear_to_db(self.rho / self.rate)
    }
}

/// `sum_{d>0} A_d Q(sqrt(2 d rho))`. Not clamped to 1.
pub fn union_bound<C: Coeff>(wef: &WeightPoly<C>, point: SnrPoint) -> f64 {
    wef.terms()
        .filter(|&(d, _)| d > 0)
        .map(|(d, a)| a.to_f64() * pairwise(d, point.rho))
        .sum()
}

fn pairwise(d: usize, rho: f64) -> f64 {
    q_function((2.0 * d as f64 * rho).sqrt())
}

/// Which side of a simple-bound term was used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// `E = (1/2) ln(1 - 2 c0 f) + rho f / (1 + f)`, valid inside the interval.
    Tangential,
    /// `E = -r + delta rho`, outside the interval.
    Chernoff,
    /// `delta (1 - delta) = 0`: only the union term is evaluated.
    Degenerate,
}

/// Audit record for one weight of the simple bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimpleTerm {
    pub d: usize,
    pub a_d: f64,
    pub branch: Branch,
    pub exponent: f64,
    pub exponential: f64,
    pub union: f64,
    /// `min(exponential, union)`.
    pub value: f64,
}

/// Per-weight terms of the simple bound for `d = d_min ..= n - k + 1`,
/// skipping zero coefficients.
pub fn simple_bound_terms<C: Coeff>(
    wef: &WeightPoly<C>,
    point: SnrPoint,
    n: usize,
    k: usize,
) -> Result<Vec<SimpleTerm>> {
    if n == 0 || k == 0 || k > n {
        return Err(invalid!("need 0 < k <= n, got n = {n}, k = {k}"));
    }
    let rho = point.rho;
    let nf = n as f64;
    let top = n - k + 1;
    let mut out = Vec::new();
    for (d, a) in wef.terms() {
        if d == 0 || d > top {
            continue;
        }
        let a_d = a.to_f64();
        if a_d <= 0.0 {
            continue;
        }
        let union = a_d * pairwise(d, rho);
        let delta = d as f64 / nf;
        if delta * (1.0 - delta) == 0.0 {
            out.push(SimpleTerm {
                d,
                a_d,
                branch: Branch::Degenerate,
                exponent: f64::NAN,
                exponential: f64::INFINITY,
                union,
                value: union,
            });
            continue;
        }
        let r = a_d.ln() / nf;
        let c0 = -(-2.0 * r).exp_m1() * (1.0 - delta) / (2.0 * delta);
        let upper = (2.0 * r).exp_m1() / (2.0 * delta * (1.0 - delta));
        let (branch, exponent) = if c0 < rho && rho < upper {
            let f = (rho / c0 + 2.0 * rho + rho * rho).sqrt() - rho - 1.0;
            let e = 0.5 * (1.0 - 2.0 * c0 * f).ln() + rho * f / (1.0 + f);
            (Branch::Tangential, e)
        } else {
            (Branch::Chernoff, -r + delta * rho)
        };
        let exponential = (-nf * exponent).exp();
        out.push(SimpleTerm { d, a_d, branch, exponent, exponential, union, value: exponential.min(union) });
    }
    Ok(out)
}

/// Simple (tangential-sphere style) bound: termwise minimum of the
/// exponential bound and the union term, summed for `d <= n - k + 1`.
pub fn simple_bound<C: Coeff>(wef: &WeightPoly<C>, point: SnrPoint, n: usize, k: usize) -> Result<f64> {
    Ok(simple_bound_terms(wef, point, n, k)?.iter().map(|t| t.value).sum())
}

/// One row of a bound sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub snr_db: f64,
    pub union: f64,
    pub simple: f64,
}

/// Whether a dB grid is Eb/N0 or Es/N0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SnrAxis {
    EbN0,
    EsN0,
}

impl std::str::FromStr for SnrAxis {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['/', '_', '-'], "").as_str() {
            "ebn0" | "eb" => Ok(SnrAxis::EbN0),
            "esn0" | "es" => Ok(SnrAxis::EsN0),
            _ => Err(invalid!("unknown SNR axis {s:?} (expected ebn0 or esn0)")),
        }
    }
}

impl SnrAxis {
    pub fn point(self, db: f64, rate: f64) -> Result<SnrPoint> {
        match self {
            SnrAxis::EbN0 => SnrPoint::from_eb_n0_db(db, rate),
            SnrAxis::EsN0 => SnrPoint::from_es_n0_db(db, rate),
        }
    }
}

/// Evaluates both bounds over a dB grid for an `(n, k)` code.
pub fn bound_sweep<C: Coeff>(
    wef: &WeightPoly<C>,
    n: usize,
    k: usize,
    axis: SnrAxis,
    grid_db: &[f64],
) -> Result<Vec<BoundRow>> {
    let rate = k as f64 / n as f64;
    grid_db
        .iter()
        .map(|&db| {
            let p = axis.point(db, rate)?;
            Ok(BoundRow { snr_db: db, union: union_bound(wef, p), simple: simple_bound(wef, p, n, k)? })
        })
        .collect()
}
