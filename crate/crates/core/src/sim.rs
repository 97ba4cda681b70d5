//! Monte Carlo block-error-rate estimation over the BI-AWGN channel.
//!
//! Every trial draws its randomness from a ChaCha8 stream keyed by
//! `(seed, snr_index, trial_index)`, and trials run in fixed-size batches,
//! so counts do not depend on the number of worker threads.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::BitWord;
use crate::bounds::SnrAxis;
use crate::code::CodeSpec;
use crate::decode::LlrVector;
use crate::design::{db_to_linear, linear_to_db, select_unfrozen};
use crate::encode::IPolarCode;
use crate::error::{invalid, Result};
use crate::interleaver::InterleaverSet;
use crate::outer::OuterCode;
use crate::scheme::{ConcatScheme, DecoderConfig, Scheme};

/// Symbol energy and noise spectral density; the noise variance per real
/// dimension is `n0 / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    pub es: f64,
    pub n0: f64,
}

impl ChannelParams {
    pub fn new(es: f64, n0: f64) -> Result<Self> {
        if !(es > 0.0 && n0 > 0.0 && es.is_finite() && n0.is_finite()) {
            return Err(invalid!("Es and N0 must be positive and finite"));
        }
        Ok(Self { es, n0 })
    }

    /// Unit symbol energy at the given Es/N0 in dB.
    pub fn from_es_n0_db(db: f64) -> Result<Self> {
        Self::new(1.0, 1.0 / db_to_linear(db))
    }

    pub fn es_over_n0(&self) -> f64 {
        self.es / self.n0
    }

    /// `4 sqrt(Es) / N0`.
    pub fn llr_scale(&self) -> f64 {
        4.0 * self.es.sqrt() / self.n0
    }
}

/// `y_i = sqrt(Es)(1 - 2 c_i) + w_i`, returned as `LLR_i = 4 sqrt(Es) y_i / N0`.
pub fn awgn_llr<R: Rng + ?Sized>(codeword: &[u8], params: ChannelParams, rng: &mut R) -> LlrVector {
    let amp = params.es.sqrt();
    let sigma = (params.n0 / 2.0).sqrt();
    let scale = params.llr_scale();
    let values = codeword
        .iter()
        .map(|&c| {
            let w: f64 = rng.sample(StandardNormal);
            let y = amp * (1.0 - 2.0 * c as f64) + sigma * w;
            scale * y
        })
        .collect();
    LlrVector::new(values).expect("Gaussian samples are finite")
}

/// Stop after `min_errors` block errors or `max_trials` trials.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StopRule {
    #[serde(default = "default_min_errors")]
    pub min_errors: u64,
    #[serde(default = "default_max_trials")]
    pub max_trials: u64,
}

fn default_min_errors() -> u64 {
    100
}

fn default_max_trials() -> u64 {
    10_000_000
}

impl Default for StopRule {
    fn default() -> Self {
        Self { min_errors: default_min_errors(), max_trials: default_max_trials() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlerEstimate {
    pub snr_db: f64,
    pub es_over_n0_db: f64,
    pub trials: u64,
    pub block_errors: u64,
    pub ml_lb_events: u64,
    pub bler: f64,
    pub ml_lb: f64,
    pub ci95: (f64, f64),
}

/// Wilson score interval at 95 % confidence.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    const Z: f64 = 1.959_963_984_540_054;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

fn trial_seed(seed: u64, snr_index: u64, trial: u64) -> u64 {
    let mut x = seed ^ 0x9e37_79b9_7f4a_7c15;
    for v in [snr_index, trial] {
        x = splitmix(x ^ splitmix(v));
    }
    x
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Outcome of one trial: `(block error, ML lower-bound event)`.
pub fn run_trial(
    scheme: &Scheme,
    decoder: &DecoderConfig,
    params: ChannelParams,
    seed: u64,
    snr_index: u64,
    trial: u64,
) -> Result<(bool, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, snr_index, trial));
    let msg = BitWord::random(scheme.dimension(), &mut rng);
    let cw = scheme.encode(&msg)?;
    let llr = awgn_llr(&cw, params, &mut rng);
    let d = scheme.decode(&llr, decoder)?;
    let error = d.message != msg;
    Ok((error, error && scheme.ml_lower_bound_event(&d, &cw, &llr)))
}

fn batch_size(done: u64) -> u64 {
    (done / 4).next_power_of_two().clamp(256, 65_536)
}

/// Estimates the block error rate at one operating point.
pub fn run_point(
    scheme: &Scheme,
    decoder: &DecoderConfig,
    params: ChannelParams,
    stop: StopRule,
    seed: u64,
    snr_index: u64,
) -> Result<(u64, u64, u64)> {
    let (mut trials, mut errors, mut ml) = (0u64, 0u64, 0u64);
    while trials < stop.max_trials && errors < stop.min_errors {
        let size = batch_size(trials).min(stop.max_trials - trials);
        let (e, m) = (trials..trials + size)
            .into_par_iter()
            .map(|t| run_trial(scheme, decoder, params, seed, snr_index, t).map(|(e, m)| (e as u64, m as u64)))
            .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
        trials += size;
        errors += e;
        ml += m;
    }
    Ok((trials, errors, ml))
}

/// Simulates every point of a dB grid.
pub fn run_bler(
    scheme: &Scheme,
    decoder: &DecoderConfig,
    axis: SnrAxis,
    grid_db: &[f64],
    stop: StopRule,
    seed: u64,
) -> Result<Vec<BlerEstimate>> {
    if stop.max_trials == 0 {
        return Err(invalid!("max_trials must be positive"));
    }
    grid_db
        .iter()
        .enumerate()
        .map(|(i, &db)| {
            let es_n0 = match axis {
                SnrAxis::EsN0 => db_to_linear(db),
                SnrAxis::EbN0 => db_to_linear(db) * scheme.rate(),
            };
            let params = ChannelParams::new(1.0, 1.0 / es_n0)?;
            let (trials, errors, ml) = run_point(scheme, decoder, params, stop, seed, i as u64)?;
            Ok(BlerEstimate {
                snr_db: db,
                es_over_n0_db: linear_to_db(es_n0),
                trials,
                block_errors: errors,
                ml_lb_events: ml,
                bler: errors as f64 / trials as f64,
                ml_lb: ml as f64 / trials as f64,
                ci95: wilson_interval(errors, trials),
            })
        })
        .collect()
}

/// CSV rendering of simulation results.
pub fn estimates_to_csv(rows: &[BlerEstimate]) -> String {
    let mut out = String::from("snr_db,es_n0_db,trials,errors,ml_lb_events,bler,ml_lb,ci_low,ci_high\n");
    for r in rows {
        out.push_str(&format!(
            "{},{:.6},{},{},{},{:.6e},{:.6e},{:.6e},{:.6e}\n",
            r.snr_db, r.es_over_n0_db, r.trials, r.block_errors, r.ml_lb_events, r.bler, r.ml_lb, r.ci95.0, r.ci95.1
        ));
    }
    out
}

/// Where a code spec comes from in a scenario file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecSource {
    File { file: PathBuf },
    Design { design: DesignRequest },
    Inline(CodeSpec),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DesignRequest {
    pub n: usize,
    pub k: usize,
    pub es_over_n0_db: f64,
}

/// Where an interleaver set comes from in a scenario file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InterleaverSource {
    Identity(IdentityTag),
    Seed { seed: u64 },
    File { file: PathBuf },
    Inline(InterleaverSet),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityTag {
    Identity,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SchemeConfig {
    Uncoded,
    Ipolar {
        spec: SpecSource,
        #[serde(default = "identity_source")]
        interleavers: InterleaverSource,
    },
    Concatenated {
        outer: OuterCode,
        p: usize,
        #[serde(default)]
        outer_perm_seed: Option<u64>,
        inner_spec: SpecSource,
        q: usize,
        /// Block `i` uses interleavers sampled with `inner_seed + i`.
        inner_seed: u64,
    },
}

fn identity_source() -> InterleaverSource {
    InterleaverSource::Identity(IdentityTag::Identity)
}

/// Scenario document for [`run_scenario`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub scheme: SchemeConfig,
    #[serde(default)]
    pub decoder: DecoderConfig,
    #[serde(default = "default_axis")]
    pub axis: SnrAxis,
    pub snr_db: Vec<f64>,
    #[serde(default)]
    pub stop: StopRule,
    #[serde(default)]
    pub seed: u64,
}

fn default_axis() -> SnrAxis {
    SnrAxis::EbN0
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

impl SpecSource {
    pub fn load(&self, base: &Path) -> Result<CodeSpec> {
        match self {
            SpecSource::File { file } => Ok(serde_json::from_str(&std::fs::read_to_string(resolve(base, file))?)?),
            SpecSource::Design { design } => {
                if !design.n.is_power_of_two() || design.n < 2 {
                    return Err(invalid!("N = {} is not a power of two >= 2", design.n));
                }
                let m = design.n.trailing_zeros() as usize;
                Ok(select_unfrozen(m, design.k, db_to_linear(design.es_over_n0_db))?)
            }
            SpecSource::Inline(s) => Ok(s.clone()),
        }
    }
}

impl InterleaverSource {
    pub fn load(&self, base: &Path, m_exp: usize) -> Result<InterleaverSet> {
        let set = match self {
            InterleaverSource::Identity(_) => InterleaverSet::identity(m_exp),
            InterleaverSource::Seed { seed } => InterleaverSet::sample(m_exp, *seed),
            InterleaverSource::File { file } => InterleaverSet::load(resolve(base, file))?,
            InterleaverSource::Inline(s) => s.clone(),
        };
        set.ensure_compatible(m_exp)?;
        Ok(set)
    }
}

impl SchemeConfig {
    /// Builds the scheme; relative file paths resolve against `base`.
    pub fn build(&self, base: &Path) -> Result<Scheme> {
        match self {
            SchemeConfig::Uncoded => Ok(Scheme::Uncoded),
            SchemeConfig::Ipolar { spec, interleavers } => {
                let spec = spec.load(base)?;
                let ils = interleavers.load(base, spec.m_exp())?;
                Ok(Scheme::IPolar(IPolarCode::new(spec, ils)?))
            }
            SchemeConfig::Concatenated { outer, p, outer_perm_seed, inner_spec, q, inner_seed } => {
                let spec = inner_spec.load(base)?;
                Ok(Scheme::Concatenated(ConcatScheme::seeded(outer.clone(), *p, *outer_perm_seed, &spec, *q, *inner_seed)?))
            }
        }
    }
}

/// Runs a scenario document.
pub fn run_scenario(cfg: &ScenarioConfig, base: &Path) -> Result<(Scheme, Vec<BlerEstimate>)> {
    let scheme = cfg.scheme.build(base)?;
    let rows = run_bler(&scheme, &cfg.decoder, cfg.axis, &cfg.snr_db, cfg.stop, cfg.seed)?;
    Ok((scheme, rows))
}
