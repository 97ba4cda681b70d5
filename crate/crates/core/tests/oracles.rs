//! Checks against independently computed reference values.

use std::collections::BTreeMap;

use ipolar::bounds::{q_function, SnrAxis};
use ipolar::decode::{concat_decode, LlrVector, DEFAULT_COMBINATION_CAP};
use ipolar::design::j_function;
use ipolar::encode::Encoder;
use ipolar::outer::{bch_check, crc_check, crc_encode, AcceptAll, CrcSpec, GeneratorPoly, OuterCode, RejectAll, RraSpec};
use ipolar::scheme::{ConcatScheme, DecoderConfig, Scheme};
use ipolar::sim::{awgn_llr, run_bler, run_point, ChannelParams, StopRule};
use ipolar::wef::{ensemble_iowef, enumerate_wef_exhaustive, hamming_wef, rra_wef, EnsembleOptions, IOWeightPoly};
use ipolar::{BitWord, CodeSpec, IPolarCode, InterleaverSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Composite Simpson rule; `steps` must be even.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, steps: usize) -> f64 {
    let h = (b - a) / steps as f64;
    let inner: f64 = (1..steps).map(|i| f(a + h * i as f64) * if i % 2 == 1 { 4.0 } else { 2.0 }).sum();
    h / 3.0 * (inner + f(a) + f(b))
}

#[test]
fn j_function_against_plain_quadrature() {
    for sigma in [0.1, 0.5, 1.0, 2.0, 3.5, 6.0] {
        let mu = sigma * sigma / 2.0;
        let pdf = |y: f64| (-(y - mu).powi(2) / (2.0 * sigma * sigma)).exp() / (2.0 * std::f64::consts::PI * sigma * sigma).sqrt();
        let loss = simpson(|y| pdf(y) * (1.0 + (-y).exp()).log2(), mu - 14.0 * sigma, mu + 14.0 * sigma, 400_000);
        let j = j_function(sigma).unwrap();
        assert!((j - (1.0 - loss)).abs() < 1e-7, "sigma {sigma}: {j} vs {}", 1.0 - loss);
    }
}

#[test]
fn q_function_against_quadrature() {
    let tail = |x: f64| {
        simpson(|t| (-t * t / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt(), x, x + 40.0, 400_000)
    };
    for x in [0.0, 1.0, 3.0, 5.0] {
        let q = q_function(x);
        assert!((q - tail(x)).abs() <= 1e-10 * q.max(1e-12), "Q({x}) = {q}");
    }
    assert!((q_function(3.0) - 1.349_898_031_630_094_6e-3).abs() < 1e-15);
}

/// Remainder of `word * D^m` by `g` via schoolbook long division, bits
/// from the highest degree down.
fn long_division(word: &[u8], g: &[u8]) -> Vec<u8> {
    let m = g.len() - 1;
    let mut r: Vec<u8> = word.to_vec();
    r.extend(std::iter::repeat_n(0, m));
    for i in 0..word.len() {
        if r[i] == 1 {
            for (j, &c) in g.iter().enumerate() {
                r[i + j] ^= c;
            }
        }
    }
    r[word.len()..].to_vec()
}

#[test]
fn crc_parity_matches_long_division() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for spec in [CrcSpec::g8a(), CrcSpec::g8b()] {
        let g = spec.generator.coefficients();
        for len in [1, 7, 40, 114, 300] {
            let msg = BitWord::random(len, &mut rng);
            let cw = crc_encode(&msg, &spec);
            assert_eq!(&cw[..len], &msg[..]);
            assert_eq!(cw[len..].to_vec(), long_division(&msg, &g));
            assert!(crc_check(&cw, &spec).unwrap());
        }
    }
}

#[test]
fn degree_four_crc_exhaustive() {
    let spec = CrcSpec::new(GeneratorPoly::from_degrees(&[4, 1, 0]).unwrap());
    let g = spec.generator.coefficients();
    let mut accepted = 0;
    for v in 0u32..1 << 12 {
        let word: Vec<u8> = (0..12).map(|i| ((v >> (11 - i)) & 1) as u8).collect();
        // The word is a codeword iff dividing it (without the D^m shift) leaves no remainder.
        let mut r = word.clone();
        for i in 0..8 {
            if r[i] == 1 {
                for (j, &c) in g.iter().enumerate() {
                    r[i + j] ^= c;
                }
            }
        }
        let divisible = r.iter().all(|&b| b == 0);
        assert_eq!(crc_check(&word, &spec).unwrap(), divisible, "word {v:012b}");
        accepted += divisible as u32;
    }
    assert_eq!(accepted, 1 << 8);
}

#[test]
fn bch_m3_is_hamming_7_4() {
    let code = OuterCode::bch(3).unwrap();
    assert_eq!((code.length(), code.dimension()), (7, 4));
    let wef = enumerate_wef_exhaustive::<BigRational>(&code).unwrap();
    assert_eq!(wef, hamming_wef::<BigRational>(3).unwrap());
    let expected: Vec<(usize, i64)> = vec![(0, 1), (3, 7), (4, 7), (7, 1)];
    let got: Vec<(usize, i64)> = wef.terms().map(|(d, c)| (d, c.to_integer().try_into().unwrap())).collect();
    assert_eq!(got, expected);
}

#[test]
fn bch_255_has_minimum_distance_three() {
    let n = 255;
    let word = |ones: &[usize]| {
        let mut w = vec![0u8; n];
        ones.iter().for_each(|&i| w[i] = 1);
        w
    };
    for a in 1..n {
        assert!(!bch_check(&word(&[0, a]), 8).unwrap());
    }
    assert!(!bch_check(&word(&[0]), 8).unwrap());
    let mut through_zero = 0;
    for a in 1..n {
        for b in a + 1..n {
            through_zero += bch_check(&word(&[0, a, b]), 8).unwrap() as usize;
        }
    }
    let wef = hamming_wef::<BigRational>(8).unwrap();
    let a3 = wef.coeff(3).to_integer();
    assert_eq!(a3, BigInt::from(n * (n - 1) / 6));
    // Each weight-3 word has three positions, so 3 * A_3 / n of them contain position 0.
    assert_eq!(BigInt::from(through_zero * n), a3 * 3);
    assert_eq!(wef.mass(), BigRational::from_integer(BigInt::from(1) << 247));
}

#[test]
fn rra_realizations_average_to_the_ensemble() {
    let (k, dv, m) = (8, 3, 4);
    let draws = 3000;
    let n = k + m;
    let mut sum = vec![0.0; n + 1];
    let mut sq = vec![0.0; n + 1];
    for seed in 0..draws {
        let code = OuterCode::Rra(RraSpec::seeded(k, dv, m, seed).unwrap());
        assert_eq!(code.length(), n);
        let wef = enumerate_wef_exhaustive::<f64>(&code).unwrap();
        for d in 0..=n {
            sum[d] += wef.coeff(d);
            sq[d] += wef.coeff(d) * wef.coeff(d);
        }
    }
    let ens = rra_wef::<f64>(k, dv, m).unwrap();
    for d in 0..=n {
        let mean = sum[d] / draws as f64;
        let sd = ((sq[d] / draws as f64 - mean * mean).max(0.0) / draws as f64).sqrt();
        assert!((mean - ens.coeff(d)).abs() <= 3.0 * sd + 1e-9, "d = {d}: sample {mean} vs ensemble {}", ens.coeff(d));
    }
}

#[test]
fn awgn_llr_moments() {
    let params = ChannelParams::from_es_n0_db(1.0).unwrap();
    let rho = params.es_over_n0();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let llr = awgn_llr(&vec![0u8; 400_000], params, &mut rng);
    let n = llr.len() as f64;
    let mean = llr.iter().sum::<f64>() / n;
    let var = llr.iter().map(|l| (l - mean).powi(2)).sum::<f64>() / n;
    // Consistent Gaussian LLR: mean 4 Es/N0, variance 8 Es/N0.
    assert!((mean / (4.0 * rho) - 1.0).abs() < 0.01, "mean {mean}");
    assert!((var / (8.0 * rho) - 1.0).abs() < 0.01, "variance {var}");
    let ones = awgn_llr(&[1u8; 1000], params, &mut rng);
    assert!(ones.iter().sum::<f64>() < 0.0);
}

#[test]
fn uncoded_error_rate_is_q_function() {
    let stop = StopRule { min_errors: 4000, max_trials: 10_000_000 };
    for (db, seed) in [(0.0, 1), (4.0, 2)] {
        let r = &run_bler(&Scheme::Uncoded, &DecoderConfig::default(), SnrAxis::EsN0, &[db], stop, seed).unwrap()[0];
        let p = q_function((2.0 * 10f64.powf(db / 10.0)).sqrt());
        assert!(r.ci95.0 <= p && p <= r.ci95.1, "{db} dB: {:?} vs {p}", r.ci95);
    }
}

#[test]
fn seeded_runs_are_reproducible_and_thread_independent() {
    let spec = CodeSpec::new(4, [7, 11, 12, 13, 14, 15]).unwrap();
    let scheme = Scheme::IPolar(IPolarCode::sampled(spec, 2));
    let params = ChannelParams::from_es_n0_db(0.0).unwrap();
    let stop = StopRule { min_errors: 50, max_trials: 5000 };
    let run = |threads: usize, seed: u64| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| run_point(&scheme, &DecoderConfig::default(), params, stop, seed, 0).unwrap())
    };
    let a = run(1, 4);
    assert_eq!(a, run(3, 4));
    assert_eq!(a, run(1, 4));
    assert_ne!(a, run(1, 5));
}

#[test]
fn concat_detector_fallback() {
    let spec = CodeSpec::new(4, [7, 9, 10, 11, 12, 13, 14]).unwrap();
    let scheme = ConcatScheme::seeded(OuterCode::bch(3).unwrap(), 2, Some(1), &spec, 2, 5).unwrap();
    let params = ChannelParams::from_es_n0_db(-1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let msg = BitWord::random(8, &mut rng);
        let cw = Scheme::Concatenated(scheme.clone()).encode(&msg).unwrap();
        let llr = awgn_llr(&cw, params, &mut rng);
        let blocks: Vec<LlrVector> = llr.chunks(16).map(|c| LlrVector::new(c.to_vec()).unwrap()).collect();
        let perm = scheme.outer_perm.as_deref();
        let accept = concat_decode(&blocks, &scheme.inner, 4, perm, &AcceptAll, DEFAULT_COMBINATION_CAP).unwrap();
        let reject = concat_decode(&blocks, &scheme.inner, 4, perm, &RejectAll, DEFAULT_COMBINATION_CAP).unwrap();
        assert!(accept.detected && !reject.detected);
        assert_eq!(accept.visited, 1);
        assert_eq!(reject.visited, 16);
        assert_eq!(accept.inner_codeword, reject.inner_codeword);
        assert_eq!(accept.outer_word, reject.outer_word);
        let capped = concat_decode(&blocks, &scheme.inner, 4, perm, &RejectAll, 5).unwrap();
        assert_eq!(capped.visited, 5);
        let real = concat_decode(&blocks, &scheme.inner, 4, perm, &scheme, DEFAULT_COMBINATION_CAP).unwrap();
        assert!(real.metric >= accept.metric);
        if real.detected {
            assert!(ipolar::outer::Detector::check(&scheme, &real.outer_word));
        }
    }
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in all_perms(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Exact input-output enumerator of one realization.
fn realization_iowef(code: &IPolarCode) -> Vec<Vec<u64>> {
    let (k, n) = (code.dimension(), code.length());
    let mut t = vec![vec![0u64; n + 1]; k + 1];
    for v in 0u32..1 << k {
        let msg = BitWord::from_bits((0..k).map(|i| ((v >> i) & 1) as u8).collect()).unwrap();
        t[msg.weight()][code.encode(&msg).unwrap().weight()] += 1;
    }
    t
}

#[test]
fn ensemble_iowef_is_the_average_over_every_realization() {
    let spec = CodeSpec::new(3, [3, 5, 6, 7]).unwrap();
    let (p2, p4) = (all_perms(2), all_perms(4));
    let mut total = vec![vec![0u64; 9]; 5];
    let mut count = 0u64;
    for a in &p2 {
        for b in &p2 {
            for c in &p4 {
                let perms = BTreeMap::from([((1, 0), a.clone()), ((1, 1), b.clone()), ((2, 0), c.clone())]);
                let code = IPolarCode::new(spec.clone(), InterleaverSet::from_perms(3, perms).unwrap()).unwrap();
                for (row, add) in total.iter_mut().zip(realization_iowef(&code)) {
                    row.iter_mut().zip(add).for_each(|(x, y)| *x += y);
                }
                count += 1;
            }
        }
    }
    assert_eq!(count, 96);
    let average = IOWeightPoly::from_triples(
        4,
        8,
        total.iter().enumerate().flat_map(|(w, row)| {
            row.iter().enumerate().map(move |(d, &c)| (w, d, BigRational::new(c.into(), count.into())))
        }),
    )
    .unwrap();
    let ensemble = ensemble_iowef::<BigRational>(&spec, EnsembleOptions::default()).unwrap();
    for w in 0..=4 {
        for d in 0..=8 {
            assert_eq!(ensemble.coeff(w, d), average.coeff(w, d), "(w, d) = ({w}, {d})");
        }
    }
    assert!(!ensemble.coeff(1, 2).is_zero() || !ensemble.coeff(1, 4).is_zero());
    assert!(ensemble.coeff(0, 0).to_f64().unwrap() == 1.0);
}

#[test]
fn random_interleavers_change_the_code() {
    let spec = CodeSpec::new(4, [7, 11, 12, 13, 14, 15]).unwrap();
    let polar = IPolarCode::polar(spec.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let differs = (0..20).any(|_| {
        let code = IPolarCode::sampled(spec.clone(), rng.random());
        realization_iowef(&code) != realization_iowef(&polar)
    });
    assert!(differs);
}
