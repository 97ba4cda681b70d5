use ipolar::decode::{discrepancy, LlrVector};
use ipolar::encode::{ipolar_encode, polar_encode, Encoder};
use ipolar::interleaver::{permute, seeded_permutation, unpermute};
use ipolar::wef::csv::{read_iowef_csv, read_wef_csv, write_iowef_csv, write_wef_csv};
use ipolar::wef::{ensemble_iowef, ensemble_wef, EnsembleOptions, IOWeightPoly, WeightPoly};
use ipolar::{BitWord, CodeSpec, IPolarCode, InterleaverSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// A code spec with `m_exp` in 1..=6 and a random nonempty unfrozen set.
fn spec_strategy() -> impl Strategy<Value = CodeSpec> {
    (1usize..=6).prop_flat_map(|m| {
        proptest::collection::btree_set(0..(1usize << m), 1..=(1usize << m))
            .prop_map(move |set| CodeSpec::new(m, set).unwrap())
    })
}

fn xor(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

fn message(k: usize, bits: &[bool]) -> BitWord {
    BitWord::from_bits((0..k).map(|i| bits[i % bits.len()] as u8).collect()).unwrap()
}

proptest! {
    #[test]
    fn encoder_is_linear(spec in spec_strategy(), seed: u64, a in proptest::collection::vec(any::<bool>(), 64), b in proptest::collection::vec(any::<bool>(), 64)) {
        let code = IPolarCode::sampled(spec.clone(), seed);
        let (ma, mb) = (message(spec.dimension(), &a), message(spec.dimension(), &b[1..]));
        let sum = BitWord::from_bits(xor(&ma, &mb)).unwrap();
        let lhs = code.encode(&sum).unwrap();
        let rhs = xor(&code.encode(&ma).unwrap(), &code.encode(&mb).unwrap());
        prop_assert_eq!(lhs.to_vec(), rhs);
    }

    #[test]
    fn nonzero_messages_give_nonzero_codewords(spec in spec_strategy(), seed: u64, a in proptest::collection::vec(any::<bool>(), 64)) {
        let code = IPolarCode::sampled(spec.clone(), seed);
        let msg = message(spec.dimension(), &a);
        prop_assume!(msg.weight() > 0);
        prop_assert!(code.encode(&msg).unwrap().weight() > 0);
    }

    #[test]
    fn identity_interleavers_give_polar(spec in spec_strategy(), a in proptest::collection::vec(any::<bool>(), 64)) {
        let msg = message(spec.dimension(), &a);
        let ils = InterleaverSet::identity(spec.m_exp());
        prop_assert_eq!(ipolar_encode(&msg, &spec, &ils).unwrap(), polar_encode(&msg, &spec).unwrap());
    }

    /// `x_j` is the XOR of every `u_i` whose index bits contain those of `j`,
    /// which is the Kronecker power of `[[1,0],[1,1]]` written out.
    #[test]
    fn polar_matches_kronecker_power(m in 1usize..=8, a in proptest::collection::vec(any::<bool>(), 256)) {
        let spec = CodeSpec::full(m).unwrap();
        let n = 1usize << m;
        let u: Vec<u8> = a[..n].iter().map(|&b| b as u8).collect();
        let x = polar_encode(&BitWord::from_bits(u.clone()).unwrap(), &spec).unwrap();
        for j in 0..n {
            let bit = (0..n).filter(|&i| j & !i == 0).fold(0, |acc, i| acc ^ u[i]);
            prop_assert_eq!(x[j], bit);
        }
    }

    #[test]
    fn permute_round_trip(n in 1usize..200, seed: u64) {
        let p = seeded_permutation(n, seed);
        let x: Vec<usize> = (0..n).map(|i| i * 7 + 1).collect();
        prop_assert_eq!(unpermute(&permute(&x, &p), &p), x);
    }

    #[test]
    fn discrepancy_is_zero_only_at_hard_decision(llr in proptest::collection::vec(-5.0f64..5.0, 1..40)) {
        let hard: Vec<u8> = llr.iter().map(|&l| (l < 0.0) as u8).collect();
        prop_assert_eq!(discrepancy(&hard, &llr), 0.0);
        let mut flipped = hard.clone();
        flipped[0] ^= 1;
        prop_assert!((discrepancy(&flipped, &llr) - llr[0].abs()).abs() < 1e-12);
    }

    #[test]
    fn llr_vectors_reject_nan(mut llr in proptest::collection::vec(-50.0f64..50.0, 1..10)) {
        prop_assert!(LlrVector::new(llr.clone()).is_ok());
        llr[0] = f64::NAN;
        prop_assert!(LlrVector::new(llr).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ensemble_mass_and_marginal(spec in spec_strategy()) {
        let k = spec.dimension();
        let two_k = BigRational::from_integer(BigInt::from(1) << k);
        let wef = ensemble_wef::<BigRational>(&spec, EnsembleOptions::default()).unwrap();
        let io = ensemble_iowef::<BigRational>(&spec, EnsembleOptions::default()).unwrap();
        prop_assert_eq!(wef.mass(), two_k.clone());
        prop_assert_eq!(io.mass(), two_k);
        prop_assert_eq!(io.marginal(), wef.clone());
        prop_assert_eq!(io.input_len(), k);
        let float = ensemble_wef::<f64>(&spec, EnsembleOptions::default()).unwrap();
        for (d, c) in wef.terms() {
            let exact = num_traits::ToPrimitive::to_f64(c).unwrap();
            prop_assert!((float.coeff(d) - exact).abs() <= 1e-9 * exact.max(1.0));
        }
    }

    #[test]
    fn csv_round_trip(len in 1usize..40, coeffs in proptest::collection::vec((0u32..1000, 1u32..50), 1..40)) {
        let pairs: Vec<(usize, BigRational)> = coeffs.iter().enumerate()
            .filter(|(d, _)| *d <= len)
            .map(|(d, &(a, b))| (d, BigRational::new(a.into(), b.into())))
            .collect();
        let poly = WeightPoly::from_pairs(len, pairs.clone()).unwrap();
        let (back, meta) = read_wef_csv::<BigRational>(&write_wef_csv(&poly, &[("k".into(), "3".into())])).unwrap();
        prop_assert_eq!(&back, &poly);
        prop_assert!(meta.iter().any(|(k, v)| k == "k" && v == "3"));
        let io = IOWeightPoly::from_triples(len, len, pairs.iter().map(|(d, c)| (*d, *d, c.clone()))).unwrap();
        let (io_back, _) = read_iowef_csv::<BigRational>(&write_iowef_csv(&io, &[])).unwrap();
        prop_assert_eq!(io_back, io);
    }
}
