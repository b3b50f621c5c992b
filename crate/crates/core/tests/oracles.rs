//! Library output against independent reference computations.

mod oracle;

use std::sync::Arc;

use polar_core::list::SclDecoder;
use polar_core::tree::MemoryTree;
use polar_core::{encode, encode_systematic, polar_transform, CodeConfig, Encoding, ReliabilitySequence, CRC24C};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bits(rng: &mut impl Rng, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.random_range(0..2)).collect()
}

#[test]
fn encode_matches_matrix_exhaustively_up_to_16() {
    for n in [1usize, 2, 4, 8, 16] {
        let rows = oracle::generator_rows(n);
        for x in 0u32..1 << n {
            let u: Vec<u8> = (0..n).map(|i| ((x >> i) & 1) as u8).collect();
            assert_eq!(encode(&u).unwrap(), oracle::matrix_encode(&rows, &u), "N={n} u={u:?}");
        }
    }
}

#[test]
fn encode_matches_matrix_at_1024() {
    let rows = oracle::generator_rows(1024);
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for _ in 0..10_000 {
        let u = bits(&mut rng, 1024);
        assert_eq!(encode(&u).unwrap(), oracle::matrix_encode(&rows, &u));
    }
}

#[test]
fn transform_is_an_involution_at_8() {
    for x in 0u32..256 {
        let u: Vec<u8> = (0..8).map(|i| ((x >> i) & 1) as u8).collect();
        let mut v = u.clone();
        polar_transform(&mut v);
        polar_transform(&mut v);
        assert_eq!(v, u);
    }
}

#[test]
fn systematic_property_at_8_for_every_k() {
    let seq = ReliabilitySequence::nr();
    let rows = oracle::generator_rows(8);
    for k in 1..=8 {
        let cfg = CodeConfig::build(8, k, None, &seq).unwrap();
        for x in 0u32..1 << k {
            let block: Vec<u8> = (0..k).map(|i| ((x >> i) & 1) as u8).collect();
            let c = encode_systematic(&cfg, &block).unwrap();
            assert_eq!(cfg.gather(&c), block, "K={k}");
            let mut u = c.clone();
            polar_transform(&mut u);
            assert!(cfg.frozen_set().iter().all(|&i| u[i] == 0), "K={k}: not a codeword");
            assert_eq!(oracle::matrix_encode(&rows, &u), c);
        }
    }
}

#[test]
fn crc_matches_long_division_and_self_checks() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..10_000 {
        let len = rng.random_range(1..600);
        let m = bits(&mut rng, len);
        let r = CRC24C.compute(&m);
        assert_eq!(r, oracle::crc_long_division(&m, 0xB2_B117, 24));
        let mut with = CRC24C.append(&m);
        assert!(CRC24C.check(&with));
        let flip = rng.random_range(0..with.len());
        with[flip] ^= 1;
        assert!(!CRC24C.check(&with));
    }
}

#[test]
fn repopulated_memory_matches_replay() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for log_len in [4usize, 6, 10] {
        let n = 1 << log_len;
        let mut tree = MemoryTree::new(log_len);
        for _ in 0..200 {
            let channel: Vec<f32> = (0..n).map(|_| rng.random_range(-4.0..5.0)).collect();
            let u = bits(&mut rng, n);
            let expected = oracle::leaf_llrs(&channel, &u);
            let pl = rng.random_range(0..n);
            tree.load_channel(&channel);
            tree.repopulate_beta(&u[..pl]);
            tree.calc_alpha_from_root(0, pl);
            assert_eq!(tree.alpha(0)[0], expected[pl], "N={n} PL={pl}");
            if pl > 0 {
                let mut full = MemoryTree::new(log_len);
                full.load_channel(&channel);
                full.repopulate_beta(&u);
                assert_eq!(full.root_beta(), encode(&u).unwrap());
            }
        }
    }
}

/// With `L ≥ 2^K` nothing is ever pruned, so SCL must return the message
/// with the smallest path metric.
#[test]
fn scl_finds_the_minimum_metric_codeword() {
    let seq = ReliabilitySequence::nr();
    let cfg = Arc::new(CodeConfig::build(16, 8, None, &seq).unwrap());
    let mut dec: SclDecoder = SclDecoder::new(cfg.clone(), 256, Encoding::NonSystematic);
    let words: Vec<Vec<u8>> = (0u32..256)
        .map(|x| cfg.place(&(0..8).map(|i| ((x >> i) & 1) as u8).collect::<Vec<_>>()).unwrap())
        .collect();
    let sigma = oracle::sigma(2.0, 0.5);
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for frame in 0..1000 {
        let sent = &words[rng.random_range(0..256)];
        let channel = oracle::awgn_llrs(&encode(sent).unwrap(), sigma, &mut rng);
        let (best, best_pm) = words
            .iter()
            .map(|u| (u, oracle::path_metric(&channel, u)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let out = dec.decode(&channel);
        assert_eq!(&out.estimate.u_hat, best, "frame {frame}");
        assert_eq!(out.pm, best_pm, "frame {frame}");
    }
}
