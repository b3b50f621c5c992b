//! Pairwise decoder-equivalence suites over a fixed random corpus.
//!
//! Each suite decodes the same noisy frames with two decoders that must agree
//! exactly and reports the first frame where they do not.

use std::fmt;
use std::sync::Arc;

use polar_core::fssc::FsscDecoder;
use polar_core::list::{FssclDecoder, SclDecoder};
use polar_core::sc::ScDecoder;
use polar_core::stack::{ScsDecoder, ScsRmDecoder};
use polar_core::{CodeConfig, Crc, Encoding, FullCopyStore, LazyMemoryPool, ReliabilitySequence, Schedule, CRC24C};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{ebno_to_sigma, transmit};
use crate::harness::splitmix;

pub const SNRS_DB: [f64; 3] = [0.0, 1.5, 3.0];
const LIST_SIZE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// SCS-RM against SCS: estimate, metric and counters.
    ScsRm,
    /// FSSC against SC.
    Fssc,
    /// SCL with one path against SC.
    Scl1,
    /// SCS with one extension per length against SC.
    Scs1,
    /// Lazy-copy list memory against full copies, for SCL and FSSCL.
    LazyList,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::ScsRm, Suite::Fssc, Suite::Scl1, Suite::Scs1, Suite::LazyList];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ScsRm => "scs-rm vs scs",
            Suite::Fssc => "fssc vs sc",
            Suite::Scl1 => "scl(L=1) vs sc",
            Suite::Scs1 => "scs(L=1) vs sc",
            Suite::LazyList => "lazy vs full-copy list",
        }
    }

    /// Largest block length the suite runs at.
    pub fn max_block_len(self) -> usize {
        match self {
            Suite::LazyList => 64,
            _ => usize::MAX,
        }
    }
}

/// A code and the number of frames to decode at every SNR.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corpus {
    pub n: usize,
    pub k: usize,
    pub crc: Option<Crc>,
    pub trials: u64,
}

pub fn standard_corpus() -> [Corpus; 3] {
    [
        Corpus { n: 16, k: 8, crc: None, trials: 10_000 },
        Corpus { n: 64, k: 32, crc: Some(CRC24C), trials: 10_000 },
        Corpus { n: 1024, k: 512, crc: Some(CRC24C), trials: 1_000 },
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct Divergence {
    pub suite: Suite,
    pub n: usize,
    pub ebno_db: f64,
    pub trial: u64,
    pub detail: String,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: N={} at {} dB, trial {}: {}",
            self.suite.name(),
            self.n,
            self.ebno_db,
            self.trial,
            self.detail
        )
    }
}

/// LLRs of trial `t`: random payload, CRC, non-systematic encoding, AWGN.
pub fn frame(cfg: &CodeConfig, sigma: f64, seed: u64, t: u64, llrs: &mut [f32]) {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix(seed, t));
    let payload: Vec<u8> = (0..cfg.payload_len()).map(|_| rng.random_range(0..2)).collect();
    let block = cfg.attach_crc(&payload).expect("payload length matches");
    let c = Encoding::NonSystematic.encode(cfg, &block).expect("block length matches");
    transmit(&c, sigma, &mut rng, llrs);
}

type Check<'a> = Box<dyn FnMut(&[f32]) -> Result<(), String> + 'a>;

fn checker(suite: Suite, cfg: &Arc<CodeConfig>) -> Check<'static> {
    let n = cfg.block_len();
    let enc = Encoding::NonSystematic;
    let cfg = cfg.clone();
    match suite {
        Suite::ScsRm => {
            let d = LIST_SIZE * n;
            let mut a = ScsDecoder::new(cfg.clone(), LIST_SIZE, d, enc);
            let mut b = ScsRmDecoder::new(cfg, LIST_SIZE, d, enc);
            Box::new(move |l| {
                let (x, y) = (a.decode(l), b.decode(l));
                if x.estimate != y.estimate {
                    Err("estimates differ".into())
                } else if x.pm.to_bits() != y.pm.to_bits() {
                    Err(format!("metrics differ: {} vs {}", x.pm, y.pm))
                } else if x.stats != y.stats {
                    Err(format!("counters differ: {:?} vs {:?}", x.stats, y.stats))
                } else {
                    Ok(())
                }
            })
        }
        Suite::Fssc => {
            let mut a = ScDecoder::new(cfg.clone());
            let mut b = FsscDecoder::new(cfg.clone(), Arc::new(Schedule::build(&cfg)));
            Box::new(move |l| same(&a.decode(l).u_hat, &b.decode(l).u_hat))
        }
        Suite::Scl1 => {
            let mut a = ScDecoder::new(cfg.clone());
            let mut b: SclDecoder = SclDecoder::new(cfg, 1, enc);
            Box::new(move |l| same(&a.decode(l).u_hat, &b.decode(l).estimate.u_hat))
        }
        Suite::Scs1 => {
            let mut a = ScDecoder::new(cfg.clone());
            let mut b = ScsDecoder::new(cfg, 1, n, enc);
            Box::new(move |l| {
                let out = b.decode(l);
                same(&a.decode(l).u_hat, &out.estimate.u_hat)?;
                if out.stats.iterations != n as u64 {
                    return Err(format!("{} iterations, expected {n}", out.stats.iterations));
                }
                Ok(())
            })
        }
        Suite::LazyList => {
            let sched = Arc::new(Schedule::build(&cfg));
            let mut a: SclDecoder<LazyMemoryPool> = SclDecoder::new(cfg.clone(), LIST_SIZE, enc);
            let mut b: SclDecoder<FullCopyStore> = SclDecoder::new(cfg.clone(), LIST_SIZE, enc);
            let mut c: FssclDecoder<LazyMemoryPool> = FssclDecoder::new(cfg.clone(), sched.clone(), LIST_SIZE, enc);
            let mut d: FssclDecoder<FullCopyStore> = FssclDecoder::new(cfg, sched, LIST_SIZE, enc);
            Box::new(move |l| {
                if a.decode(l) != b.decode(l) {
                    return Err("SCL outputs differ".into());
                }
                if c.decode(l) != d.decode(l) {
                    return Err("FSSCL outputs differ".into());
                }
                Ok(())
            })
        }
    }
}

fn same(a: &[u8], b: &[u8]) -> Result<(), String> {
    match a.iter().zip(b).position(|(x, y)| x != y) {
        None => Ok(()),
        Some(i) => Err(format!("u_hat differs first at bit {i}")),
    }
}

/// Runs `suite` on `corpus` at every SNR. Returns the frames compared.
pub fn run(suite: Suite, corpus: &Corpus, seed: u64) -> Result<u64, Divergence> {
    let seq = ReliabilitySequence::nr();
    let cfg = Arc::new(CodeConfig::build(corpus.n, corpus.k, corpus.crc, &seq).expect("valid corpus code"));
    let mut check = checker(suite, &cfg);
    let mut llrs = vec![0.0; corpus.n];
    let mut compared = 0;
    for ebno_db in SNRS_DB {
        let sigma = ebno_to_sigma(ebno_db, cfg.rate()).expect("rate in range");
        for t in 0..corpus.trials {
            frame(&cfg, sigma, seed, t, &mut llrs);
            check(&llrs).map_err(|detail| Divergence {
                suite,
                n: corpus.n,
                ebno_db,
                trial: t,
                detail,
            })?;
            compared += 1;
        }
    }
    Ok(compared)
}

/// Every suite on every applicable corpus entry, stopping at the first
/// divergence. `report` sees each finished (suite, corpus, frames).
pub fn run_all(
    corpus: &[Corpus],
    seed: u64,
    mut report: impl FnMut(Suite, &Corpus, u64),
) -> Result<u64, Divergence> {
    let mut total = 0;
    for suite in Suite::ALL {
        for c in corpus.iter().filter(|c| c.n <= suite.max_block_len()) {
            let n = run(suite, c, seed)?;
            report(suite, c, n);
            total += n;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_corpus_agrees() {
        let corpus = [
            Corpus { n: 16, k: 8, crc: None, trials: 200 },
            Corpus { n: 64, k: 32, crc: Some(CRC24C), trials: 100 },
        ];
        let total = run_all(&corpus, 5, |_, _, _| {}).unwrap();
        assert_eq!(total, 5 * 3 * 300);
    }

    #[test]
    fn divergence_is_reported() {
        let cfg = Arc::new(CodeConfig::build(16, 8, None, &ReliabilitySequence::nr()).unwrap());
        let mut sc = ScDecoder::new(cfg.clone());
        let mut other = ScDecoder::new(Arc::new(CodeConfig::build(16, 9, None, &ReliabilitySequence::nr()).unwrap()));
        let mut llrs = vec![0.0; 16];
        let sigma = ebno_to_sigma(0.0, 0.5).unwrap();
        let differs = (0..100).any(|t| {
            frame(&cfg, sigma, 1, t, &mut llrs);
            same(&sc.decode(&llrs).u_hat, &other.decode(&llrs).u_hat).is_err()
        });
        assert!(differs);
    }

    #[test]
    fn frames_are_reproducible() {
        let cfg = CodeConfig::build(64, 32, Some(CRC24C), &ReliabilitySequence::nr()).unwrap();
        let (mut a, mut b) = (vec![0.0; 64], vec![0.0; 64]);
        frame(&cfg, 0.9, 3, 17, &mut a);
        frame(&cfg, 0.9, 3, 17, &mut b);
        assert_eq!(a, b);
        frame(&cfg, 0.9, 3, 18, &mut b);
        assert_ne!(a, b);
    }
}
