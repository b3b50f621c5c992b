//! Multi-worker Monte-Carlo FER and throughput measurement.
//!
//! Trial `t` draws everything from its own generator seeded with
//! `splitmix(seed, t)`: first the payload bits, then one noise sample per
//! codeword position. Trials are handed out in batches; after each batch the
//! outcomes are scanned in trial order and the run ends at the first prefix
//! that satisfies the stop rule, so the counters do not depend on the number
//! of workers or on scheduling.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use polar_core::{build, CodeConfig, Decode, DecoderError, DecoderParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{Beta, ContinuousCDF};

use crate::channel::{transmit, transmit_noiseless, ChannelError, ChannelParams};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Decoder(#[from] DecoderError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error("stop rule needs a nonzero frame limit")]
    Stop,
    #[error("worker count must be at least 1")]
    Workers,
}

/// SplitMix64 applied to `seed + (t + 1)·γ`.
pub fn splitmix(seed: u64, t: u64) -> u64 {
    let mut z = seed.wrapping_add(t.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A point ends once `frames ≥ min_frames` and `frame_errors ≥ min_errors`,
/// or at `max_frames`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StopRule {
    pub max_frames: u64,
    pub min_frames: u64,
    pub min_errors: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            max_frames: 200_000,
            min_frames: 10_000,
            min_errors: 200,
        }
    }
}

impl StopRule {
    /// Exactly `frames` frames.
    pub fn fixed(frames: u64) -> Self {
        StopRule {
            max_frames: frames,
            min_frames: frames,
            min_errors: 0,
        }
    }

    pub fn done(&self, frames: u64, frame_errors: u64) -> bool {
        frames >= self.max_frames || (frames >= self.min_frames && frame_errors >= self.min_errors)
    }
}

/// Counters for one Eb/N0 point.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrialRecord {
    pub ebno_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    /// Payload bits compared per frame.
    pub payload_bits: u64,
    /// Information bits per frame, CRC included.
    pub info_bits: u64,
    pub total_iterations: u64,
    pub total_path_switches: u64,
    /// Time spent inside the decoder, summed over workers.
    pub decode_wall_time: Duration,
}

impl TrialRecord {
    pub fn fer(&self) -> f64 {
        ratio(self.frame_errors, self.frames)
    }

    pub fn ber(&self) -> f64 {
        ratio(self.bit_errors, self.frames * self.payload_bits)
    }

    pub fn avg_iterations(&self) -> f64 {
        ratio(self.total_iterations, self.frames)
    }

    pub fn avg_path_switches(&self) -> f64 {
        ratio(self.total_path_switches, self.frames)
    }

    /// Decoded information bits per second of decoder time, which is the
    /// average throughput of one worker.
    pub fn info_throughput(&self) -> f64 {
        let secs = self.decode_wall_time.as_secs_f64();
        if secs == 0.0 {
            0.0
        } else {
            (self.info_bits * self.frames) as f64 / secs
        }
    }

    /// Clopper-Pearson 95% interval for the frame error rate.
    pub fn fer_ci(&self) -> (f64, f64) {
        clopper_pearson(self.frame_errors, self.frames, 0.05)
    }

    fn add(&mut self, o: &Outcome) {
        self.frames += 1;
        self.frame_errors += u64::from(o.frame_error);
        self.bit_errors += o.bit_errors;
        self.total_iterations += o.iterations;
        self.total_path_switches += o.path_switches;
        self.decode_wall_time += o.time;
    }
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

/// Exact binomial confidence interval at level `1 - alpha`.
pub fn clopper_pearson(k: u64, n: u64, alpha: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let (k, n) = (k as f64, n as f64);
    let lo = if k == 0.0 {
        0.0
    } else {
        Beta::new(k, n - k + 1.0).unwrap().inverse_cdf(alpha / 2.0)
    };
    let hi = if k == n {
        1.0
    } else {
        Beta::new(k + 1.0, n - k).unwrap().inverse_cdf(1.0 - alpha / 2.0)
    };
    (lo, hi)
}

#[derive(Debug, Clone, Copy, Default)]
struct Outcome {
    frame_error: bool,
    bit_errors: u64,
    iterations: u64,
    path_switches: u64,
    time: Duration,
}

/// Which bits count as information bits when converting Eb/N0 to σ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RateConvention {
    /// `K/N` with the CRC bits included in `K`.
    InfoSet,
    /// `(K - crc_len)/N`: only the payload carries energy per bit.
    #[default]
    Payload,
}

impl RateConvention {
    pub fn rate(self, cfg: &CodeConfig) -> f64 {
        match self {
            RateConvention::InfoSet => cfg.rate(),
            RateConvention::Payload => cfg.payload_len() as f64 / cfg.block_len() as f64,
        }
    }
}

/// Everything a point needs except its Eb/N0.
#[derive(Debug, Clone)]
pub struct Simulation {
    pub cfg: Arc<CodeConfig>,
    pub params: DecoderParams,
    pub stop: StopRule,
    pub seed: u64,
    pub workers: usize,
    /// Replace the channel by its σ → 0 limit.
    pub noiseless: bool,
    pub rate: RateConvention,
}

struct Worker {
    decoder: Box<dyn Decode>,
    payload: Vec<u8>,
    llrs: Vec<f32>,
}

impl Worker {
    fn trial(&mut self, sim: &Simulation, sigma: f64, t: u64) -> Outcome {
        let cfg = &sim.cfg;
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix(sim.seed, t));
        for b in self.payload.iter_mut() {
            *b = rng.random_range(0..2);
        }
        let block = cfg.attach_crc(&self.payload).expect("payload length matches");
        let codeword = sim.params.encoding.encode(cfg, &block).expect("block length matches");
        if sim.noiseless {
            transmit_noiseless(&codeword, &mut self.llrs);
        } else {
            transmit(&codeword, sigma, &mut rng, &mut self.llrs);
        }
        let start = Instant::now();
        let out = self.decoder.decode(&self.llrs);
        let time = start.elapsed();
        let bit_errors = out
            .block
            .iter()
            .zip(&self.payload)
            .filter(|(a, b)| a != b)
            .count() as u64;
        Outcome {
            frame_error: bit_errors > 0,
            bit_errors,
            iterations: out.iterations,
            path_switches: out.path_switches,
            time,
        }
    }
}

/// Trials decoded between two stop-rule checks.
const BATCH: u64 = 512;

impl Simulation {
    pub fn new(cfg: Arc<CodeConfig>, params: DecoderParams) -> Self {
        Simulation {
            cfg,
            params,
            stop: StopRule::default(),
            seed: 0,
            workers: 1,
            noiseless: false,
            rate: RateConvention::default(),
        }
    }

    fn workers(&self) -> Result<Vec<Worker>, HarnessError> {
        (0..self.workers)
            .map(|_| {
                Ok(Worker {
                    decoder: build(self.cfg.clone(), &self.params)?,
                    payload: vec![0; self.cfg.payload_len()],
                    llrs: vec![0.0; self.cfg.block_len()],
                })
            })
            .collect()
    }

    /// Simulates one Eb/N0 point until the stop rule holds.
    pub fn run_point(&self, ebno_db: f64) -> Result<TrialRecord, HarnessError> {
        if self.stop.max_frames == 0 {
            return Err(HarnessError::Stop);
        }
        if self.workers == 0 {
            return Err(HarnessError::Workers);
        }
        let channel = ChannelParams::new(ebno_db, self.rate.rate(&self.cfg), self.seed)?;
        let mut workers = self.workers()?;
        let mut record = TrialRecord {
            ebno_db,
            payload_bits: self.cfg.payload_len() as u64,
            info_bits: self.cfg.k() as u64,
            ..TrialRecord::default()
        };
        let mut outcomes = Vec::new();
        let mut start = 0;
        while start < self.stop.max_frames {
            let end = (start + BATCH).min(self.stop.max_frames);
            self.run_batch(&mut workers, channel.sigma, start, end, &mut outcomes);
            for o in &outcomes {
                record.add(o);
                if self.stop.done(record.frames, record.frame_errors) {
                    return Ok(record);
                }
            }
            start = end;
        }
        Ok(record)
    }

    fn run_batch(&self, workers: &mut [Worker], sigma: f64, start: u64, end: u64, out: &mut Vec<Outcome>) {
        out.clear();
        out.resize((end - start) as usize, Outcome::default());
        if workers.len() == 1 {
            for (o, t) in out.iter_mut().zip(start..end) {
                *o = workers[0].trial(self, sigma, t);
            }
            return;
        }
        let next = AtomicU64::new(start);
        let done: Vec<Vec<(u64, Outcome)>> = std::thread::scope(|s| {
            let handles: Vec<_> = workers
                .iter_mut()
                .map(|w| {
                    let next = &next;
                    s.spawn(move || {
                        let mut local = Vec::new();
                        loop {
                            let t = next.fetch_add(1, Ordering::Relaxed);
                            if t >= end {
                                break local;
                            }
                            local.push((t, w.trial(self, sigma, t)));
                        }
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        for (t, o) in done.into_iter().flatten() {
            out[(t - start) as usize] = o;
        }
    }

    /// One record per Eb/N0 value, in order.
    pub fn run_sweep(&self, ebno_db: &[f64]) -> Result<Vec<TrialRecord>, HarnessError> {
        ebno_db.iter().map(|&e| self.run_point(e)).collect()
    }
}

/// `start, start + step, ...` up to and including `stop` (within rounding).
pub fn ebno_range(start: f64, stop: f64, step: f64) -> Vec<f64> {
    if step <= 0.0 || stop < start {
        return if stop == start { vec![start] } else { Vec::new() };
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|i| start + i as f64 * step).collect()
}
