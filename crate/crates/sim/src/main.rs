//! `polar-sim`: FER sweeps and self-check modes for the polar decoders.

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Parser, ValueEnum};
use polar_core::{CodeConfig, DecoderKind, DecoderParams, Encoding, ReliabilitySequence, CRC24C};
use polar_sim::differential::{self, Corpus};
use polar_sim::harness::{ebno_range, RateConvention, Simulation, StopRule};
use polar_sim::{csv, golden};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CrcChoice {
    /// CRC-24C when K > 24, otherwise none.
    Auto,
    None,
    Crc24c,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rate {
    /// Payload bits over N.
    Payload,
    /// K/N, CRC bits included.
    InfoSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Sweep,
    Golden,
    Differential,
}

#[derive(Debug, Parser)]
#[command(name = "polar-sim", version, about = "Monte-Carlo FER simulation of polar decoders over BPSK/AWGN")]
struct Args {
    /// Block length N.
    #[arg(long = "N", default_value_t = 1024)]
    n: usize,
    /// Information set size K, CRC bits included.
    #[arg(long = "K", default_value_t = 512)]
    k: usize,
    #[arg(long, value_enum, default_value_t = CrcChoice::Auto)]
    crc: CrcChoice,
    /// sc, fssc, scl, fsscl, scs, scs-rm or fsscs-rm.
    #[arg(long, default_value = "scl", value_parser = parse_kind)]
    decoder: DecoderKind,
    /// List size L.
    #[arg(long, default_value_t = 8)]
    list: usize,
    /// Stack capacity D [default: L·N].
    #[arg(long)]
    stack: Option<usize>,
    /// Eb/N0 start, stop and step in dB.
    #[arg(long, num_args = 3, value_names = ["START", "STOP", "STEP"], default_values_t = [0.0, 3.0, 0.5])]
    ebno: Vec<f64>,
    /// Maximum frames per point; in differential mode, frames per SNR.
    #[arg(long)]
    frames: Option<u64>,
    #[arg(long, default_value_t = 10_000)]
    min_frames: u64,
    #[arg(long, default_value_t = 200)]
    min_errors: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "POLAR_SIM_WORKERS")]
    workers: Option<usize>,
    /// Reliability sequence file, one index per line [default: 3GPP NR].
    #[arg(long)]
    sequence: Option<PathBuf>,
    /// CSV output file [default: stdout].
    #[arg(long)]
    output: Option<PathBuf>,
    /// Code rate used to convert Eb/N0 to the noise level.
    #[arg(long, value_enum, default_value_t = Rate::Payload)]
    rate: Rate,
    /// Replace the channel by noiseless LLRs.
    #[arg(long)]
    noiseless: bool,
    /// Systematic encoding; always on for fssc, fsscl and fsscs-rm.
    #[arg(long)]
    systematic: bool,
    #[arg(long, value_enum, default_value_t = Mode::Sweep)]
    mode: Mode,
}

fn parse_kind(s: &str) -> Result<DecoderKind, String> {
    s.parse().map_err(|e: polar_core::DecoderError| e.to_string())
}

fn simulation(args: &Args) -> anyhow::Result<Simulation> {
    if args.k == 0 {
        bail!("K must be at least 1");
    }
    let seq = match &args.sequence {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            ReliabilitySequence::parse(&text).with_context(|| format!("parsing {}", p.display()))?
        }
        None => ReliabilitySequence::nr(),
    };
    let crc = match args.crc {
        CrcChoice::Auto if args.k > CRC24C.len() => Some(CRC24C),
        CrcChoice::Crc24c => Some(CRC24C),
        _ => None,
    };
    let cfg = Arc::new(CodeConfig::build(args.n, args.k, crc, &seq)?);
    let encoding = if args.systematic || args.decoder.is_fast() {
        Encoding::Systematic
    } else {
        Encoding::NonSystematic
    };
    let mut params = DecoderParams::new(args.decoder).list_size(args.list).encoding(encoding);
    if let Some(d) = args.stack {
        params = params.stack_size(d);
    }
    polar_core::build(cfg.clone(), &params)?;
    let workers = match args.workers {
        Some(0) => bail!("--workers must be at least 1"),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let stop = StopRule {
        max_frames: args.frames.unwrap_or(StopRule::default().max_frames),
        min_frames: args.min_frames,
        min_errors: args.min_errors,
    };
    if stop.max_frames == 0 {
        bail!("--frames must be at least 1");
    }
    if args.ebno[2].is_nan() || args.ebno[2] <= 0.0 {
        bail!("--ebno step must be positive");
    }
    Ok(Simulation {
        cfg,
        params,
        stop,
        seed: args.seed,
        workers,
        noiseless: args.noiseless,
        rate: match args.rate {
            Rate::InfoSet => RateConvention::InfoSet,
            Rate::Payload => RateConvention::Payload,
        },
    })
}

fn sweep(sim: &Simulation, args: &Args) -> anyhow::Result<()> {
    let points = ebno_range(args.ebno[0], args.ebno[1], args.ebno[2]);
    let mut records = Vec::with_capacity(points.len());
    for e in points {
        let r = sim.run_point(e)?;
        let (lo, hi) = r.fer_ci();
        eprintln!(
            "{} {e:.2} dB: {} frames, {} errors, fer {:.3e} [{lo:.3e}, {hi:.3e}]",
            sim.params.kind,
            r.frames,
            r.frame_errors,
            r.fer()
        );
        records.push(r);
    }
    match &args.output {
        Some(path) => csv::write_csv(&records, path),
        None => csv::write_rows(&records, io::stdout().lock()),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match args.mode {
        Mode::Golden => match golden::verify(golden::VECTORS) {
            Ok(n) => {
                println!("golden: {n} vectors verified");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("golden: {e}");
                ExitCode::from(1)
            }
        },
        Mode::Differential => {
            let mut corpus = differential::standard_corpus();
            if let Some(f) = args.frames {
                corpus.iter_mut().for_each(|c: &mut Corpus| c.trials = f);
            }
            let result = differential::run_all(&corpus, args.seed, |suite, c, n| {
                println!("{}: N={} {n} frames identical", suite.name(), c.n);
            });
            match result {
                Ok(_) => ExitCode::SUCCESS,
                Err(d) => {
                    eprintln!("divergence: {d}");
                    ExitCode::from(1)
                }
            }
        }
        Mode::Sweep => {
            let sim = match simulation(&args) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e:#}");
                    return ExitCode::from(2);
                }
            };
            match sweep(&sim, &args) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
