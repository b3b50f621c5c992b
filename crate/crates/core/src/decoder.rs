//! One interface over every decoder.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::code::CodeConfig;
use crate::encode::Encoding;
use crate::fssc::FsscDecoder;
use crate::list::{FssclDecoder, ListOutput, SclDecoder};
use crate::sc::ScDecoder;
use crate::schedule::Schedule;
use crate::stack::{FsscsRmDecoder, ScsDecoder, ScsRmDecoder, StackOutput};
use crate::Estimate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecoderKind {
    Sc,
    Fssc,
    Scl,
    Fsscl,
    Scs,
    ScsRm,
    FsscsRm,
}

impl DecoderKind {
    pub const ALL: [DecoderKind; 7] = [
        DecoderKind::Sc,
        DecoderKind::Fssc,
        DecoderKind::Scl,
        DecoderKind::Fsscl,
        DecoderKind::Scs,
        DecoderKind::ScsRm,
        DecoderKind::FsscsRm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DecoderKind::Sc => "sc",
            DecoderKind::Fssc => "fssc",
            DecoderKind::Scl => "scl",
            DecoderKind::Fsscl => "fsscl",
            DecoderKind::Scs => "scs",
            DecoderKind::ScsRm => "scs-rm",
            DecoderKind::FsscsRm => "fsscs-rm",
        }
    }

    /// Decoders that run the fast-simplified schedule.
    pub fn is_fast(self) -> bool {
        matches!(self, DecoderKind::Fssc | DecoderKind::Fsscl | DecoderKind::FsscsRm)
    }

    pub fn uses_list_size(self) -> bool {
        !matches!(self, DecoderKind::Sc | DecoderKind::Fssc)
    }

    pub fn uses_stack(self) -> bool {
        matches!(self, DecoderKind::Scs | DecoderKind::ScsRm | DecoderKind::FsscsRm)
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecoderKind {
    type Err = DecoderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DecoderKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| DecoderError::UnknownKind(String::from(s)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecoderError {
    #[error("unknown decoder `{0}` (expected one of sc, fssc, scl, fsscl, scs, scs-rm, fsscs-rm)")]
    UnknownKind(String),
    #[error("list size must be at least 1")]
    ListSize,
    #[error("stack size must be at least 1")]
    StackSize,
    #[error("{0} reads the message from the codeword and needs systematic encoding")]
    NeedsSystematic(DecoderKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecoderParams {
    pub kind: DecoderKind,
    /// `L`: paths kept by list decoders; extensions per length and CRC
    /// failures tolerated by stack decoders.
    pub list_size: usize,
    /// `D`; `None` means `L·N`.
    pub stack_size: Option<usize>,
    pub encoding: Encoding,
}

impl DecoderParams {
    /// `L = 8`, `D = L·N`, systematic for fast decoders.
    pub fn new(kind: DecoderKind) -> Self {
        DecoderParams {
            kind,
            list_size: 8,
            stack_size: None,
            encoding: if kind.is_fast() {
                Encoding::Systematic
            } else {
                Encoding::NonSystematic
            },
        }
    }

    pub fn list_size(mut self, l: usize) -> Self {
        self.list_size = l;
        self
    }

    pub fn stack_size(mut self, d: usize) -> Self {
        self.stack_size = Some(d);
        self
    }

    pub fn encoding(mut self, encoding: Encoding) -> Self {
        self.encoding = encoding;
        self
    }

    pub fn resolved_stack_size(&self, block_len: usize) -> usize {
        self.stack_size.unwrap_or(self.list_size * block_len)
    }
}

/// Output of one decode through [`Decode`].
#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    pub estimate: Estimate,
    /// The `K`-bit information block (message then CRC).
    pub block: Vec<u8>,
    /// Path metric of the output, for decoders that keep one.
    pub pm: Option<f32>,
    /// True when a CRC is configured and the output fails it.
    pub crc_failed: bool,
    /// Leaf bit estimates made, summed over all paths.
    pub iterations: u64,
    pub path_switches: u64,
    pub stack_peak: usize,
}

pub trait Decode: Send {
    fn kind(&self) -> DecoderKind;

    fn config(&self) -> &CodeConfig;

    fn encoding(&self) -> Encoding;

    fn decode(&mut self, llrs: &[f32]) -> Decoded;
}

struct Boxed<D> {
    kind: DecoderKind,
    encoding: Encoding,
    cfg: Arc<CodeConfig>,
    inner: D,
}

impl<D> Boxed<D> {
    fn single(&self, estimate: Estimate) -> Decoded {
        let block = estimate.block(&self.cfg, self.encoding);
        Decoded {
            crc_failed: !self.cfg.block_passes(&block),
            iterations: self.cfg.block_len() as u64,
            estimate,
            block,
            pm: None,
            path_switches: 0,
            stack_peak: 0,
        }
    }

    fn list(&self, out: ListOutput) -> Decoded {
        Decoded {
            block: out.estimate.block(&self.cfg, self.encoding),
            estimate: out.estimate,
            pm: Some(out.pm),
            crc_failed: out.crc_failed,
            iterations: out.iterations,
            path_switches: 0,
            stack_peak: 0,
        }
    }

    fn stack(&self, out: StackOutput) -> Decoded {
        Decoded {
            block: out.estimate.block(&self.cfg, self.encoding),
            estimate: out.estimate,
            pm: Some(out.pm),
            crc_failed: out.stats.crc_failed,
            iterations: out.stats.iterations,
            path_switches: out.stats.path_switches,
            stack_peak: out.stats.stack_peak,
        }
    }
}

macro_rules! impl_decode {
    ($ty:ty, $wrap:ident) => {
        impl Decode for Boxed<$ty> {
            fn kind(&self) -> DecoderKind {
                self.kind
            }

            fn config(&self) -> &CodeConfig {
                &self.cfg
            }

            fn encoding(&self) -> Encoding {
                self.encoding
            }

            fn decode(&mut self, llrs: &[f32]) -> Decoded {
                let out = self.inner.decode(llrs);
                self.$wrap(out)
            }
        }
    };
}

impl_decode!(ScDecoder, single);
impl_decode!(FsscDecoder, single);
impl_decode!(SclDecoder, list);
impl_decode!(FssclDecoder, list);
impl_decode!(ScsDecoder, stack);
impl_decode!(ScsRmDecoder, stack);
impl_decode!(FsscsRmDecoder, stack);

/// Builds the decoder described by `params` for `cfg`.
pub fn build(cfg: Arc<CodeConfig>, params: &DecoderParams) -> Result<Box<dyn Decode>, DecoderError> {
    let kind = params.kind;
    let l = params.list_size;
    let d = params.resolved_stack_size(cfg.block_len());
    if kind.uses_list_size() && l == 0 {
        return Err(DecoderError::ListSize);
    }
    if kind.uses_stack() && d == 0 {
        return Err(DecoderError::StackSize);
    }
    if kind == DecoderKind::FsscsRm && params.encoding != Encoding::Systematic {
        return Err(DecoderError::NeedsSystematic(kind));
    }
    let encoding = params.encoding;
    let schedule = || Arc::new(Schedule::build(&cfg));
    fn boxed<D>(kind: DecoderKind, encoding: Encoding, cfg: &Arc<CodeConfig>, inner: D) -> Box<Boxed<D>> {
        Box::new(Boxed {
            kind,
            encoding,
            cfg: Arc::clone(cfg),
            inner,
        })
    }
    Ok(match kind {
        DecoderKind::Sc => boxed(kind, encoding, &cfg, ScDecoder::new(cfg.clone())),
        DecoderKind::Fssc => boxed(kind, encoding, &cfg, FsscDecoder::new(cfg.clone(), schedule())),
        DecoderKind::Scl => boxed(kind, encoding, &cfg, SclDecoder::new(cfg.clone(), l, encoding)),
        DecoderKind::Fsscl => boxed(kind, encoding, &cfg, FssclDecoder::new(cfg.clone(), schedule(), l, encoding)),
        DecoderKind::Scs => boxed(kind, encoding, &cfg, ScsDecoder::new(cfg.clone(), l, d, encoding)),
        DecoderKind::ScsRm => boxed(kind, encoding, &cfg, ScsRmDecoder::new(cfg.clone(), l, d, encoding)),
        DecoderKind::FsscsRm => boxed(kind, encoding, &cfg, FsscsRmDecoder::new(cfg.clone(), schedule(), l, d)),
    })
}
