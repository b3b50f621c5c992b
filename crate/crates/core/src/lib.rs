//! Polar codes: construction, encoding and the successive-cancellation
//! decoder family.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! computation over caller-provided LLRs; channel simulation, file formats and
//! the command line live in the `polar-sim` crate.
//!
//! Decoders provided:
//!
//! | kind       | type                                  |
//! |------------|---------------------------------------|
//! | SC         | [`sc::ScDecoder`]                     |
//! | FSSC       | [`fssc::FsscDecoder`]                 |
//! | SCL        | [`list::SclDecoder`]                  |
//! | FSSCL      | [`list::FssclDecoder`]                |
//! | SCS        | [`stack::ScsDecoder`]                 |
//! | SCS-RM     | [`stack::ScsRmDecoder`]               |
//! | FSSCS-RM   | [`stack::FsscsRmDecoder`]             |
//!
//! [`decoder::build`] wraps all of them behind one object-safe trait.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod code;
pub mod crc;
pub mod decoder;
pub mod encode;
pub mod fssc;
pub mod kernel;
pub mod list;
pub mod sc;
pub mod schedule;
pub mod stack;
pub mod tree;

pub use code::{CodeConfig, CodeError, ReliabilitySequence};
pub use crc::{Crc, CRC24C};
pub use decoder::{build, Decode, Decoded, DecoderError, DecoderKind, DecoderParams};
pub use list::{FullCopyStore, LazyMemoryPool, TreeStore};
pub use encode::{encode, encode_systematic, polar_transform, Encoding};
pub use schedule::Schedule;

/// A bit estimate pair produced by every decoder.
///
/// `u_hat` is the estimate of the encoder input and `codeword` the estimate of
/// the transmitted codeword; `codeword == encode(u_hat)` always holds.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Estimate {
    pub u_hat: alloc::vec::Vec<u8>,
    pub codeword: alloc::vec::Vec<u8>,
}

impl Estimate {
    /// Builds an estimate from the decoded codeword, recovering `u_hat` by
    /// re-encoding.
    pub fn from_codeword(codeword: alloc::vec::Vec<u8>) -> Self {
        let mut u_hat = codeword.clone();
        polar_transform(&mut u_hat);
        Estimate { u_hat, codeword }
    }

    /// Builds an estimate from the decoded encoder input.
    pub fn from_u_hat(u_hat: alloc::vec::Vec<u8>) -> Self {
        let mut codeword = u_hat.clone();
        polar_transform(&mut codeword);
        Estimate { u_hat, codeword }
    }

    /// The K-bit information block (message followed by CRC) under `encoding`.
    pub fn block(&self, cfg: &CodeConfig, encoding: Encoding) -> alloc::vec::Vec<u8> {
        match encoding {
            Encoding::NonSystematic => cfg.gather(&self.u_hat),
            Encoding::Systematic => cfg.gather(&self.codeword),
        }
    }
}
