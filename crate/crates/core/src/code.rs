//! Code construction: reliability sequences and the information/frozen split.

use alloc::vec;
use alloc::vec::Vec;

use crate::crc::Crc;

const NR_SEQUENCE_1024: &str = include_str!("../data/nr_reliability_1024.txt");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("block length {0} is not a power of two")]
    BlockLength(usize),
    #[error("block length {block_len} exceeds the reliability sequence length {sequence_len}")]
    SequenceTooShort { block_len: usize, sequence_len: usize },
    #[error("information set size {k} is out of range for block length {block_len}")]
    InfoSize { k: usize, block_len: usize },
    #[error("CRC length {crc_len} must be smaller than the information set size {k}")]
    CrcTooLong { crc_len: usize, k: usize },
    #[error("reliability sequence is not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("information index {index} is out of range for block length {block_len}")]
    InfoIndex { index: usize, block_len: usize },
    #[error("expected {expected} bits, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("line {line}: `{text}` is not a channel index")]
    Parse { line: usize, text: alloc::string::String },
}

/// Channel indices ordered from least to most reliable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReliabilitySequence {
    indices: Vec<usize>,
}

impl ReliabilitySequence {
    pub fn new(indices: Vec<usize>) -> Result<Self, CodeError> {
        let len = indices.len();
        let mut seen = vec![false; len];
        for &i in &indices {
            if i >= len || seen[i] {
                return Err(CodeError::NotPermutation(len));
            }
            seen[i] = true;
        }
        Ok(ReliabilitySequence { indices })
    }

    /// Parses one decimal index per line; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, CodeError> {
        let mut indices = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let index = line.parse().map_err(|_| CodeError::Parse {
                line: n + 1,
                text: line.into(),
            })?;
            indices.push(index);
        }
        Self::new(indices)
    }

    /// The length-1024 sequence of 3GPP TS 38.212 (Table 5.3.1.2-1).
    pub fn nr() -> Self {
        Self::parse(NR_SEQUENCE_1024).expect("embedded sequence is a permutation")
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }
}

/// Static description of a polar code PC(N, K), optionally CRC-aided.
///
/// `k` is the size of the information set and includes the CRC bits: the
/// message carries `k - crc_len` payload bits followed by the CRC, and the
/// resulting K-bit block is placed on the information set in ascending index
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeConfig {
    block_len: usize,
    log_len: usize,
    info_set: Vec<usize>,
    frozen_set: Vec<usize>,
    info_mask: Vec<bool>,
    crc: Option<Crc>,
}

impl CodeConfig {
    /// Selects the `k` most reliable indices below `block_len` from `sequence`.
    pub fn build(
        block_len: usize,
        k: usize,
        crc: Option<Crc>,
        sequence: &ReliabilitySequence,
    ) -> Result<Self, CodeError> {
        if !block_len.is_power_of_two() {
            return Err(CodeError::BlockLength(block_len));
        }
        if block_len > sequence.len() {
            return Err(CodeError::SequenceTooShort {
                block_len,
                sequence_len: sequence.len(),
            });
        }
        if k > block_len {
            return Err(CodeError::InfoSize { k, block_len });
        }
        let sub: Vec<usize> = sequence
            .indices()
            .iter()
            .copied()
            .filter(|&i| i < block_len)
            .collect();
        Self::from_info_set(block_len, sub[block_len - k..].iter().copied(), crc)
    }

    /// Builds a configuration from an explicit information set.
    pub fn from_info_set(
        block_len: usize,
        info: impl IntoIterator<Item = usize>,
        crc: Option<Crc>,
    ) -> Result<Self, CodeError> {
        if !block_len.is_power_of_two() {
            return Err(CodeError::BlockLength(block_len));
        }
        let mut info_mask = vec![false; block_len];
        for index in info {
            if index >= block_len {
                return Err(CodeError::InfoIndex { index, block_len });
            }
            info_mask[index] = true;
        }
        let info_set: Vec<usize> = (0..block_len).filter(|&i| info_mask[i]).collect();
        let frozen_set: Vec<usize> = (0..block_len).filter(|&i| !info_mask[i]).collect();
        let k = info_set.len();
        if let Some(crc) = crc {
            if crc.len() >= k {
                return Err(CodeError::CrcTooLong {
                    crc_len: crc.len(),
                    k,
                });
            }
        }
        Ok(CodeConfig {
            block_len,
            log_len: block_len.trailing_zeros() as usize,
            info_set,
            frozen_set,
            info_mask,
            crc,
        })
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    /// `log2(N)`, the number of encoding stages.
    pub fn log_len(&self) -> usize {
        self.log_len
    }

    pub fn k(&self) -> usize {
        self.info_set.len()
    }

    pub fn info_set(&self) -> &[usize] {
        &self.info_set
    }

    pub fn frozen_set(&self) -> &[usize] {
        &self.frozen_set
    }

    pub fn info_mask(&self) -> &[bool] {
        &self.info_mask
    }

    #[inline]
    pub fn is_info(&self, index: usize) -> bool {
        self.info_mask[index]
    }

    pub fn crc(&self) -> Option<Crc> {
        self.crc
    }

    pub fn crc_len(&self) -> usize {
        self.crc.map_or(0, |c| c.len())
    }

    pub fn payload_len(&self) -> usize {
        self.k() - self.crc_len()
    }

    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.block_len as f64
    }

    /// Spreads a K-bit block over the information set; frozen positions are 0.
    pub fn place(&self, block: &[u8]) -> Result<Vec<u8>, CodeError> {
        if block.len() != self.k() {
            return Err(CodeError::LengthMismatch {
                expected: self.k(),
                actual: block.len(),
            });
        }
        let mut u = vec![0u8; self.block_len];
        for (&i, &b) in self.info_set.iter().zip(block) {
            u[i] = b;
        }
        Ok(u)
    }

    /// Restricts an N-bit word to the information set.
    pub fn gather(&self, word: &[u8]) -> Vec<u8> {
        self.info_set.iter().map(|&i| word[i]).collect()
    }

    /// Appends the CRC (if any) to a payload, yielding the K-bit block.
    pub fn attach_crc(&self, payload: &[u8]) -> Result<Vec<u8>, CodeError> {
        if payload.len() != self.payload_len() {
            return Err(CodeError::LengthMismatch {
                expected: self.payload_len(),
                actual: payload.len(),
            });
        }
        Ok(match self.crc {
            Some(crc) => crc.append(payload),
            None => payload.to_vec(),
        })
    }

    /// Whether a K-bit block passes the CRC; always true without a CRC.
    pub fn block_passes(&self, block: &[u8]) -> bool {
        match self.crc {
            Some(crc) => crc.check(block),
            None => true,
        }
    }
}
