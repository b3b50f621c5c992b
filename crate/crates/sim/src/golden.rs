//! Golden encode/CRC vectors for PC(1024,512) with CRC-24C.
//!
//! The vectors were produced by `data/gen_golden.py` from the explicit
//! generator matrix and a bitwise CRC long division.

use std::sync::Arc;

use polar_core::{CodeConfig, Encoding, ReliabilitySequence, CRC24C};

pub const VECTORS: &str = include_str!("../data/golden_pc1024_512_crc24c.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vector {
    pub line: usize,
    pub message: Vec<u8>,
    pub codeword: Vec<u8>,
}

/// Unpacks hex digits MSB first and keeps the first `len` bits.
pub fn hex_to_bits(hex: &str, len: usize) -> Option<Vec<u8>> {
    let mut bits = Vec::with_capacity(hex.len() * 4);
    for c in hex.chars() {
        let d = c.to_digit(16)? as u8;
        bits.extend((0..4).rev().map(|s| (d >> s) & 1));
    }
    if bits.len() < len || bits[len..].iter().any(|&b| b != 0) {
        return None;
    }
    bits.truncate(len);
    Some(bits)
}

pub fn bits_to_hex(bits: &[u8]) -> String {
    bits.chunks(4)
        .map(|c| {
            let d = c.iter().enumerate().fold(0u32, |acc, (i, &b)| acc | u32::from(b) << (3 - i));
            char::from_digit(d, 16).unwrap()
        })
        .collect()
}

pub fn config() -> Arc<CodeConfig> {
    Arc::new(CodeConfig::build(1024, 512, Some(CRC24C), &ReliabilitySequence::nr()).expect("valid code"))
}

/// Parses `msg_hex,codeword_hex` lines; `#` lines and the header are skipped.
pub fn parse(text: &str, cfg: &CodeConfig) -> Result<Vec<Vector>, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("msg_hex") {
            continue;
        }
        let bad = || format!("line {}: malformed vector", i + 1);
        let (m, c) = line.split_once(',').ok_or_else(bad)?;
        out.push(Vector {
            line: i + 1,
            message: hex_to_bits(m, cfg.payload_len()).ok_or_else(bad)?,
            codeword: hex_to_bits(c, cfg.block_len()).ok_or_else(bad)?,
        });
    }
    Ok(out)
}

/// Re-encodes every vector; returns the number checked or the first mismatch.
pub fn verify(text: &str) -> Result<usize, String> {
    let cfg = config();
    let vectors = parse(text, &cfg)?;
    if vectors.is_empty() {
        return Err("no vectors".into());
    }
    for v in &vectors {
        let block = cfg.attach_crc(&v.message).map_err(|e| e.to_string())?;
        let c = Encoding::NonSystematic.encode(&cfg, &block).map_err(|e| e.to_string())?;
        if c != v.codeword {
            return Err(format!("line {}: codeword mismatch", v.line));
        }
        let mut u = c.clone();
        polar_core::polar_transform(&mut u);
        if !cfg.block_passes(&cfg.gather(&u)) {
            return Err(format!("line {}: CRC check failed", v.line));
        }
    }
    Ok(vectors.len())
}
