//! Polar transform and systematic encoding.

use alloc::vec::Vec;

use crate::code::{CodeConfig, CodeError};

/// How the K-bit block is mapped onto the codeword.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Encoding {
    /// The block sits on the information set of the encoder input `u`.
    #[default]
    NonSystematic,
    /// The block appears verbatim on the information set of the codeword.
    Systematic,
}

/// In-place `x ← x · F^{⊗n}` over GF(2) using the n-stage XOR butterfly.
///
/// # Panics
/// If the length is not a power of two.
pub fn polar_transform(x: &mut [u8]) {
    let len = x.len();
    assert!(len.is_power_of_two(), "polar transform length must be a power of two");
    let mut half = 1;
    while half < len {
        for block in x.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter()) {
                *a ^= *b;
            }
        }
        half *= 2;
    }
}

/// `c = u · F^{⊗n}`.
pub fn encode(u: &[u8]) -> Result<Vec<u8>, CodeError> {
    if !u.len().is_power_of_two() {
        return Err(CodeError::BlockLength(u.len()));
    }
    let mut c = u.to_vec();
    polar_transform(&mut c);
    Ok(c)
}

/// Codeword whose restriction to the information set equals `block`.
///
/// Uses the double-transform construction: place, transform, clear the frozen
/// positions, transform again. The result is only systematic when the
/// information set is closed under binary domination, which holds for the
/// 3GPP sequence.
pub fn encode_systematic(cfg: &CodeConfig, block: &[u8]) -> Result<Vec<u8>, CodeError> {
    let mut x = cfg.place(block)?;
    polar_transform(&mut x);
    for &i in cfg.frozen_set() {
        x[i] = 0;
    }
    polar_transform(&mut x);
    Ok(x)
}

impl Encoding {
    /// Encodes a K-bit block into an N-bit codeword.
    pub fn encode(self, cfg: &CodeConfig, block: &[u8]) -> Result<Vec<u8>, CodeError> {
        match self {
            Encoding::NonSystematic => {
                let mut u = cfg.place(block)?;
                polar_transform(&mut u);
                Ok(u)
            }
            Encoding::Systematic => encode_systematic(cfg, block),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn kron_oracle(u: &[u8]) -> Vec<u8> {
        // F^{⊗n}[i][j] = 1 iff bits(j) ⊆ bits(i).
        let n = u.len();
        (0..n)
            .map(|j| (0..n).filter(|&i| i & j == j).fold(0, |acc, i| acc ^ u[i]))
            .collect()
    }

    #[test]
    fn unit_vector_at_three() {
        let mut u = vec![0u8; 8];
        u[3] = 1;
        assert_eq!(encode(&u).unwrap(), vec![1, 1, 1, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn zeros_stay_zero() {
        assert_eq!(encode(&[0; 16]).unwrap(), vec![0; 16]);
    }

    #[test]
    fn exhaustive_small_agrees_with_matrix() {
        for n in [1usize, 2, 4, 8, 16] {
            for v in 0u32..(1 << n) {
                let u: Vec<u8> = (0..n).map(|i| ((v >> i) & 1) as u8).collect();
                let c = encode(&u).unwrap();
                assert_eq!(c, kron_oracle(&u));
                assert_eq!(encode(&c).unwrap(), u);
            }
        }
    }

    #[test]
    fn rejects_non_power_of_two() {
        assert_eq!(encode(&[0; 6]), Err(CodeError::BlockLength(6)));
    }

    #[test]
    fn systematic_pc_8_4_exhaustive() {
        let cfg = CodeConfig::from_info_set(8, [3, 5, 6, 7], None).unwrap();
        for v in 0u8..16 {
            let block: Vec<u8> = (0..4).map(|i| (v >> i) & 1).collect();
            let c = encode_systematic(&cfg, &block).unwrap();
            assert_eq!(cfg.gather(&c), block);
            let u = encode(&c).unwrap();
            assert!(cfg.frozen_set().iter().all(|&i| u[i] == 0));
        }
    }
}
