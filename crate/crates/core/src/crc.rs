//! Bit-serial CRC over 0/1 symbol vectors.
//!
//! Convention: MSB-first long division of `msg · x^len` by the generator,
//! zero initial register, no reflection and no output XOR.

use alloc::vec::Vec;

/// A CRC generator. `poly` holds the generator coefficients below `x^len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crc {
    poly: u64,
    len: u32,
}

/// CRC-24C of TS 38.212 (generator `0xB2B117`).
pub const CRC24C: Crc = Crc::new(0xB2_B117, 24);

impl Crc {
    /// # Panics
    /// If `len` is not in `1..=63`.
    pub const fn new(poly: u64, len: u32) -> Self {
        assert!(len >= 1 && len <= 63, "CRC length must be in 1..=63");
        Crc {
            poly: poly & ((1 << len) - 1),
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn poly(&self) -> u64 {
        self.poly
    }

    /// The CRC register after shifting in `bits`.
    pub fn remainder(&self, bits: &[u8]) -> u64 {
        let top = self.len - 1;
        let mask = (1u64 << self.len) - 1;
        let mut reg = 0u64;
        for &b in bits {
            let feedback = ((reg >> top) as u8 & 1) ^ (b & 1);
            reg = (reg << 1) & mask;
            if feedback != 0 {
                reg ^= self.poly;
            }
        }
        reg
    }

    /// The `len` CRC bits of `bits`, most significant first.
    pub fn compute(&self, bits: &[u8]) -> Vec<u8> {
        let reg = self.remainder(bits);
        (0..self.len).rev().map(|s| ((reg >> s) & 1) as u8).collect()
    }

    /// `bits` followed by their CRC.
    pub fn append(&self, bits: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(bits.len() + self.len());
        out.extend_from_slice(bits);
        out.extend(self.compute(bits));
        out
    }

    /// True iff the trailing `len` bits are the CRC of the prefix.
    pub fn check(&self, bits_with_crc: &[u8]) -> bool {
        if bits_with_crc.len() <= self.len() {
            return false;
        }
        let (msg, tail) = bits_with_crc.split_at(bits_with_crc.len() - self.len());
        let reg = self.remainder(msg);
        tail.iter()
            .enumerate()
            .all(|(j, &b)| ((reg >> (self.len() - 1 - j)) & 1) as u8 == b)
    }
}
