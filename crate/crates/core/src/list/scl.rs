use alloc::sync::Arc;

use super::{ListOutput, PathList, TreeStore};
use crate::code::CodeConfig;
use crate::encode::Encoding;
use crate::schedule::Op;
use crate::LazyMemoryPool;

/// Bit-by-bit list decoder.
#[derive(Debug, Clone)]
pub struct SclDecoder<S = LazyMemoryPool> {
    cfg: Arc<CodeConfig>,
    encoding: Encoding,
    list: PathList<S>,
}

impl<S: TreeStore> SclDecoder<S> {
    /// `encoding` selects where the CRC is read from: `u_hat` for
    /// non-systematic codes, the codeword for systematic ones.
    pub fn new(cfg: Arc<CodeConfig>, list_size: usize, encoding: Encoding) -> Self {
        let list = PathList::new(cfg.log_len(), list_size);
        SclDecoder { cfg, encoding, list }
    }

    pub fn config(&self) -> &CodeConfig {
        &self.cfg
    }

    pub fn list_size(&self) -> usize {
        self.list.list_size
    }

    pub fn store(&self) -> &S {
        &self.list.store
    }

    pub fn decode(&mut self, llrs: &[f32]) -> ListOutput {
        self.list.start(llrs);
        for i in 0..self.cfg.block_len() {
            self.list.calc_alpha(0, i);
            self.list.extend(Op::Leaf { info: self.cfg.is_info(i) }, 0, i);
            debug_assert!(self.list.path_count() <= self.list.list_size);
            self.list.update_beta(0, i);
        }
        self.list.finish(&self.cfg, self.encoding)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::encode;
    use crate::sc::ScDecoder;
    use crate::{FullCopyStore, ReliabilitySequence, CRC24C};
    use alloc::vec;
    use alloc::vec::Vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn noisy(rng: &mut ChaCha8Rng, c: &[u8], spread: f32) -> Vec<f32> {
        c.iter()
            .map(|&b| (if b == 0 { 1.0 } else { -1.0 }) + rng.random_range(-spread..spread))
            .collect()
    }

    #[test]
    fn list_of_one_is_sc() {
        let seq = ReliabilitySequence::nr();
        let cfg = Arc::new(CodeConfig::build(64, 32, None, &seq).unwrap());
        let mut scl: SclDecoder = SclDecoder::new(cfg.clone(), 1, Encoding::NonSystematic);
        let mut sc = ScDecoder::new(cfg);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..500 {
            let llrs: Vec<f32> = (0..64).map(|_| rng.random_range(-2.0..3.0)).collect();
            assert_eq!(scl.decode(&llrs).estimate, sc.decode(&llrs));
        }
    }

    #[test]
    fn noiseless_with_crc() {
        let seq = ReliabilitySequence::nr();
        let cfg = Arc::new(CodeConfig::build(128, 64, Some(CRC24C), &seq).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let payload: Vec<u8> = (0..cfg.payload_len()).map(|_| rng.random_range(0..2)).collect();
        let u = cfg.place(&cfg.attach_crc(&payload).unwrap()).unwrap();
        let c = encode(&u).unwrap();
        let llrs: Vec<f32> = c.iter().map(|&b| if b == 0 { 10.0 } else { -10.0 }).collect();
        let mut scl: SclDecoder = SclDecoder::new(cfg, 8, Encoding::NonSystematic);
        let out = scl.decode(&llrs);
        assert!(!out.crc_failed);
        assert_eq!(out.pm, 0.0);
        assert_eq!(out.estimate.u_hat, u);
        assert_eq!(out.finalists.len(), 8);
    }

    #[test]
    fn lazy_pool_matches_full_copies_and_does_not_leak() {
        let seq = ReliabilitySequence::nr();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for (n, k, l) in [(16, 8, 4), (32, 20, 8), (64, 40, 16)] {
            let cfg = Arc::new(CodeConfig::build(n, k, None, &seq).unwrap());
            let mut lazy: SclDecoder = SclDecoder::new(cfg.clone(), l, Encoding::NonSystematic);
            let mut full: SclDecoder<FullCopyStore> = SclDecoder::new(cfg.clone(), l, Encoding::NonSystematic);
            for _ in 0..200 {
                let c = vec![0u8; n];
                let llrs = noisy(&mut rng, &c, 1.6);
                assert_eq!(lazy.decode(&llrs), full.decode(&llrs));
                lazy.store().audit().unwrap();
                assert_eq!(lazy.store().active_paths(), lazy.list_size().min(1 << k));
            }
        }
    }
}
