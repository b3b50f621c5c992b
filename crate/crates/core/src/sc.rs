//! Successive-cancellation decoding.

use alloc::sync::Arc;

use crate::code::CodeConfig;
use crate::kernel::hard_decision;
use crate::tree::MemoryTree;
use crate::Estimate;

/// Bit-by-bit SC decoder over a single [`MemoryTree`].
#[derive(Debug, Clone)]
pub struct ScDecoder {
    cfg: Arc<CodeConfig>,
    tree: MemoryTree,
}

impl ScDecoder {
    pub fn new(cfg: Arc<CodeConfig>) -> Self {
        let tree = MemoryTree::new(cfg.log_len());
        ScDecoder { cfg, tree }
    }

    pub fn config(&self) -> &CodeConfig {
        &self.cfg
    }

    /// Frozen positions decide 0, information positions take the hard
    /// decision on the leaf LLR.
    pub fn decode(&mut self, llrs: &[f32]) -> Estimate {
        let n = self.cfg.block_len();
        self.tree.load_channel(llrs);
        let mut u_hat = alloc::vec![0u8; n];
        for (i, u) in u_hat.iter_mut().enumerate() {
            self.tree.calc_alpha(0, i);
            let bit = if self.cfg.is_info(i) {
                hard_decision(self.tree.alpha(0)[0])
            } else {
                0
            };
            *u = bit;
            self.tree.set_leaf(i, bit);
            self.tree.update_beta(0, i);
        }
        Estimate {
            codeword: self.tree.root_beta().to_vec(),
            u_hat,
        }
    }

    pub fn tree(&self) -> &MemoryTree {
        &self.tree
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::encode;
    use crate::kernel::f;
    use alloc::vec;
    use alloc::vec::Vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Non-in-place recursive SC: each call decodes a whole subtree from its
    /// own LLR vector and returns (u_hat, partial sums).
    fn recursive_sc(llrs: &[f32], info: &[bool]) -> (Vec<u8>, Vec<u8>) {
        if llrs.len() == 1 {
            let bit = if info[0] && llrs[0] < 0.0 { 1 } else { 0 };
            return (vec![bit], vec![bit]);
        }
        let half = llrs.len() / 2;
        let left: Vec<f32> = (0..half).map(|i| f(llrs[i], llrs[i + half])).collect();
        let (mut u, bl) = recursive_sc(&left, &info[..half]);
        // Lower half sees u_right directly, upper half sees u_left ^ u_right.
        let right: Vec<f32> = (0..half)
            .map(|i| {
                let upper = if bl[i] == 0 { llrs[i] } else { -llrs[i] };
                llrs[i + half] + upper
            })
            .collect();
        let (ur, br) = recursive_sc(&right, &info[half..]);
        u.extend(ur);
        let mut beta: Vec<u8> = bl.iter().zip(&br).map(|(a, b)| a ^ b).collect();
        beta.extend(br);
        (u, beta)
    }

    fn pc84() -> Arc<CodeConfig> {
        Arc::new(CodeConfig::from_info_set(8, [3, 5, 6, 7], None).unwrap())
    }

    #[test]
    fn noiseless_recovers_input() {
        let cfg = pc84();
        let u = cfg.place(&[1, 0, 1, 1]).unwrap();
        let c = encode(&u).unwrap();
        let llrs: Vec<f32> = c.iter().map(|&b| if b == 0 { 20.0 } else { -20.0 }).collect();
        let est = ScDecoder::new(cfg).decode(&llrs);
        assert_eq!(est.u_hat, u);
        assert_eq!(est.codeword, c);
    }

    #[test]
    fn all_frozen_decodes_zero() {
        let cfg = Arc::new(CodeConfig::from_info_set(8, [], None).unwrap());
        let est = ScDecoder::new(cfg).decode(&[-1.0, 2.0, -3.0, 4.0, -5.0, 6.0, -7.0, 8.0]);
        assert_eq!(est.u_hat, vec![0; 8]);
    }

    #[test]
    fn matches_whole_tree_recursion() {
        let cfg = pc84();
        let mut dec = ScDecoder::new(cfg.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2000 {
            let llrs: Vec<f32> = (0..8).map(|_| rng.random_range(-4.0..4.0)).collect();
            let est = dec.decode(&llrs);
            let (u, root) = recursive_sc(&llrs, cfg.info_mask());
            assert_eq!(est.u_hat, u);
            assert_eq!(est.codeword, root);
            assert_eq!(encode(&est.u_hat).unwrap(), est.codeword);
        }
    }

    #[test]
    fn matches_recursion_on_nr_1024() {
        let seq = crate::ReliabilitySequence::nr();
        let cfg = Arc::new(CodeConfig::build(1024, 512, None, &seq).unwrap());
        let mut dec = ScDecoder::new(cfg.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let llrs: Vec<f32> = (0..1024).map(|_| rng.random_range(-3.0..5.0)).collect();
            let est = dec.decode(&llrs);
            assert_eq!(est.u_hat, recursive_sc(&llrs, cfg.info_mask()).0);
        }
    }
}
