//! Fast-simplified SC decoding over a precomputed [`Schedule`].

use alloc::sync::Arc;

use crate::code::CodeConfig;
use crate::kernel::hard_decision;
use crate::schedule::{Op, Schedule};
use crate::tree::MemoryTree;
use crate::Estimate;

/// Repetition node: all bits take the hard decision on the LLR sum (summed in
/// index order).
pub fn rep_decode(alpha: &[f32], out: &mut [u8]) {
    let sum: f32 = alpha.iter().sum();
    out.fill(hard_decision(sum));
}

/// Rate-1 node: hard decisions.
pub fn rate1_decode(alpha: &[f32], out: &mut [u8]) {
    for (o, &a) in out.iter_mut().zip(alpha) {
        *o = hard_decision(a);
    }
}

/// Single-parity-check node: hard decisions, then flip the least reliable bit
/// (lowest index on ties) if the parity is odd.
pub fn spc_decode(alpha: &[f32], out: &mut [u8]) {
    let mut parity = 0u8;
    let mut weakest = 0;
    let mut weakest_mag = f32::INFINITY;
    for (i, (o, &a)) in out.iter_mut().zip(alpha).enumerate() {
        let hd = hard_decision(a);
        *o = hd;
        parity ^= hd;
        if a.abs() < weakest_mag {
            weakest_mag = a.abs();
            weakest = i;
        }
    }
    out[weakest] ^= parity;
}

/// Decides the bits of a constituent node from its LLRs.
pub fn decode_node(op: Op, alpha: &[f32], out: &mut [u8]) {
    match op {
        Op::Rate0 | Op::Leaf { info: false } => out.fill(0),
        Op::Rate1 | Op::Leaf { info: true } => rate1_decode(alpha, out),
        Op::Rep => rep_decode(alpha, out),
        Op::Spc => spc_decode(alpha, out),
        Op::Alpha | Op::Beta => unreachable!("not a constituent node"),
    }
}

#[derive(Debug, Clone)]
pub struct FsscDecoder {
    cfg: Arc<CodeConfig>,
    schedule: Arc<Schedule>,
    tree: MemoryTree,
}

impl FsscDecoder {
    pub fn new(cfg: Arc<CodeConfig>, schedule: Arc<Schedule>) -> Self {
        assert_eq!(schedule.block_len(), cfg.block_len(), "schedule built for another code");
        let tree = MemoryTree::new(cfg.log_len());
        FsscDecoder { cfg, schedule, tree }
    }

    pub fn config(&self) -> &CodeConfig {
        &self.cfg
    }

    /// The root partial sums are the codeword estimate; `u_hat` is recovered
    /// by re-encoding it.
    pub fn decode(&mut self, llrs: &[f32]) -> Estimate {
        self.tree.load_channel(llrs);
        for e in self.schedule.entries() {
            match e.op {
                Op::Alpha => self.tree.alpha_step(e.stage, e.branch),
                Op::Beta => self.tree.beta_step(e.stage, e.branch),
                op => {
                    let (alpha, out) = self.tree.node_io(e.stage, e.branch);
                    decode_node(op, alpha, out);
                }
            }
        }
        Estimate::from_codeword(self.tree.root_beta().to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sc::ScDecoder;
    use alloc::vec::Vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn spc_examples() {
        let mut out = [9u8; 4];
        spc_decode(&[1.0, -2.0, 3.0, -4.0], &mut out);
        assert_eq!(out, [0, 1, 0, 1]);
        spc_decode(&[1.0, -2.0, 3.0, 4.0], &mut out);
        assert_eq!(out, [1, 1, 0, 0]);
    }

    #[test]
    fn rep_example() {
        let mut out = [9u8; 4];
        rep_decode(&[1.0, -2.0, -3.0, 1.0], &mut out);
        assert_eq!(out, [1, 1, 1, 1]);
    }

    fn random_config(rng: &mut ChaCha8Rng, n: usize) -> Arc<CodeConfig> {
        let info: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        Arc::new(CodeConfig::from_info_set(n, info, None).unwrap())
    }

    #[test]
    fn agrees_with_sc_on_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in [2usize, 4, 8, 16, 32, 64] {
            for _ in 0..40 {
                let cfg = random_config(&mut rng, n);
                let sched = Arc::new(Schedule::build(&cfg));
                let mut sc = ScDecoder::new(cfg.clone());
                let mut fssc = FsscDecoder::new(cfg.clone(), sched);
                for _ in 0..25 {
                    let llrs: Vec<f32> = (0..n).map(|_| rng.random_range(-3.0..4.0)).collect();
                    let a = sc.decode(&llrs);
                    let b = fssc.decode(&llrs);
                    assert_eq!(a.u_hat, b.u_hat);
                    assert_eq!(a.codeword, b.codeword);
                }
            }
        }
    }
}
