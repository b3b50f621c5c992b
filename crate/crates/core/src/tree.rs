//! Stage-indexed α (LLR) and β (partial-sum) scratch memory.
//!
//! Node `(λ, φ)` spans leaves `[φ·2^λ, (φ+1)·2^λ)`. Stage `λ` of the α memory
//! holds `2^λ` LLRs: the node of that stage currently being decoded. Stage `λ`
//! of the β memory holds `2^(λ+1)` bits: the even child of a stage-`λ+1` node
//! at offset 0 and the odd child at offset `2^λ`. The root β lives at offset 0
//! of stage `n`.

use alloc::vec;
use alloc::vec::Vec;

use crate::kernel::{f, g};

/// Computes the LLRs of node `(stage, branch)` from its parent's LLRs.
///
/// `left` holds the partial sums of the left sibling `(stage, branch - 1)` and
/// is only read for odd branches. The lower half of the parent carries the
/// odd child's bits directly and the upper half carries them XOR-ed with the
/// sibling's, so the odd child takes `g(lower, upper, s)`.
#[inline]
pub fn alpha_kernel(out: &mut [f32], parent: &[f32], branch: usize, left: &[u8]) {
    let half = out.len();
    let (top, bottom) = parent.split_at(half);
    if branch & 1 == 0 {
        for ((o, &a), &b) in out.iter_mut().zip(top).zip(bottom) {
            *o = f(a, b);
        }
    } else {
        for (((o, &a), &b), &s) in out.iter_mut().zip(top).zip(bottom).zip(&left[..half]) {
            *o = g(b, a, s);
        }
    }
}

/// Parent partial sums `(l ⊕ r ∥ r)` from the two children.
#[inline]
pub fn beta_kernel(out: &mut [u8], left: &[u8], right: &[u8]) {
    let half = left.len();
    let (lo, hi) = out.split_at_mut(half);
    for ((o, &l), &r) in lo.iter_mut().zip(left).zip(right) {
        *o = l ^ r;
    }
    hi.copy_from_slice(right);
}

/// Single-branch LLR memory: `2^λ` slots per stage, `2N - 1` in total.
#[derive(Debug, Clone)]
pub struct AlphaMemory {
    stages: Vec<Vec<f32>>,
}

impl AlphaMemory {
    pub fn new(log_len: usize) -> Self {
        AlphaMemory {
            stages: (0..=log_len).map(|s| vec![0.0; 1 << s]).collect(),
        }
    }

    pub fn log_len(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn load_channel(&mut self, llrs: &[f32]) {
        let root = self.stages.last_mut().expect("at least one stage");
        assert_eq!(root.len(), llrs.len(), "channel LLR count must equal the block length");
        root.copy_from_slice(llrs);
    }

    #[inline]
    pub fn stage(&self, stage: usize) -> &[f32] {
        &self.stages[stage]
    }

    /// One level of the LLR recursion for node `(stage, branch)`.
    #[inline]
    pub fn step(&mut self, stage: usize, branch: usize, left: &[u8]) {
        let (lo, hi) = self.stages.split_at_mut(stage + 1);
        alpha_kernel(&mut lo[stage], &hi[0], branch, left);
    }

    pub fn slots(&self) -> usize {
        self.stages.iter().map(Vec::len).sum()
    }
}

/// The α/β memory of a single SC decoding path.
#[derive(Debug, Clone)]
pub struct MemoryTree {
    alpha: AlphaMemory,
    beta: Vec<Vec<u8>>,
}

impl MemoryTree {
    pub fn new(log_len: usize) -> Self {
        MemoryTree {
            alpha: AlphaMemory::new(log_len),
            beta: (0..=log_len).map(|s| vec![0u8; 2 << s]).collect(),
        }
    }

    pub fn log_len(&self) -> usize {
        self.beta.len() - 1
    }

    pub fn block_len(&self) -> usize {
        1 << self.log_len()
    }

    /// Loads the channel LLRs into the root stage and clears all partial sums.
    pub fn load_channel(&mut self, llrs: &[f32]) {
        self.alpha.load_channel(llrs);
        for stage in &mut self.beta {
            stage.fill(0);
        }
    }

    #[inline]
    pub fn alpha(&self, stage: usize) -> &[f32] {
        self.alpha.stage(stage)
    }

    /// The full `2^(stage+1)`-slot β array of a stage.
    pub fn beta_stage(&self, stage: usize) -> &[u8] {
        &self.beta[stage]
    }

    /// Partial sums of node `(stage, branch)`.
    #[inline]
    pub fn node_beta(&self, stage: usize, branch: usize) -> &[u8] {
        let size = 1 << stage;
        let off = (branch & 1) * size;
        &self.beta[stage][off..off + size]
    }

    #[inline]
    pub fn node_beta_mut(&mut self, stage: usize, branch: usize) -> &mut [u8] {
        let size = 1 << stage;
        let off = (branch & 1) * size;
        &mut self.beta[stage][off..off + size]
    }

    /// The node's LLRs together with its writable partial sums.
    #[inline]
    pub fn node_io(&mut self, stage: usize, branch: usize) -> (&[f32], &mut [u8]) {
        let size = 1 << stage;
        let off = (branch & 1) * size;
        (self.alpha.stage(stage), &mut self.beta[stage][off..off + size])
    }

    /// Partial sums at the root: the codeword estimate once decoding is done.
    pub fn root_beta(&self) -> &[u8] {
        let n = self.log_len();
        &self.beta[n][..1 << n]
    }

    /// One level of the LLR recursion (no upward recursion).
    #[inline]
    pub fn alpha_step(&mut self, stage: usize, branch: usize) {
        let left = &self.beta[stage];
        self.alpha.step(stage, branch, left);
    }

    /// LLRs of node `(stage, branch)`, recursing upward through even branches
    /// only: an odd branch reuses the parent LLRs computed for its sibling.
    pub fn calc_alpha(&mut self, stage: usize, branch: usize) {
        if stage == self.log_len() {
            return;
        }
        if branch & 1 == 0 {
            self.calc_alpha(stage + 1, branch >> 1);
        }
        self.alpha_step(stage, branch);
    }

    /// Like [`calc_alpha`](Self::calc_alpha) but recomputes the whole spine
    /// from the channel LLRs, for use after the partial sums were replaced.
    pub fn calc_alpha_from_root(&mut self, stage: usize, branch: usize) {
        if stage == self.log_len() {
            return;
        }
        self.calc_alpha_from_root(stage + 1, branch >> 1);
        self.alpha_step(stage, branch);
    }

    /// Combines the two children of node `(stage + 1, branch / 2)` into the
    /// parent's slot. `branch` must be odd.
    #[inline]
    pub fn beta_step(&mut self, stage: usize, branch: usize) {
        debug_assert!(branch & 1 == 1);
        let size = 1 << stage;
        let parent_off = ((branch >> 1) & 1) * (2 * size);
        let (lo, hi) = self.beta.split_at_mut(stage + 1);
        let (left, right) = lo[stage].split_at(size);
        beta_kernel(&mut hi[0][parent_off..parent_off + 2 * size], left, right);
    }

    /// Propagates partial sums upward after node `(stage, branch)` completes,
    /// for as long as the completed node is an odd branch.
    pub fn update_beta(&mut self, stage: usize, branch: usize) {
        let mut stage = stage;
        let mut branch = branch;
        while branch & 1 == 1 && stage < self.log_len() {
            self.beta_step(stage, branch);
            stage += 1;
            branch >>= 1;
        }
    }

    #[inline]
    pub fn set_leaf(&mut self, index: usize, bit: u8) {
        self.beta[0][index & 1] = bit;
    }

    /// Rebuilds the partial sums implied by the decided prefix `u_hat`.
    pub fn repopulate_beta(&mut self, u_hat: &[u8]) {
        for (i, &bit) in u_hat.iter().enumerate() {
            self.set_leaf(i, bit);
            self.update_beta(0, i);
        }
    }

    pub fn alpha_slots(&self) -> usize {
        self.alpha.slots()
    }

    pub fn beta_slots(&self) -> usize {
        self.beta.iter().map(Vec::len).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_sizes() {
        let t = MemoryTree::new(3);
        assert_eq!(t.alpha_slots(), 15);
        assert_eq!(t.beta_slots(), 30);
        for s in 0..=3 {
            assert_eq!(t.alpha(s).len(), 1 << s);
            assert_eq!(t.beta_stage(s).len(), 2 << s);
        }
    }

    #[test]
    fn two_leaf_tree() {
        let mut t = MemoryTree::new(1);
        t.load_channel(&[2.0, -3.0]);
        t.calc_alpha(0, 0);
        assert_eq!(t.alpha(0)[0], -2.0);
        t.set_leaf(0, 1);
        t.calc_alpha(0, 1);
        // u1 = c1 = c0 ^ u0: LLR(u1) = -3 + (-1)^1 * 2.
        assert_eq!(t.alpha(0)[0], -5.0);
    }

    #[test]
    fn beta_combination() {
        let mut t = MemoryTree::new(1);
        t.set_leaf(0, 1);
        t.set_leaf(1, 1);
        t.update_beta(0, 1);
        assert_eq!(t.root_beta(), &[0, 1]);
        t.set_leaf(0, 0);
        t.set_leaf(1, 1);
        t.update_beta(0, 1);
        assert_eq!(t.root_beta(), &[1, 1]);
    }

    #[test]
    fn even_branch_update_is_noop() {
        let mut t = MemoryTree::new(2);
        t.set_leaf(0, 1);
        t.update_beta(0, 0);
        assert_eq!(t.beta_stage(1), &[0, 0, 0, 0]);
    }

    #[test]
    fn repopulated_root_is_the_codeword() {
        let u = [1u8, 0, 1, 1, 0, 0, 1, 0];
        let mut t = MemoryTree::new(3);
        t.repopulate_beta(&u);
        assert_eq!(t.root_beta(), crate::encode(&u).unwrap().as_slice());
    }
}
