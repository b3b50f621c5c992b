//! Flat N-bit partial-sum array.
//!
//! Node `(λ, φ)` owns positions `[φ·2^λ, (φ+1)·2^λ)`. Decided node bits are
//! written at the node's position and combined with their left sibling by an
//! in-place XOR, so the segment of a completed node always holds that node's
//! partial sums and the whole array holds the codeword once decoding ends.

/// Writes the bits of node `(stage, branch)`.
pub fn flat_beta_write(flat: &mut [u8], stage: usize, branch: usize, bits: &[u8]) {
    let size = 1 << stage;
    debug_assert_eq!(bits.len(), size);
    flat[branch * size..(branch + 1) * size].copy_from_slice(bits);
}

/// Merges odd node `(stage, branch)` with its left sibling into their parent:
/// the left segment is XOR-ed with the right one.
#[inline]
pub fn flat_beta_combine(flat: &mut [u8], stage: usize, branch: usize) {
    debug_assert!(branch & 1 == 1);
    let size = 1 << stage;
    let (left, right) = flat[(branch - 1) * size..(branch + 1) * size].split_at_mut(size);
    for (l, &r) in left.iter_mut().zip(right.iter()) {
        *l ^= r;
    }
}

/// Merges upward from odd node `(stage, branch)` for as long as the merged
/// node is itself an odd branch.
pub fn flat_beta_propagate(flat: &mut [u8], stage: usize, branch: usize) {
    let log_len = flat.len().trailing_zeros() as usize;
    let (mut stage, mut branch) = (stage, branch);
    while branch & 1 == 1 && stage < log_len {
        flat_beta_combine(flat, stage, branch);
        stage += 1;
        branch >>= 1;
    }
}

/// Partial sums of completed node `(stage, branch)`.
#[inline]
pub fn flat_segment(flat: &[u8], stage: usize, branch: usize) -> &[u8] {
    let size = 1 << stage;
    &flat[branch * size..(branch + 1) * size]
}
