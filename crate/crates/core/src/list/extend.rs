//! Path-extension candidates for constituent nodes.
//!
//! Each rule looks at the node LLRs of one path and returns the candidate bit
//! patterns for that node together with their path-metric increments. Flip
//! candidates are expressed relative to the node's hard-decision word.

use arrayvec::ArrayVec;

use crate::kernel::{hard_decision, penalty};
use crate::schedule::Op;

/// Most candidates any rule emits (SPC).
pub const MAX_CANDIDATES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NodeBits {
    Zeros,
    Ones,
    /// The hard-decision word with the listed positions flipped.
    Flip { flips: [u32; 4], count: u8 },
}

impl NodeBits {
    fn flips(positions: &[u32]) -> Self {
        let mut flips = [0u32; 4];
        flips[..positions.len()].copy_from_slice(positions);
        NodeBits::Flip {
            flips,
            count: positions.len() as u8,
        }
    }

    /// Writes the candidate's bits; `alpha` supplies the hard decisions.
    pub fn write(&self, alpha: &[f32], out: &mut [u8]) {
        match *self {
            NodeBits::Zeros => out.fill(0),
            NodeBits::Ones => out.fill(1),
            NodeBits::Flip { flips, count } => {
                for (o, &a) in out.iter_mut().zip(alpha) {
                    *o = hard_decision(a);
                }
                for &i in &flips[..count as usize] {
                    out[i as usize] ^= 1;
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeCandidate {
    pub delta: f32,
    pub bits: NodeBits,
}

pub type Candidates = ArrayVec<NodeCandidate, MAX_CANDIDATES>;

/// Penalty of forcing every bit of the node to `bit`.
fn constant_penalty(alpha: &[f32], bit: u8) -> f32 {
    alpha.iter().map(|&a| penalty(a, bit)).sum()
}

/// Rate-0: the all-zero word.
pub fn extend_r0(alpha: &[f32], out: &mut Candidates) {
    out.push(NodeCandidate {
        delta: constant_penalty(alpha, 0),
        bits: NodeBits::Zeros,
    });
}

/// Repetition: all zeros, then all ones.
pub fn extend_rep(alpha: &[f32], out: &mut Candidates) {
    out.push(NodeCandidate {
        delta: constant_penalty(alpha, 0),
        bits: NodeBits::Zeros,
    });
    out.push(NodeCandidate {
        delta: constant_penalty(alpha, 1),
        bits: NodeBits::Ones,
    });
}

/// Indices of the `K` smallest `|alpha|`, ascending, lower index first on
/// ties. Fewer than `K` when the node is smaller.
fn least_reliable<const K: usize>(alpha: &[f32]) -> ArrayVec<u32, K> {
    let mut best: ArrayVec<u32, K> = ArrayVec::new();
    for (i, a) in alpha.iter().enumerate() {
        let mag = a.abs();
        // First slot whose magnitude is strictly larger: earlier indices win ties.
        let pos = best
            .iter()
            .position(|&j| alpha[j as usize].abs() > mag)
            .unwrap_or(best.len());
        if pos < K {
            if best.is_full() {
                best.pop();
            }
            best.insert(pos, i as u32);
        }
    }
    best
}

/// Rate-1 (Chase-II): no flip, flip m1, flip m2, flip both. A single bit
/// yields its two values.
pub fn extend_r1(alpha: &[f32], out: &mut Candidates) {
    let m: ArrayVec<u32, 2> = least_reliable(alpha);
    let mag = |i: u32| alpha[i as usize].abs();
    out.push(NodeCandidate {
        delta: 0.0,
        bits: NodeBits::flips(&[]),
    });
    out.push(NodeCandidate {
        delta: mag(m[0]),
        bits: NodeBits::flips(&m[..1]),
    });
    if m.len() == 2 {
        out.push(NodeCandidate {
            delta: mag(m[1]),
            bits: NodeBits::flips(&m[1..]),
        });
        out.push(NodeCandidate {
            delta: mag(m[0]) + mag(m[1]),
            bits: NodeBits::flips(&m),
        });
    }
}

/// Single parity check: subsets of the (up to) four least reliable positions
/// whose size has the parity of the hard-decision word, in increasing subset
/// mask order (bit `j` of the mask selects `m_{j+1}`).
pub fn extend_spc(alpha: &[f32], out: &mut Candidates) {
    let m: ArrayVec<u32, 4> = least_reliable(alpha);
    let parity = alpha.iter().fold(0u32, |p, &a| p ^ hard_decision(a) as u32);
    for mask in 0u32..1 << m.len() {
        if mask.count_ones() & 1 != parity {
            continue;
        }
        let mut picked: ArrayVec<u32, 4> = ArrayVec::new();
        let mut delta = 0.0;
        for (j, &i) in m.iter().enumerate() {
            if mask >> j & 1 == 1 {
                picked.push(i);
                delta += alpha[i as usize].abs();
            }
        }
        out.push(NodeCandidate {
            delta,
            bits: NodeBits::flips(&picked),
        });
    }
}

/// A single leaf: bit 0 then bit 1 if it carries information, else bit 0.
pub fn extend_leaf(llr: f32, info: bool, out: &mut Candidates) {
    out.push(NodeCandidate {
        delta: penalty(llr, 0),
        bits: NodeBits::Zeros,
    });
    if info {
        out.push(NodeCandidate {
            delta: penalty(llr, 1),
            bits: NodeBits::Ones,
        });
    }
}

/// Candidates of a constituent-node schedule entry.
pub fn extend_node(op: Op, alpha: &[f32], out: &mut Candidates) {
    out.clear();
    match op {
        Op::Rate0 => extend_r0(alpha, out),
        Op::Rate1 => extend_r1(alpha, out),
        Op::Rep => extend_rep(alpha, out),
        Op::Spc => extend_spc(alpha, out),
        Op::Leaf { info } => extend_leaf(alpha[0], info, out),
        Op::Alpha | Op::Beta => unreachable!("not a constituent node"),
    }
}
