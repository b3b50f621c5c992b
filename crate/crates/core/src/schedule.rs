//! Precomputed fast-simplified SC schedule.
//!
//! The decoding tree is pruned at constituent codes that can be decoded in
//! one step: rate-0 (all frozen), rate-1 (all information), repetition (only
//! the last leaf is information) and single-parity-check (only the first leaf
//! is frozen). Patterns are tested in that order at every subtree of two or
//! more leaves; a single leaf that is reached by recursion is a `Leaf` entry.

use alloc::vec::Vec;
use core::fmt;

use crate::code::CodeConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    /// Compute the LLRs of the node from its parent.
    Alpha,
    /// Combine the partial sums of the node (an odd branch) with its left
    /// sibling into the parent.
    Beta,
    Rate0,
    Rate1,
    Rep,
    Spc,
    Leaf { info: bool },
}

impl Op {
    /// True for entries that decide bits.
    pub fn is_node(self) -> bool {
        !matches!(self, Op::Alpha | Op::Beta)
    }

    pub fn name(self) -> &'static str {
        match self {
            Op::Alpha => "ALPHA",
            Op::Beta => "BETA",
            Op::Rate0 => "R0",
            Op::Rate1 => "R1",
            Op::Rep => "REP",
            Op::Spc => "SPC",
            Op::Leaf { info: true } => "LEAF_INFO",
            Op::Leaf { info: false } => "LEAF_FROZEN",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub op: Op,
    pub stage: usize,
    pub branch: usize,
    /// Number of leading bits decided once this entry has run.
    pub end_length: usize,
}

impl Entry {
    pub fn size(&self) -> usize {
        1 << self.stage
    }

    /// First leaf index covered by the entry's node.
    pub fn start(&self) -> usize {
        self.branch << self.stage
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    block_len: usize,
    entries: Vec<Entry>,
}

impl Schedule {
    pub fn build(cfg: &CodeConfig) -> Self {
        let mask = cfg.info_mask();
        let mut prefix = Vec::with_capacity(mask.len() + 1);
        prefix.push(0usize);
        for &m in mask {
            prefix.push(prefix.last().unwrap() + m as usize);
        }
        let mut entries = Vec::new();
        visit(mask, &prefix, cfg.log_len(), 0, &mut entries);
        Schedule {
            block_len: cfg.block_len(),
            entries,
        }
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    /// Number of bit-deciding entries.
    pub fn node_count(&self) -> usize {
        self.entries.iter().filter(|e| e.op.is_node()).count()
    }
}

fn visit(mask: &[bool], prefix: &[usize], stage: usize, branch: usize, out: &mut Vec<Entry>) {
    let size = 1usize << stage;
    let start = branch * size;
    let end = start + size;
    let info = prefix[end] - prefix[start];
    let node = |op| Entry {
        op,
        stage,
        branch,
        end_length: end,
    };
    if stage == 0 {
        out.push(node(Op::Leaf { info: mask[start] }));
        return;
    }
    let kind = if info == 0 {
        Some(Op::Rate0)
    } else if info == size {
        Some(Op::Rate1)
    } else if info == 1 && mask[end - 1] {
        Some(Op::Rep)
    } else if info == size - 1 && !mask[start] {
        Some(Op::Spc)
    } else {
        None
    };
    if let Some(op) = kind {
        out.push(node(op));
        return;
    }
    let child = stage - 1;
    for b in [2 * branch, 2 * branch + 1] {
        out.push(Entry {
            op: Op::Alpha,
            stage: child,
            branch: b,
            end_length: b << child,
        });
        visit(mask, prefix, child, b, out);
    }
    out.push(Entry {
        op: Op::Beta,
        stage: child,
        branch: 2 * branch + 1,
        end_length: end,
    });
}

impl fmt::Display for Schedule {
    /// One entry per line: `OP lambda phi end_length`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{} {} {} {}", e.op.name(), e.stage, e.branch, e.end_length)?;
        }
        Ok(())
    }
}
