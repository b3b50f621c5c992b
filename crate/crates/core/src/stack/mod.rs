//! Stack (best-first) decoding: SCS, SCS-RM and FSSCS-RM.
//!
//! The path being extended is held outside the stack. Before each extension
//! the decoder compares it with the best stacked path and switches when the
//! stacked one has a strictly smaller metric. An information decision keeps
//! the more likely child and pushes the other. Once `L` paths of some length
//! `Ω` have been extended, every stacked path of length `≤ Ω` is dropped and no
//! further path of that length is extended. A full-length path that fails the
//! CRC is discarded; after `L` such failures, or when no candidates remain,
//! decoding stops with the last failed path flagged as a CRC failure.

mod fast;
pub mod flat;
mod scs;

use alloc::vec;
use alloc::vec::Vec;

pub use fast::FsscsRmDecoder;
pub use scs::{ScsDecoder, ScsRmDecoder};

use crate::Estimate;

/// Result of [`Stack::push`].
#[derive(Debug, PartialEq, Eq)]
pub enum Push<P> {
    Inserted,
    /// The stack was full; the returned payload had the largest metric and
    /// was evicted.
    Replaced(P),
    /// The stack was full and the new entry was not better than its worst.
    Rejected(P),
}

/// Bounded stack of paths stored as parallel metric/length/payload arrays.
/// The best entry is found by linear search.
#[derive(Debug, Clone)]
pub struct Stack<P> {
    capacity: usize,
    pm: Vec<f32>,
    pl: Vec<usize>,
    payload: Vec<P>,
    /// Slot of the best entry, if known.
    best: Option<usize>,
    peak: usize,
}

impl<P> Stack<P> {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity >= 1, "stack capacity must be at least 1");
        Stack {
            capacity,
            pm: Vec::new(),
            pl: Vec::new(),
            payload: Vec::new(),
            best: None,
            peak: 0,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.pm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pm.is_empty()
    }

    /// Largest occupancy since the last [`clear`](Self::clear).
    pub fn peak(&self) -> usize {
        self.peak
    }

    pub fn clear(&mut self, mut discard: impl FnMut(P)) {
        self.pm.clear();
        self.pl.clear();
        self.payload.drain(..).for_each(&mut discard);
        self.best = None;
        self.peak = 0;
    }

    pub fn lengths(&self) -> &[usize] {
        &self.pl
    }

    pub fn metrics(&self) -> &[f32] {
        &self.pm
    }

    /// Slot `a` precedes slot `b` in the pop order.
    #[inline]
    fn before(&self, a: usize, b: usize) -> bool {
        match self.pm[a].total_cmp(&self.pm[b]) {
            core::cmp::Ordering::Less => true,
            core::cmp::Ordering::Equal => a < b,
            core::cmp::Ordering::Greater => false,
        }
    }

    fn find_best(&mut self) -> Option<usize> {
        if self.best.is_none() && !self.pm.is_empty() {
            let mut best = 0;
            for s in 1..self.pm.len() {
                if self.pm[s] < self.pm[best] {
                    best = s;
                }
            }
            self.best = Some(best);
        }
        self.best
    }

    /// Smallest metric on the stack.
    pub fn min_pm(&mut self) -> Option<f32> {
        self.find_best().map(|s| self.pm[s])
    }

    pub fn push(&mut self, pm: f32, pl: usize, payload: P) -> Push<P> {
        let slot;
        let result = if self.pm.len() < self.capacity {
            slot = self.pm.len();
            self.pm.push(pm);
            self.pl.push(pl);
            self.payload.push(payload);
            self.peak = self.peak.max(self.pm.len());
            Push::Inserted
        } else {
            let mut worst = 0;
            for s in 1..self.pm.len() {
                if self.pm[s] > self.pm[worst] {
                    worst = s;
                }
            }
            if pm >= self.pm[worst] {
                return Push::Rejected(payload);
            }
            slot = worst;
            self.pm[slot] = pm;
            self.pl[slot] = pl;
            if self.best == Some(slot) {
                self.best = None;
            }
            Push::Replaced(core::mem::replace(&mut self.payload[slot], payload))
        };
        if let Some(b) = self.best {
            if self.before(slot, b) {
                self.best = Some(slot);
            }
        } else if self.pm.len() == 1 {
            self.best = Some(slot);
        }
        result
    }

    /// Removes the entry with the smallest metric (lowest slot on ties) and
    /// returns `(pm, pl, payload)`.
    pub fn pop_best(&mut self) -> Option<(f32, usize, P)> {
        let slot = self.find_best()?;
        self.best = None;
        let pm = self.pm.swap_remove(slot);
        let pl = self.pl.swap_remove(slot);
        let payload = self.payload.swap_remove(slot);
        Some((pm, pl, payload))
    }

    /// Removes every entry of length `≤ max_len`.
    pub fn prune_lengths(&mut self, max_len: usize, mut discard: impl FnMut(P)) {
        let mut s = 0;
        while s < self.pl.len() {
            if self.pl[s] <= max_len {
                self.pm.swap_remove(s);
                self.pl.swap_remove(s);
                discard(self.payload.swap_remove(s));
            } else {
                s += 1;
            }
        }
        self.best = None;
    }
}

/// Number of paths extended from each length.
#[derive(Debug, Clone)]
pub struct ExtensionCounter {
    counts: Vec<u32>,
}

impl ExtensionCounter {
    pub fn new(block_len: usize) -> Self {
        ExtensionCounter {
            counts: vec![0; block_len + 1],
        }
    }

    pub fn reset(&mut self) {
        self.counts.fill(0);
    }

    #[inline]
    pub fn get(&self, len: usize) -> u32 {
        self.counts[len]
    }

    /// Records one more extension from `len` and returns the new count.
    #[inline]
    pub fn increment(&mut self, len: usize) -> u32 {
        self.counts[len] += 1;
        self.counts[len]
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StackStats {
    /// Leaf bit estimates made, summed over all paths.
    pub iterations: u64,
    /// Times the decoder resumed a stacked path.
    pub path_switches: u64,
    pub stack_peak: usize,
    pub crc_failed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StackOutput {
    pub estimate: Estimate,
    pub pm: f32,
    pub stats: StackStats,
}
