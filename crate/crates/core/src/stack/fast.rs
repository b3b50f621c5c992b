//! Stack decoding over the fast-simplified schedule with a flat β array.
//!
//! A stacked path is its metric, length, position in the schedule and its
//! flat N-bit partial-sum array. The decoder owns one α memory. Resuming a
//! stacked path needs no β reconstruction: the flat array already holds every
//! completed node's partial sums, so the next LLR computation simply starts
//! again from the channel, taking each g-stage's partial sums straight from
//! the flat array.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::flat::{flat_beta_combine, flat_segment};
use super::{ExtensionCounter, Push, Stack, StackOutput, StackStats};
use crate::code::CodeConfig;
use crate::list::extend::{extend_node, Candidates};
use crate::schedule::{Op, Schedule};
use crate::tree::AlphaMemory;
use crate::Estimate;

#[derive(Debug, Clone)]
struct FastPath {
    /// Next schedule entry to execute.
    next: usize,
    flat: Vec<u8>,
}

/// Stack decoder over the fast-simplified schedule. Requires systematic
/// encoding: the message is read from the flat array at the information set.
#[derive(Debug, Clone)]
pub struct FsscsRmDecoder {
    cfg: Arc<CodeConfig>,
    schedule: Arc<Schedule>,
    list_size: u32,
    alpha: AlphaMemory,
    stack: Stack<FastPath>,
    counter: ExtensionCounter,
    cands: Candidates,
    order: Vec<usize>,
    spare: Vec<Vec<u8>>,
}

impl FsscsRmDecoder {
    pub fn new(cfg: Arc<CodeConfig>, schedule: Arc<Schedule>, list_size: usize, stack_size: usize) -> Self {
        assert!(list_size >= 1, "list size must be at least 1");
        assert_eq!(schedule.block_len(), cfg.block_len(), "schedule built for another code");
        FsscsRmDecoder {
            alpha: AlphaMemory::new(cfg.log_len()),
            stack: Stack::new(stack_size),
            counter: ExtensionCounter::new(cfg.block_len()),
            cands: Candidates::new(),
            order: Vec::new(),
            spare: Vec::new(),
            list_size: list_size as u32,
            cfg,
            schedule,
        }
    }

    pub fn config(&self) -> &CodeConfig {
        &self.cfg
    }

    fn buffer(&mut self) -> Vec<u8> {
        self.spare.pop().unwrap_or_else(|| vec![0; self.cfg.block_len()])
    }

    fn store(&mut self, pm: f32, pl: usize, path: FastPath) {
        match self.stack.push(pm, pl, path) {
            Push::Inserted => {}
            Push::Replaced(p) | Push::Rejected(p) => self.spare.push(p.flat),
        }
    }

    /// LLRs of node `(stage, branch)` computed from the channel down, with
    /// left-sibling partial sums read from `flat`.
    fn alpha_from_root(&mut self, flat: &[u8], stage: usize, branch: usize) {
        let start = branch << stage;
        for s in (stage..self.cfg.log_len()).rev() {
            let b = start >> s;
            let left = if b & 1 == 1 { flat_segment(flat, s, b - 1) } else { &[] };
            self.alpha.step(s, b, left);
        }
    }

    pub fn decode(&mut self, llrs: &[f32]) -> StackOutput {
        let n = self.cfg.block_len();
        let schedule = Arc::clone(&self.schedule);
        let entries = schedule.entries();
        let spare = &mut self.spare;
        self.stack.clear(|p| spare.push(p.flat));
        self.counter.reset();
        self.alpha.load_channel(llrs);
        let mut stats = StackStats::default();
        let mut failures = 0;
        let mut best_effort: Option<(Vec<u8>, f32)> = None;

        let mut flat = self.buffer();
        flat.fill(0);
        let mut cur = Some(FastPath { next: 0, flat });
        let mut pm = 0.0f32;
        let mut pl = 0usize;
        let mut switched = false;
        loop {
            let Some(path) = cur.as_mut() else {
                match self.stack.pop_best() {
                    Some((p_pm, p_pl, path)) => {
                        stats.path_switches += 1;
                        cur = Some(path);
                        pm = p_pm;
                        pl = p_pl;
                        switched = true;
                        continue;
                    }
                    None => break,
                }
            };
            if path.next == entries.len() {
                let flat = cur.take().unwrap().flat;
                if self.cfg.block_passes(&self.cfg.gather(&flat)) {
                    stats.stack_peak = self.stack.peak();
                    return StackOutput {
                        estimate: Estimate::from_codeword(flat),
                        pm,
                        stats,
                    };
                }
                failures += 1;
                if let Some((old, _)) = best_effort.replace((flat, pm)) {
                    self.spare.push(old);
                }
                if failures == self.list_size {
                    break;
                }
                continue;
            }
            let e = entries[path.next];
            match e.op {
                Op::Alpha => {
                    if switched {
                        self.alpha_from_root(&path.flat, e.stage, e.branch);
                        switched = false;
                    } else {
                        let left = if e.branch & 1 == 1 {
                            flat_segment(&path.flat, e.stage, e.branch - 1)
                        } else {
                            &[]
                        };
                        self.alpha.step(e.stage, e.branch, left);
                    }
                    path.next += 1;
                }
                Op::Beta => {
                    flat_beta_combine(&mut path.flat, e.stage, e.branch);
                    path.next += 1;
                }
                op => {
                    if self.counter.get(pl) >= self.list_size {
                        self.spare.push(cur.take().unwrap().flat);
                        continue;
                    }
                    stats.iterations += e.size() as u64;
                    if self.counter.increment(pl) == self.list_size {
                        let spare = &mut self.spare;
                        self.stack.prune_lengths(pl, |p| spare.push(p.flat));
                    }
                    let mut path = cur.take().unwrap();
                    self.extend(&mut path, &mut pm, op, e.stage, e.branch);
                    pl = e.end_length;
                    if self.stack.min_pm().is_some_and(|m| m < pm) {
                        self.store(pm, pl, path);
                    } else {
                        cur = Some(path);
                    }
                }
            }
        }

        stats.crc_failed = true;
        stats.stack_peak = self.stack.peak();
        let (flat, pm) = best_effort.unwrap_or_else(|| (vec![0; n], f32::INFINITY));
        let estimate = Estimate::from_codeword(flat);
        StackOutput { estimate, pm, stats }
    }

    /// Extends `cur` at a constituent node: the best candidate continues in
    /// place and the others are pushed.
    fn extend(&mut self, cur: &mut FastPath, pm: &mut f32, op: Op, stage: usize, branch: usize) {
        let mut cands = core::mem::take(&mut self.cands);
        extend_node(op, self.alpha.stage(stage), &mut cands);
        self.order.clear();
        self.order.extend(0..cands.len());
        self.order
            .sort_by(|&a, &b| cands[a].delta.total_cmp(&cands[b].delta).then(a.cmp(&b)));
        let size = 1 << stage;
        let seg = branch * size..(branch + 1) * size;
        let end = (branch + 1) * size;
        for k in 1..self.order.len() {
            let c = cands[self.order[k]];
            let mut flat = self.buffer();
            flat.copy_from_slice(&cur.flat);
            c.bits.write(self.alpha.stage(stage), &mut flat[seg.clone()]);
            self.store(
                *pm + c.delta,
                end,
                FastPath {
                    next: cur.next + 1,
                    flat,
                },
            );
        }
        let best = cands[self.order[0]];
        best.bits.write(self.alpha.stage(stage), &mut cur.flat[seg]);
        *pm += best.delta;
        cur.next += 1;
        self.cands = cands;
    }
}
