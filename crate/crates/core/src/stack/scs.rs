//! Bit-by-bit stack decoding with two memory organizations.
//!
//! [`ScsDecoder`] keeps α/β memory for every stacked path in a lazy-copy pool.
//! [`ScsRmDecoder`] keeps only each path's decided bits and a single
//! [`MemoryTree`]; resuming a stacked path rebuilds the partial sums from its
//! bits and recomputes the LLRs from the channel. Both run the same search.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{ExtensionCounter, Push, Stack, StackOutput, StackStats};
use crate::code::CodeConfig;
use crate::encode::Encoding;
use crate::kernel::{hard_decision, penalty};
use crate::list::{LazyMemoryPool, PathId, TreeStore};
use crate::tree::MemoryTree;
use crate::Estimate;

/// Where a decoder keeps the state of its paths.
pub(crate) trait SearchMemory {
    type Path: Clone;

    fn start(&mut self, llrs: &[f32]) -> Self::Path;

    /// LLR of leaf `index` for a path whose first `index` bits are decided.
    fn leaf_llr(&mut self, path: &mut Self::Path, index: usize) -> f32;

    fn decide(&mut self, path: &mut Self::Path, index: usize, bit: u8);

    /// A copy of `path` (whose leaf `index` LLR is current) that decides
    /// `bit` at `index`.
    fn branch(&mut self, path: &Self::Path, index: usize, bit: u8) -> Self::Path;

    /// Makes `path`, just popped from the stack, the one being extended.
    fn resume(&mut self, path: &mut Self::Path);

    fn discard(&mut self, path: Self::Path);

    /// Codeword of a full-length path.
    fn codeword(&mut self, path: &mut Self::Path) -> Vec<u8>;
}

/// Per-path lazy-copy memory.
#[derive(Debug, Clone)]
pub(crate) struct FullMemory {
    pool: LazyMemoryPool,
}

#[derive(Debug, Clone)]
pub(crate) struct FullPath {
    id: PathId,
    /// A leaf decision not yet written into the path's memory.
    pending: Option<(usize, u8)>,
}

impl FullMemory {
    fn flush(&mut self, path: &mut FullPath) {
        if let Some((index, bit)) = path.pending.take() {
            self.pool.set_leaf(path.id, index, bit);
            self.pool.update_beta(path.id, 0, index);
        }
    }
}

impl SearchMemory for FullMemory {
    type Path = FullPath;

    fn start(&mut self, llrs: &[f32]) -> FullPath {
        FullPath {
            id: self.pool.start(llrs),
            pending: None,
        }
    }

    fn leaf_llr(&mut self, path: &mut FullPath, index: usize) -> f32 {
        self.flush(path);
        self.pool.calc_alpha(path.id, 0, index);
        self.pool.alpha(path.id, 0)[0]
    }

    fn decide(&mut self, path: &mut FullPath, index: usize, bit: u8) {
        self.pool.set_leaf(path.id, index, bit);
        self.pool.update_beta(path.id, 0, index);
    }

    fn branch(&mut self, path: &FullPath, index: usize, bit: u8) -> FullPath {
        FullPath {
            id: self.pool.fork(path.id),
            pending: Some((index, bit)),
        }
    }

    fn resume(&mut self, _path: &mut FullPath) {}

    fn discard(&mut self, path: FullPath) {
        self.pool.release(path.id);
    }

    fn codeword(&mut self, path: &mut FullPath) -> Vec<u8> {
        self.flush(path);
        self.pool.root_beta(path.id).to_vec()
    }
}

/// One shared memory tree; paths carry only their decided bits.
#[derive(Debug, Clone)]
pub(crate) struct ReducedMemory {
    tree: MemoryTree,
    /// Set when the tree holds another path's LLRs.
    switched: bool,
    spare: Vec<Vec<u8>>,
}

#[derive(Debug, Clone)]
pub(crate) struct RmPath {
    u: Vec<u8>,
}

impl SearchMemory for ReducedMemory {
    type Path = RmPath;

    fn start(&mut self, llrs: &[f32]) -> RmPath {
        self.tree.load_channel(llrs);
        self.switched = false;
        let mut u = self.spare.pop().unwrap_or_default();
        u.clear();
        RmPath { u }
    }

    fn leaf_llr(&mut self, _path: &mut RmPath, index: usize) -> f32 {
        if self.switched {
            self.tree.calc_alpha_from_root(0, index);
            self.switched = false;
        } else {
            self.tree.calc_alpha(0, index);
        }
        self.tree.alpha(0)[0]
    }

    fn decide(&mut self, path: &mut RmPath, index: usize, bit: u8) {
        path.u.push(bit);
        self.tree.set_leaf(index, bit);
        self.tree.update_beta(0, index);
    }

    fn branch(&mut self, path: &RmPath, index: usize, bit: u8) -> RmPath {
        let mut u = self.spare.pop().unwrap_or_default();
        u.clear();
        u.extend_from_slice(&path.u[..index]);
        u.push(bit);
        RmPath { u }
    }

    fn resume(&mut self, path: &mut RmPath) {
        self.tree.repopulate_beta(&path.u);
        self.switched = true;
    }

    fn discard(&mut self, path: RmPath) {
        self.spare.push(path.u);
    }

    fn codeword(&mut self, _path: &mut RmPath) -> Vec<u8> {
        self.tree.root_beta().to_vec()
    }
}

/// The stack search shared by both memory organizations.
#[derive(Debug, Clone)]
pub(crate) struct Search<M: SearchMemory> {
    cfg: Arc<CodeConfig>,
    encoding: Encoding,
    list_size: u32,
    mem: M,
    stack: Stack<M::Path>,
    counter: ExtensionCounter,
}

impl<M: SearchMemory> Search<M> {
    fn new(cfg: Arc<CodeConfig>, list_size: usize, stack_size: usize, encoding: Encoding, mem: M) -> Self {
        assert!(list_size >= 1, "list size must be at least 1");
        let counter = ExtensionCounter::new(cfg.block_len());
        Search {
            cfg,
            encoding,
            list_size: list_size as u32,
            mem,
            stack: Stack::new(stack_size),
            counter,
        }
    }

    fn store(&mut self, pm: f32, pl: usize, path: M::Path) {
        match self.stack.push(pm, pl, path) {
            Push::Inserted => {}
            Push::Replaced(p) | Push::Rejected(p) => self.mem.discard(p),
        }
    }

    fn decode(&mut self, llrs: &[f32]) -> StackOutput {
        let n = self.cfg.block_len();
        let mem = &mut self.mem;
        self.stack.clear(|p| mem.discard(p));
        self.counter.reset();
        let mut stats = StackStats::default();
        let mut failures = 0;
        let mut best_effort: Option<(Estimate, f32)> = None;

        let mut cur = Some(self.mem.start(llrs));
        let mut pm = 0.0f32;
        let mut pl = 0usize;
        loop {
            let Some(path) = cur.as_mut() else {
                // Replace `cur` with the best stacked path.
                match self.stack.pop_best() {
                    Some((p_pm, p_pl, mut path)) => {
                        self.mem.resume(&mut path);
                        stats.path_switches += 1;
                        cur = Some(path);
                        pm = p_pm;
                        pl = p_pl;
                        continue;
                    }
                    None => break,
                }
            };
            if pl == n {
                let est = Estimate::from_codeword(self.mem.codeword(path));
                let passed = self.cfg.block_passes(&est.block(&self.cfg, self.encoding));
                self.mem.discard(cur.take().unwrap());
                if passed {
                    stats.stack_peak = self.stack.peak();
                    return StackOutput { estimate: est, pm, stats };
                }
                failures += 1;
                best_effort = Some((est, pm));
                if failures == self.list_size {
                    break;
                }
                continue;
            }
            if self.counter.get(pl) >= self.list_size {
                self.mem.discard(cur.take().unwrap());
                continue;
            }
            if self.stack.min_pm().is_some_and(|m| m < pm) {
                self.store(pm, pl, cur.take().unwrap());
                continue;
            }

            stats.iterations += 1;
            if self.counter.increment(pl) == self.list_size {
                let mem = &mut self.mem;
                self.stack.prune_lengths(pl, |p| mem.discard(p));
            }
            let path = cur.as_mut().unwrap();
            let llr = self.mem.leaf_llr(path, pl);
            let bit = if self.cfg.is_info(pl) {
                let hd = hard_decision(llr);
                let other = self.mem.branch(path, pl, hd ^ 1);
                match self.stack.push(pm + penalty(llr, hd ^ 1), pl + 1, other) {
                    Push::Inserted => {}
                    Push::Replaced(p) | Push::Rejected(p) => self.mem.discard(p),
                }
                hd
            } else {
                0
            };
            pm += penalty(llr, bit);
            self.mem.decide(path, pl, bit);
            pl += 1;
        }

        stats.crc_failed = true;
        stats.stack_peak = self.stack.peak();
        let (estimate, pm) = best_effort.unwrap_or_else(|| (Estimate::from_codeword(alloc::vec![0; n]), f32::INFINITY));
        StackOutput { estimate, pm, stats }
    }
}

/// Stack decoder with per-path lazy-copy α/β memory.
#[derive(Debug, Clone)]
pub struct ScsDecoder {
    search: Search<FullMemory>,
}

impl ScsDecoder {
    /// `list_size` is the number of extensions allowed per path length and
    /// of CRC failures tolerated; `stack_size` bounds the stack.
    pub fn new(cfg: Arc<CodeConfig>, list_size: usize, stack_size: usize, encoding: Encoding) -> Self {
        let mem = FullMemory {
            pool: LazyMemoryPool::with_log_len(cfg.log_len()),
        };
        ScsDecoder {
            search: Search::new(cfg, list_size, stack_size, encoding, mem),
        }
    }

    pub fn config(&self) -> &CodeConfig {
        &self.search.cfg
    }

    pub fn decode(&mut self, llrs: &[f32]) -> StackOutput {
        self.search.decode(llrs)
    }

    pub fn pool(&self) -> &LazyMemoryPool {
        &self.search.mem.pool
    }
}

/// Stack decoder with a single α/β memory, rebuilt on every path switch.
#[derive(Debug, Clone)]
pub struct ScsRmDecoder {
    search: Search<ReducedMemory>,
}

impl ScsRmDecoder {
    pub fn new(cfg: Arc<CodeConfig>, list_size: usize, stack_size: usize, encoding: Encoding) -> Self {
        let mem = ReducedMemory {
            tree: MemoryTree::new(cfg.log_len()),
            switched: false,
            spare: Vec::new(),
        };
        ScsRmDecoder {
            search: Search::new(cfg, list_size, stack_size, encoding, mem),
        }
    }

    pub fn config(&self) -> &CodeConfig {
        &self.search.cfg
    }

    pub fn decode(&mut self, llrs: &[f32]) -> StackOutput {
        self.search.decode(llrs)
    }
}
