//! CRC-aided list decoding (SCL and FSSCL).
//!
//! Both decoders keep at most `L` paths, each with its own α/β memory in a
//! [`TreeStore`]. After every extension step the candidate paths are ranked by
//! path metric and only the best `L` survive. A surviving candidate inherits
//! its parent's memory: the first survivor of a parent takes the parent's
//! handle over and any further survivor forks it.

pub mod extend;
pub mod store;

mod fsscl;
mod scl;

use alloc::vec::Vec;
use core::cmp::Ordering;

pub use fsscl::FssclDecoder;
pub use scl::SclDecoder;
pub use store::{FullCopyStore, LazyMemoryPool, PathId, TreeStore};

use crate::code::CodeConfig;
use crate::encode::Encoding;
use crate::kernel::penalty;
use crate::schedule::Op;
use crate::Estimate;
use extend::{extend_node, Candidates};

/// Path metric after deciding `bit` at a leaf with LLR `llr`.
#[inline]
pub fn pm_update_leaf(pm: f32, llr: f32, bit: u8) -> f32 {
    pm + penalty(llr, bit)
}

/// One extension of one list path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub pm: f32,
    /// Position of the parent in the current list.
    pub parent: usize,
    /// Index of the candidate among its parent's candidates.
    pub ordinal: usize,
}

fn rank(a: &Candidate, b: &Candidate) -> Ordering {
    a.pm.total_cmp(&b.pm)
        .then(a.parent.cmp(&b.parent))
        .then(a.ordinal.cmp(&b.ordinal))
}

/// Keeps the `l` best candidates, ranked by metric, then parent position, then
/// ordinal. The survivors are left in rank order.
pub fn prune_to_l(cands: &mut Vec<Candidate>, l: usize) {
    if cands.len() > l && l > 0 {
        cands.select_nth_unstable_by(l - 1, rank);
    }
    cands.truncate(l);
    cands.sort_unstable_by(rank);
}

/// A path that reached the end of the code.
#[derive(Debug, Clone, PartialEq)]
pub struct Finalist {
    pub pm: f32,
    pub codeword: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ListOutput {
    /// The selected path: the best metric among paths passing the CRC, or the
    /// best metric overall if none passes.
    pub estimate: Estimate,
    pub pm: f32,
    pub crc_failed: bool,
    /// Leaf bit estimates made, summed over all paths.
    pub iterations: u64,
    /// All final paths, best metric first.
    pub finalists: Vec<Finalist>,
}

#[derive(Debug, Clone, Copy)]
struct ListPath {
    id: PathId,
    pm: f32,
}

/// The active list and the scratch space for one extension step.
#[derive(Debug, Clone)]
struct PathList<S> {
    store: S,
    list_size: usize,
    paths: Vec<ListPath>,
    next: Vec<ListPath>,
    cands: Vec<Candidate>,
    node_cands: Vec<Candidates>,
    claimed: Vec<bool>,
    iterations: u64,
}

impl<S: TreeStore> PathList<S> {
    fn new(log_len: usize, list_size: usize) -> Self {
        assert!(list_size >= 1, "list size must be at least 1");
        PathList {
            store: S::with_log_len(log_len),
            list_size,
            paths: Vec::with_capacity(list_size),
            next: Vec::with_capacity(list_size),
            cands: Vec::new(),
            node_cands: Vec::new(),
            claimed: Vec::new(),
            iterations: 0,
        }
    }

    fn start(&mut self, llrs: &[f32]) {
        let root = self.store.start(llrs);
        self.paths.clear();
        self.paths.push(ListPath { id: root, pm: 0.0 });
        self.iterations = 0;
    }

    fn alpha_step(&mut self, stage: usize, branch: usize) {
        for p in &self.paths {
            self.store.alpha_step(p.id, stage, branch);
        }
    }

    fn calc_alpha(&mut self, stage: usize, branch: usize) {
        for p in &self.paths {
            self.store.calc_alpha(p.id, stage, branch);
        }
    }

    fn beta_step(&mut self, stage: usize, branch: usize) {
        for p in &self.paths {
            self.store.beta_step(p.id, stage, branch);
        }
    }

    fn update_beta(&mut self, stage: usize, branch: usize) {
        for p in &self.paths {
            self.store.update_beta(p.id, stage, branch);
        }
    }

    /// Extends every path at constituent node `(stage, branch)` and prunes to
    /// the list size. Node LLRs must be current for every path.
    fn extend(&mut self, op: Op, stage: usize, branch: usize) {
        let count = self.paths.len();
        self.iterations += (count << stage) as u64;
        if self.node_cands.len() < count {
            self.node_cands.resize(count, Candidates::new());
        }
        self.cands.clear();
        for (j, p) in self.paths.iter().enumerate() {
            let nc = &mut self.node_cands[j];
            extend_node(op, self.store.alpha(p.id, stage), nc);
            for (o, c) in nc.iter().enumerate() {
                self.cands.push(Candidate {
                    pm: p.pm + c.delta,
                    parent: j,
                    ordinal: o,
                });
            }
        }
        prune_to_l(&mut self.cands, self.list_size);

        self.claimed.clear();
        self.claimed.resize(count, false);
        self.next.clear();
        for c in &self.cands {
            let parent = self.paths[c.parent].id;
            let id = if self.claimed[c.parent] {
                self.store.fork(parent)
            } else {
                self.claimed[c.parent] = true;
                parent
            };
            self.next.push(ListPath { id, pm: c.pm });
        }
        for (p, &claimed) in self.paths.iter().zip(&self.claimed) {
            if !claimed {
                self.store.release(p.id);
            }
        }
        for (c, p) in self.cands.iter().zip(&self.next) {
            let bits = self.node_cands[c.parent][c.ordinal].bits;
            let (alpha, out) = self.store.node_io(p.id, stage, branch);
            bits.write(alpha, out);
        }
        core::mem::swap(&mut self.paths, &mut self.next);
    }

    /// Ranks the final paths and applies the CRC.
    fn finish(&self, cfg: &CodeConfig, encoding: Encoding) -> ListOutput {
        let mut order: Vec<usize> = (0..self.paths.len()).collect();
        order.sort_by(|&a, &b| self.paths[a].pm.total_cmp(&self.paths[b].pm).then(a.cmp(&b)));
        let finalists: Vec<Finalist> = order
            .iter()
            .map(|&j| Finalist {
                pm: self.paths[j].pm,
                codeword: self.store.root_beta(self.paths[j].id).to_vec(),
            })
            .collect();
        let mut selected = None;
        for (k, f) in finalists.iter().enumerate() {
            let est = Estimate::from_codeword(f.codeword.clone());
            if cfg.block_passes(&est.block(cfg, encoding)) {
                selected = Some((k, est));
                break;
            }
        }
        let (k, estimate, crc_failed) = match selected {
            Some((k, est)) => (k, est, false),
            None => (0, Estimate::from_codeword(finalists[0].codeword.clone()), true),
        };
        ListOutput {
            estimate,
            pm: finalists[k].pm,
            crc_failed,
            iterations: self.iterations,
            finalists,
        }
    }

    fn path_count(&self) -> usize {
        self.paths.len()
    }
}
