//! Per-path α/β memory for decoders that track several paths at once.
//!
//! [`LazyMemoryPool`] shares stage blocks between paths and duplicates a block
//! only when a path writes to a block that someone else still references.
//! [`FullCopyStore`] gives every path its own [`MemoryTree`] and copies it on
//! every fork; it exists as a reference for testing the pool.

use alloc::vec;
use alloc::vec::Vec;

use crate::tree::{alpha_kernel, beta_kernel, MemoryTree};

/// Handle of a path inside a store.
pub type PathId = usize;

/// Path-indexed α/β memory.
///
/// Stage layout and the meaning of `(stage, branch)` follow
/// [`MemoryTree`].
pub trait TreeStore {
    fn with_log_len(log_len: usize) -> Self
    where
        Self: Sized;

    fn log_len(&self) -> usize;

    /// Drops every path, loads the channel LLRs and returns the root path.
    fn start(&mut self, llrs: &[f32]) -> PathId;

    /// A new path sharing all of `path`'s memory.
    fn fork(&mut self, path: PathId) -> PathId;

    fn release(&mut self, path: PathId);

    fn alpha_step(&mut self, path: PathId, stage: usize, branch: usize);

    fn alpha(&self, path: PathId, stage: usize) -> &[f32];

    /// The node's LLRs with its writable partial sums.
    fn node_io(&mut self, path: PathId, stage: usize, branch: usize) -> (&[f32], &mut [u8]);

    /// Combines the children of node `(stage + 1, branch / 2)`; `branch` odd.
    fn beta_step(&mut self, path: PathId, stage: usize, branch: usize);

    fn root_beta(&self, path: PathId) -> &[u8];

    fn calc_alpha(&mut self, path: PathId, stage: usize, branch: usize) {
        if stage == self.log_len() {
            return;
        }
        if branch & 1 == 0 {
            self.calc_alpha(path, stage + 1, branch >> 1);
        }
        self.alpha_step(path, stage, branch);
    }

    fn update_beta(&mut self, path: PathId, stage: usize, branch: usize) {
        let (mut stage, mut branch) = (stage, branch);
        while branch & 1 == 1 && stage < self.log_len() {
            self.beta_step(path, stage, branch);
            stage += 1;
            branch >>= 1;
        }
    }

    fn set_leaf(&mut self, path: PathId, index: usize, bit: u8) {
        self.node_io(path, 0, index).1[0] = bit;
    }
}

const NONE: u32 = u32::MAX;

/// Reference-counted fixed-size blocks of one stage.
#[derive(Debug, Clone)]
struct Blocks<T> {
    size: usize,
    data: Vec<T>,
    refs: Vec<u32>,
    free: Vec<u32>,
}

impl<T: Copy + Default> Blocks<T> {
    fn new(size: usize) -> Self {
        Blocks {
            size,
            data: Vec::new(),
            refs: Vec::new(),
            free: Vec::new(),
        }
    }

    fn alloc(&mut self) -> u32 {
        let h = match self.free.pop() {
            Some(h) => h,
            None => {
                self.data.resize(self.data.len() + self.size, T::default());
                self.refs.push(0);
                (self.refs.len() - 1) as u32
            }
        };
        self.refs[h as usize] = 1;
        h
    }

    fn retain(&mut self, h: u32) {
        self.refs[h as usize] += 1;
    }

    fn release(&mut self, h: u32) {
        let r = &mut self.refs[h as usize];
        *r -= 1;
        if *r == 0 {
            self.free.push(h);
        }
    }

    #[inline]
    fn get(&self, h: u32) -> &[T] {
        let off = h as usize * self.size;
        &self.data[off..off + self.size]
    }

    #[inline]
    fn get_mut(&mut self, h: u32) -> &mut [T] {
        let off = h as usize * self.size;
        &mut self.data[off..off + self.size]
    }

    /// Makes `*h` exclusively owned, copying the contents when `copy` is set.
    #[inline]
    fn own(&mut self, h: &mut u32, copy: bool) {
        if *h == NONE {
            *h = self.alloc();
        } else if self.refs[*h as usize] > 1 {
            let old = *h;
            self.refs[old as usize] -= 1;
            let new = self.alloc();
            if copy {
                let size = self.size;
                self.data
                    .copy_within(old as usize * size..(old as usize + 1) * size, new as usize * size);
            }
            *h = new;
        }
    }

    fn live(&self) -> usize {
        self.refs.iter().filter(|&&r| r > 0).count()
    }
}

/// Lazy-copy α/β memory: stage blocks are shared between paths and a block is
/// duplicated only when a path writes into a shared one. α blocks are always
/// overwritten whole, so they are reallocated without copying; β blocks are
/// written half at a time and are copied.
#[derive(Debug, Clone)]
pub struct LazyMemoryPool {
    log_len: usize,
    alpha: Vec<Blocks<f32>>,
    beta: Vec<Blocks<u8>>,
    /// `handles[path]` holds `log_len + 1` α handles then `log_len + 1` β handles.
    handles: Vec<Vec<u32>>,
    active: Vec<bool>,
    free_paths: Vec<PathId>,
}

impl LazyMemoryPool {
    #[inline]
    fn ah(&self, path: PathId, stage: usize) -> u32 {
        self.handles[path][stage]
    }

    #[inline]
    fn bh(&self, path: PathId, stage: usize) -> u32 {
        self.handles[path][self.log_len + 1 + stage]
    }

    fn release_all(&mut self) {
        for path in 0..self.handles.len() {
            if self.active[path] {
                self.release(path);
            }
        }
    }

    /// Number of blocks with a nonzero reference count, α and β together.
    pub fn live_blocks(&self) -> usize {
        self.alpha.iter().map(Blocks::live).sum::<usize>() + self.beta.iter().map(Blocks::live).sum::<usize>()
    }

    pub fn active_paths(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    /// Checks that every reference count equals the number of active handles
    /// pointing at the block and that free lists hold exactly the unreferenced
    /// blocks.
    pub fn audit(&self) -> Result<(), &'static str> {
        let n = self.log_len;
        let mut a_refs: Vec<Vec<u32>> = self.alpha.iter().map(|b| vec![0; b.refs.len()]).collect();
        let mut b_refs: Vec<Vec<u32>> = self.beta.iter().map(|b| vec![0; b.refs.len()]).collect();
        for (path, hs) in self.handles.iter().enumerate() {
            if !self.active[path] {
                continue;
            }
            for s in 0..=n {
                if hs[s] != NONE {
                    a_refs[s][hs[s] as usize] += 1;
                }
                if hs[n + 1 + s] != NONE {
                    b_refs[s][hs[n + 1 + s] as usize] += 1;
                }
            }
        }
        for s in 0..=n {
            if a_refs[s] != self.alpha[s].refs || b_refs[s] != self.beta[s].refs {
                return Err("reference count differs from handle count");
            }
            for (blocks, refs) in [(&self.alpha[s].free, &a_refs[s]), (&self.beta[s].free, &b_refs[s])] {
                let mut free = blocks.clone();
                free.sort_unstable();
                free.dedup();
                if free.len() != blocks.len() {
                    return Err("block freed twice");
                }
                let unreferenced = refs.iter().filter(|&&r| r == 0).count();
                if free.len() != unreferenced || free.iter().any(|&h| refs[h as usize] != 0) {
                    return Err("free list out of sync");
                }
            }
        }
        Ok(())
    }
}

impl TreeStore for LazyMemoryPool {
    fn with_log_len(log_len: usize) -> Self {
        LazyMemoryPool {
            log_len,
            alpha: (0..=log_len).map(|s| Blocks::new(1 << s)).collect(),
            beta: (0..=log_len).map(|s| Blocks::new(2 << s)).collect(),
            handles: Vec::new(),
            active: Vec::new(),
            free_paths: Vec::new(),
        }
    }

    fn log_len(&self) -> usize {
        self.log_len
    }

    fn start(&mut self, llrs: &[f32]) -> PathId {
        self.release_all();
        let n = self.log_len;
        let path = match self.free_paths.pop() {
            Some(p) => p,
            None => {
                self.handles.push(vec![NONE; 2 * (n + 1)]);
                self.active.push(false);
                self.handles.len() - 1
            }
        };
        self.active[path] = true;
        for s in 0..=n {
            let a = self.alpha[s].alloc();
            let b = self.beta[s].alloc();
            self.beta[s].get_mut(b).fill(0);
            self.handles[path][s] = a;
            self.handles[path][n + 1 + s] = b;
        }
        let root = self.ah(path, n);
        self.alpha[n].get_mut(root).copy_from_slice(llrs);
        path
    }

    fn fork(&mut self, path: PathId) -> PathId {
        let n = self.log_len;
        let new = match self.free_paths.pop() {
            Some(p) => p,
            None => {
                self.handles.push(vec![NONE; 2 * (n + 1)]);
                self.active.push(false);
                self.handles.len() - 1
            }
        };
        self.active[new] = true;
        for i in 0..2 * (n + 1) {
            let h = self.handles[path][i];
            self.handles[new][i] = h;
            if h != NONE {
                if i <= n {
                    self.alpha[i].retain(h);
                } else {
                    self.beta[i - n - 1].retain(h);
                }
            }
        }
        new
    }

    fn release(&mut self, path: PathId) {
        assert!(self.active[path], "path released twice");
        let n = self.log_len;
        for i in 0..2 * (n + 1) {
            let h = core::mem::replace(&mut self.handles[path][i], NONE);
            if h != NONE {
                if i <= n {
                    self.alpha[i].release(h);
                } else {
                    self.beta[i - n - 1].release(h);
                }
            }
        }
        self.active[path] = false;
        self.free_paths.push(path);
    }

    fn alpha_step(&mut self, path: PathId, stage: usize, branch: usize) {
        let mut h = self.ah(path, stage);
        self.alpha[stage].own(&mut h, false);
        self.handles[path][stage] = h;
        let ph = self.ah(path, stage + 1);
        let bh = self.bh(path, stage);
        let (lo, hi) = self.alpha.split_at_mut(stage + 1);
        alpha_kernel(lo[stage].get_mut(h), hi[0].get(ph), branch, self.beta[stage].get(bh));
    }

    #[inline]
    fn alpha(&self, path: PathId, stage: usize) -> &[f32] {
        self.alpha[stage].get(self.ah(path, stage))
    }

    fn node_io(&mut self, path: PathId, stage: usize, branch: usize) -> (&[f32], &mut [u8]) {
        let idx = self.log_len + 1 + stage;
        let mut h = self.handles[path][idx];
        self.beta[stage].own(&mut h, true);
        self.handles[path][idx] = h;
        let size = 1 << stage;
        let off = (branch & 1) * size;
        let ah = self.ah(path, stage);
        (self.alpha[stage].get(ah), &mut self.beta[stage].get_mut(h)[off..off + size])
    }

    fn beta_step(&mut self, path: PathId, stage: usize, branch: usize) {
        debug_assert!(branch & 1 == 1);
        let idx = self.log_len + 1 + stage + 1;
        let mut h = self.handles[path][idx];
        self.beta[stage + 1].own(&mut h, true);
        self.handles[path][idx] = h;
        let size = 1 << stage;
        let parent_off = ((branch >> 1) & 1) * (2 * size);
        let ch = self.bh(path, stage);
        let (lo, hi) = self.beta.split_at_mut(stage + 1);
        let child = lo[stage].get(ch);
        let (left, right) = child.split_at(size);
        beta_kernel(&mut hi[0].get_mut(h)[parent_off..parent_off + 2 * size], left, right);
    }

    fn root_beta(&self, path: PathId) -> &[u8] {
        let n = self.log_len;
        &self.beta[n].get(self.bh(path, n))[..1 << n]
    }
}

/// Naive reference store: one full [`MemoryTree`] per path, copied on fork.
#[derive(Debug, Clone)]
pub struct FullCopyStore {
    log_len: usize,
    trees: Vec<Option<MemoryTree>>,
}

impl FullCopyStore {
    fn tree(&self, path: PathId) -> &MemoryTree {
        self.trees[path].as_ref().expect("inactive path")
    }

    fn tree_mut(&mut self, path: PathId) -> &mut MemoryTree {
        self.trees[path].as_mut().expect("inactive path")
    }
}

impl TreeStore for FullCopyStore {
    fn with_log_len(log_len: usize) -> Self {
        FullCopyStore {
            log_len,
            trees: Vec::new(),
        }
    }

    fn log_len(&self) -> usize {
        self.log_len
    }

    fn start(&mut self, llrs: &[f32]) -> PathId {
        self.trees.clear();
        let mut tree = MemoryTree::new(self.log_len);
        tree.load_channel(llrs);
        self.trees.push(Some(tree));
        0
    }

    fn fork(&mut self, path: PathId) -> PathId {
        let copy = self.tree(path).clone();
        match self.trees.iter().position(Option::is_none) {
            Some(slot) => {
                self.trees[slot] = Some(copy);
                slot
            }
            None => {
                self.trees.push(Some(copy));
                self.trees.len() - 1
            }
        }
    }

    fn release(&mut self, path: PathId) {
        assert!(self.trees[path].take().is_some(), "path released twice");
    }

    fn alpha_step(&mut self, path: PathId, stage: usize, branch: usize) {
        self.tree_mut(path).alpha_step(stage, branch);
    }

    fn alpha(&self, path: PathId, stage: usize) -> &[f32] {
        self.tree(path).alpha(stage)
    }

    fn node_io(&mut self, path: PathId, stage: usize, branch: usize) -> (&[f32], &mut [u8]) {
        self.tree_mut(path).node_io(stage, branch)
    }

    fn beta_step(&mut self, path: PathId, stage: usize, branch: usize) {
        self.tree_mut(path).beta_step(stage, branch);
    }

    fn root_beta(&self, path: PathId) -> &[u8] {
        self.tree(path).root_beta()
    }
}
