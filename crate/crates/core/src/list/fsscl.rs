use alloc::sync::Arc;

use super::{ListOutput, PathList, TreeStore};
use crate::code::CodeConfig;
use crate::encode::Encoding;
use crate::schedule::{Op, Schedule};
use crate::LazyMemoryPool;

/// List decoder over the fast-simplified schedule: constituent nodes extend
/// every path in one step with the rules of [`super::extend`].
#[derive(Debug, Clone)]
pub struct FssclDecoder<S = LazyMemoryPool> {
    cfg: Arc<CodeConfig>,
    schedule: Arc<Schedule>,
    encoding: Encoding,
    list: PathList<S>,
}

impl<S: TreeStore> FssclDecoder<S> {
    pub fn new(cfg: Arc<CodeConfig>, schedule: Arc<Schedule>, list_size: usize, encoding: Encoding) -> Self {
        assert_eq!(schedule.block_len(), cfg.block_len(), "schedule built for another code");
        let list = PathList::new(cfg.log_len(), list_size);
        FssclDecoder {
            cfg,
            schedule,
            encoding,
            list,
        }
    }

    pub fn config(&self) -> &CodeConfig {
        &self.cfg
    }

    pub fn list_size(&self) -> usize {
        self.list.list_size
    }

    pub fn store(&self) -> &S {
        &self.list.store
    }

    pub fn decode(&mut self, llrs: &[f32]) -> ListOutput {
        self.list.start(llrs);
        for e in self.schedule.entries() {
            match e.op {
                Op::Alpha => self.list.alpha_step(e.stage, e.branch),
                Op::Beta => self.list.beta_step(e.stage, e.branch),
                op => self.list.extend(op, e.stage, e.branch),
            }
        }
        self.list.finish(&self.cfg, self.encoding)
    }
}
