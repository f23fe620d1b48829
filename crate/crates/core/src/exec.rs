//! Execution strategy for the data-parallel sweeps.
//!
//! Every sweep in the crate is a map over an index range followed by an
//! associative merge. With the `parallel` feature the merge runs on the rayon
//! pool; without it, or with [`Exec::Sequential`], it is a plain fold.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this strategy actually runs on multiple threads in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    pub(crate) fn map_reduce<T, M, Id, F>(
        self,
        range: Range<usize>,
        map: M,
        identity: Id,
        merge: F,
    ) -> T
    where
        T: Send,
        M: Fn(usize) -> T + Sync + Send,
        Id: Fn() -> T + Sync + Send,
        F: Fn(T, T) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return range.into_par_iter().map(map).reduce(identity, merge);
        }
        range.map(map).fold(identity(), merge)
    }

    /// Order-preserving map over an index range.
    pub(crate) fn map_collect<T, M>(self, range: Range<usize>, map: M) -> Vec<T>
    where
        T: Send,
        M: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return range.into_par_iter().map(map).collect();
        }
        range.map(map).collect()
    }
}
