//! Execution strategy for embarrassingly parallel loops.
//!
//! Every parallel loop in the crate derives per-item randomness from the item
//! index alone, so [`Exec::Sequential`] and [`Exec::Parallel`] give identical
//! results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Exec {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Exec {
    /// `(0..n).map(f).collect()`, in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..n).map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
        }
    }

    /// First `Some` in index order; the same item wins in both modes.
    pub fn find_map_first<T, F>(self, n: u64, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..n).find_map(f),
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().find_map_first(f),
        }
    }
}
