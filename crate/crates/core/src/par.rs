// SPDX-License-Identifier: Apache-2.0

//! Data-parallel helpers with a sequential fallback.
//!
//! Every hot loop in the crate goes through these functions so that the
//! `parallel` feature (rayon) can be switched off at compile time, and so
//! that benches can compare both paths at run time via [`Exec`].

use std::ops::Range;

/// Execution strategy for a data-parallel loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is on, otherwise sequential.
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// `range.map(f).collect()`, order preserved.
pub fn map_range<R, F>(exec: Exec, range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).collect();
    }
    let _ = exec;
    range.map(f).collect()
}

/// `items.iter().map(f).collect()`, order preserved.
pub fn map_slice<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Flattened `range.flat_map(f)`, order preserved.
pub fn flat_map_range<R, F>(exec: Exec, range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> Vec<R> + Sync + Send,
{
    map_range(exec, range, f).into_iter().flatten().collect()
}

/// Runs `f` inside a rayon pool bounded to `threads` workers (0 = default).
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        return pool.install(f);
    }
    let _ = threads;
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        let a = map_range(Exec::Sequential, 0..1000, |i| i * i);
        let b = map_range(Exec::Parallel, 0..1000, |i| i * i);
        assert_eq!(a, b);
        let c = flat_map_range(Exec::Parallel, 0..10, |i| vec![i; i]);
        assert_eq!(c.len(), 45);
        assert_eq!(with_threads(2, || map_slice(Exec::Parallel, &[1, 2, 3], |x| x + 1)), vec![2, 3, 4]);
    }
}
