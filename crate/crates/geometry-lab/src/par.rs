//! Parallel switch. With the `parallel` feature, maps over levels and
//! quadrature chunks use rayon; reductions always combine chunk results in
//! index order so values do not depend on the thread count.

use std::sync::atomic::{AtomicBool, Ordering};

static PARALLEL: AtomicBool = AtomicBool::new(cfg!(feature = "parallel"));

pub fn set_parallel(on: bool) {
    PARALLEL.store(on && cfg!(feature = "parallel"), Ordering::Relaxed);
}

pub fn is_parallel() -> bool {
    PARALLEL.load(Ordering::Relaxed)
}

pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() && items.len() > 1 {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

pub const CHUNK: usize = 512;

/// Sums `f` over fixed-size chunks of `n` items, combining in chunk order.
pub fn chunked_sum<U, F, A>(n: usize, f: F, add: A) -> Option<U>
where
    U: Send,
    F: Fn(std::ops::Range<usize>) -> U + Sync + Send,
    A: Fn(U, U) -> U,
{
    let ranges: Vec<std::ops::Range<usize>> = (0..n).step_by(CHUNK).map(|s| s..(s + CHUNK).min(n)).collect();
    map(&ranges, |r| f(r.clone())).into_iter().reduce(add)
}
