//! Data-parallel fan-out with a sequential fallback.
//!
//! All parallel inner loops in the crate (per-vertex ray batches, pairwise
//! edge LPs, circuit scans) go through [`indexed_map`], which collects in
//! index order so results are identical in both modes. Built without the
//! `parallel` feature everything is sequential; built with it, a process-wide
//! switch can still force the sequential path, which is what the benchmarks
//! use to compare the two.

#[cfg(feature = "parallel")]
use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
static PARALLEL_ENABLED: AtomicBool = AtomicBool::new(true);

/// Turns the rayon path on or off at runtime. No-op without the `parallel`
/// feature.
pub fn set_parallel(enabled: bool) {
    #[cfg(feature = "parallel")]
    PARALLEL_ENABLED.store(enabled, Ordering::Relaxed);
    #[cfg(not(feature = "parallel"))]
    let _ = enabled;
}

pub fn parallel_enabled() -> bool {
    #[cfg(feature = "parallel")]
    {
        PARALLEL_ENABLED.load(Ordering::Relaxed)
    }
    #[cfg(not(feature = "parallel"))]
    {
        false
    }
}

/// Caps the rayon worker count. Call once, before any parallel work; `1`
/// disables the parallel path entirely.
pub fn configure_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        if threads == 1 {
            set_parallel(false);
        } else if threads > 1 {
            // Ignore the error from a pool that is already initialized.
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}

/// `(0..n).map(f)` collected in index order, on rayon when enabled.
pub(crate) fn indexed_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if PARALLEL_ENABLED.load(Ordering::Relaxed) {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}
