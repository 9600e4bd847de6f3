//! Data-parallel facade.
//!
//! Batch work (extension streams, filter passes, solver calls on distinct
//! graphs) funnels through these helpers. With the `parallel` feature the
//! closures run on the rayon pool; without it the same code compiles to
//! plain sequential iteration. Callers must not rely on execution order —
//! results are reassembled in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving input order in the output.
#[cfg(feature = "parallel")]
pub fn map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Send + Sync) -> Vec<U> {
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, U>(items: &[T], f: impl Fn(&T) -> U) -> Vec<U> {
    items.iter().map(f).collect()
}

/// Sequential twin of [`map`], available regardless of features; the bench
/// suite uses it as the baseline.
pub fn map_seq<T, U>(items: &[T], f: impl Fn(&T) -> U) -> Vec<U> {
    items.iter().map(f).collect()
}

/// True when the parallel code path is compiled in.
pub fn parallelism_enabled() -> bool {
    cfg!(feature = "parallel")
}

/// Sizes the global worker pool. Must run before any parallel work; a
/// no-op (reported as an error string) once the pool exists or when the
/// crate was built without the `parallel` feature.
#[cfg(feature = "parallel")]
pub fn set_worker_threads(jobs: usize) -> Result<(), String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| e.to_string())
}

#[cfg(not(feature = "parallel"))]
pub fn set_worker_threads(_jobs: usize) -> Result<(), String> {
    Err("built without the parallel feature; running sequentially".into())
}
