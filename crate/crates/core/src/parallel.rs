//! Worker pools keyed by size.
//!
//! Every parallel routine takes an explicit worker count. Results never
//! depend on it: work is split at fixed boundaries and recombined in
//! index order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::{ThreadPool, ThreadPoolBuilder};

/// Runs `f` inside a pool of `workers` threads (0 means one per CPU).
pub fn install<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    let workers = if workers == 0 { std::thread::available_parallelism().map_or(1, |n| n.get()) } else { workers };
    if workers == rayon::current_num_threads() && rayon::current_thread_index().is_some() {
        return f();
    }
    pool(workers).install(f)
}

fn pool(workers: usize) -> Arc<ThreadPool> {
    static POOLS: OnceLock<Mutex<HashMap<usize, Arc<ThreadPool>>>> = OnceLock::new();
    let pools = POOLS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = pools.lock().expect("pool registry poisoned");
    guard
        .entry(workers)
        .or_insert_with(|| {
            Arc::new(
                ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .thread_name(|i| format!("artin-kappa-{i}"))
                    .build()
                    .expect("thread pool builds"),
            )
        })
        .clone()
}
