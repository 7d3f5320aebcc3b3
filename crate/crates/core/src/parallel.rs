//! Shared worker pool. `MEANDER_THREADS` caps its size.

use std::sync::OnceLock;

use rayon::ThreadPool;

/// Environment variable holding the worker cap.
pub const THREADS_ENV: &str = "MEANDER_THREADS";

/// Worker count: `MEANDER_THREADS` when it is a positive integer, otherwise
/// the number of available cores.
pub fn worker_count() -> usize {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    match std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        Some(n) if n > 0 => n,
        _ => available,
    }
}

/// The process-wide pool, built on first use.
pub fn pool() -> &'static ThreadPool {
    static POOL: OnceLock<ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(worker_count())
            .thread_name(|i| format!("meander-worker-{i}"))
            .build()
            .expect("thread pool")
    })
}
