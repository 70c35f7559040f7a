//! Order-preserving parallel map over index ranges.
//!
//! The worker count is `min(QHOPF_THREADS, available cores)`; results are
//! always returned in index order so reports do not depend on scheduling.

use std::num::NonZeroUsize;
use std::thread;

pub fn worker_count() -> usize {
    let cores = thread::available_parallelism().map(NonZeroUsize::get).unwrap_or(1);
    match std::env::var("QHOPF_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        Some(cap) if cap >= 1 => cap.min(cores),
        _ => cores,
    }
}

/// `(0..n).map(f)` evaluated on up to [`worker_count`] threads.
pub fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = worker_count().min(n.max(1));
    if workers <= 1 || n < 2 * workers {
        return (0..n).map(f).collect();
    }
    let chunk = n.div_ceil(workers);
    let f = &f;
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| s.spawn(move || (w * chunk..((w + 1) * chunk).min(n)).map(f).collect::<Vec<T>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}
