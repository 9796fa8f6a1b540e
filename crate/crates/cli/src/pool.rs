//! A small fan-out helper for batch and sweep: jobs are indexed, results are
//! collated by index, so output never depends on completion order.

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicUsize, Ordering};

fn worker_count(jobs: usize) -> usize {
    let configured = std::env::var("QTWP_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1);
    let default = std::thread::available_parallelism()
        .map(NonZeroUsize::get)
        .unwrap_or(1);
    configured.unwrap_or(default).min(jobs.max(1))
}

/// Evaluate `f(0..jobs)` across worker threads (capped by QTWP_THREADS) and
/// return the results in index order.
pub fn run_parallel<T, F>(jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = worker_count(jobs);
    if workers <= 1 {
        return (0..jobs).map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let mut collected: Vec<(usize, T)> = Vec::with_capacity(jobs);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= jobs {
                            break;
                        }
                        local.push((i, f(i)));
                    }
                    local
                })
            })
            .collect();
        for handle in handles {
            collected.extend(handle.join().expect("worker thread panicked"));
        }
    });
    collected.sort_by_key(|&(i, _)| i);
    collected.into_iter().map(|(_, value)| value).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn results_come_back_in_index_order() {
        let squares = run_parallel(257, |i| i * i);
        assert_eq!(squares.len(), 257);
        for (i, &sq) in squares.iter().enumerate() {
            assert_eq!(sq, i * i);
        }
    }
}
