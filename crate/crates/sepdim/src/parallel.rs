//! Worker-parallel drivers over the core's partitionable scans.
//!
//! Verification statically partitions the 4-subset index space by stride and
//! merges per-worker histograms by addition, so the result is independent of
//! the worker count. The search partitions the candidate space by the second
//! member's enumeration index; the first witness found cancels the other
//! workers, so only the verdict (not the reported witness) is deterministic
//! under more than one worker.

use std::sync::atomic::AtomicBool;
use std::sync::atomic::Ordering;
use std::thread;
use std::time::Instant;

use sepdim_core::error::Error;
use sepdim_core::perm::PermFamily;
use sepdim_core::search::{search_size_partition, SearchResult};
use sepdim_core::verify::{
    separation_histogram_strided, Histogram, SeparationProfile,
};

pub fn default_workers() -> usize {
    thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

pub fn separation_profile_parallel(fam: &PermFamily, workers: usize) -> SeparationProfile {
    let workers = workers.max(1);
    if workers == 1 || fam.n() < 4 {
        return SeparationProfile::from_histogram(separation_histogram_strided(fam, 0, 1));
    }
    let mut merged = Histogram::new();
    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| scope.spawn(move || separation_histogram_strided(fam, w, workers)))
            .collect();
        for handle in handles {
            for (count, freq) in handle.join().expect("verification worker panicked") {
                *merged.entry(count).or_insert(0) += freq;
            }
        }
    });
    SeparationProfile::from_histogram(merged)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Examines sizes 3, 6, ..., max_size; within each size the candidate space
/// is split across workers and the first witness wins.
pub fn search_parallel(
    n: usize,
    max_size: u64,
    prune: bool,
    workers: usize,
) -> Result<SearchResult, Error> {
    let start = Instant::now();
    let workers = workers.max(1);
    if workers == 1 {
        let mut result = sepdim_core::search::exhaustive_min_psd(n, max_size, prune, None)?;
        result.elapsed = Some(start.elapsed());
        return Ok(result);
    }
    if !(4..=6).contains(&n) {
        return Err(Error::Domain("exhaustive search supports 4 <= n <= 6"));
    }
    if max_size % 3 != 0 {
        return Err(Error::Domain("the size bound must be a multiple of 3"));
    }

    let space = factorial(n);
    let chunk = space.div_ceil(workers);
    let mut result = SearchResult {
        n,
        sizes_examined: Vec::new(),
        minimum: None,
        witness: None,
        candidates_visited: 0,
        nodes_expanded: 0,
        elapsed: None,
    };
    let mut size = 3;
    while size <= max_size {
        result.sizes_examined.push(size);
        let cancel = AtomicBool::new(false);
        let mut outcomes = Vec::new();
        thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let cancel = &cancel;
                    scope.spawn(move || {
                        let lo = w * chunk;
                        let hi = (lo + chunk).min(space);
                        let outcome =
                            search_size_partition(n, size, lo, hi, prune, true, Some(cancel));
                        if let Ok(out) = &outcome {
                            if out.witness.is_some() {
                                cancel.store(true, Ordering::Relaxed);
                            }
                        }
                        outcome
                    })
                })
                .collect();
            for handle in handles {
                outcomes.push(handle.join().expect("search worker panicked"));
            }
        });
        for outcome in outcomes {
            let outcome = outcome?;
            result.candidates_visited += outcome.candidates_visited;
            result.nodes_expanded += outcome.nodes_expanded;
            if result.witness.is_none() {
                result.witness = outcome.witness;
            }
        }
        if result.witness.is_some() {
            result.minimum = Some(size);
            break;
        }
        size += 3;
    }
    result.elapsed = Some(start.elapsed());
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sepdim_core::construct::build_perfect_family;
    use sepdim_core::verify::separation_profile;

    #[test]
    fn parallel_profile_is_independent_of_worker_count() {
        let (fam, _) = build_perfect_family(9).unwrap();
        let single = separation_profile(&fam);
        for workers in [2usize, 3, 8] {
            let multi = separation_profile_parallel(&fam, workers);
            assert_eq!(multi, single, "{workers} workers");
        }
    }

    #[test]
    fn parallel_search_verdict_matches_single_thread() {
        let single = search_parallel(4, 3, true, 1).unwrap();
        let multi = search_parallel(4, 3, true, 4).unwrap();
        assert_eq!(single.minimum, multi.minimum);
        assert_eq!(single.minimum, Some(3));
        let witness = multi.witness.unwrap();
        assert_eq!(separation_profile(&witness).lambda, Some(1));
    }
}
