//! Trial-level data parallelism.
//!
//! Trials are indexed and seeded from their index, so the schedule never
//! affects results. With the `parallel` feature disabled every entry point
//! runs sequentially.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses the rayon global pool when built with the `parallel` feature.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// `range.map(f).collect()`, in index order.
pub fn map_indices<T, F>(range: Range<u64>, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).collect();
    }
    let _ = exec;
    range.map(f).collect()
}

const SEARCH_CHUNK: u64 = 1 << 12;

/// Smallest index in `range` for which `f` returns `Some`, with its value.
pub fn find_first<T, F>(range: Range<u64>, exec: Execution, f: F) -> Option<(u64, T)>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    let mut start = range.start;
    while start < range.end {
        let end = (start + SEARCH_CHUNK).min(range.end);
        let hits = map_indices(start..end, exec, &f);
        if let Some((offset, hit)) = hits
            .into_iter()
            .enumerate()
            .find_map(|(i, h)| h.map(|h| (i, h)))
        {
            return Some((start + offset as u64, hit));
        }
        start = end;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn execution_modes_agree() {
        let f = |i: u64| i * i;
        assert_eq!(
            map_indices(0..1000, Execution::Parallel, f),
            map_indices(0..1000, Execution::Sequential, f)
        );
    }

    #[test]
    fn find_first_returns_lowest_index() {
        let hit = find_first(0..100_000, Execution::Parallel, |i| {
            (i % 7919 == 7918).then_some(i)
        });
        assert_eq!(hit, Some((7918, 7918)));
        assert_eq!(find_first(0..10, Execution::Parallel, |_| None::<()>), None);
    }
}
