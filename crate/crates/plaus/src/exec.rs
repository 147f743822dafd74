//! Execution strategy for the exhaustive scans.
//!
//! Every audit quantifies over a finite index space and either looks for
//! the first violating index or maps the whole space. Both shapes are
//! data-parallel: with the `parallel` feature (default) they run on rayon,
//! and `Exec::Sequential` forces the single-threaded path, which is what
//! the benchmark suite compares against. Results are identical either way:
//! the parallel search returns the match with the smallest index.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    /// Parallel when the `parallel` feature is enabled, sequential otherwise.
    #[default]
    Auto,
    Sequential,
}

/// Work below this many indices is not worth fanning out. Scans hand
/// rayon coarse outer units (event rows, trials), so the bar is low.
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: usize = 64;

/// First `Some` produced over `0..count`, by smallest index.
pub fn find_first<R, F>(exec: Exec, count: usize, f: F) -> Option<R>
where
    F: Fn(usize) -> Option<R> + Sync,
    R: Send,
{
    #[cfg(feature = "parallel")]
    if exec == Exec::Auto && count >= PAR_THRESHOLD {
        return (0..count).into_par_iter().find_map_first(&f);
    }
    let _ = exec;
    (0..count).find_map(f)
}

/// Maps `0..count` preserving index order.
pub fn map_ordered<R, F>(exec: Exec, count: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R + Sync,
    R: Send,
{
    #[cfg(feature = "parallel")]
    if exec == Exec::Auto && count >= PAR_THRESHOLD {
        return (0..count).into_par_iter().map(&f).collect();
    }
    let _ = exec;
    (0..count).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_first_returns_smallest_index_match() {
        for exec in [Exec::Auto, Exec::Sequential] {
            let hit = find_first(exec, 100_000, |i| (i % 7919 == 0 && i > 0).then_some(i));
            assert_eq!(hit, Some(7919));
        }
    }

    #[test]
    fn map_ordered_preserves_order() {
        for exec in [Exec::Auto, Exec::Sequential] {
            let v = map_ordered(exec, 5000, |i| i * 2);
            assert!(v.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
