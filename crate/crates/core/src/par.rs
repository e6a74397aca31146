//! Data-parallel loops with a sequential fallback.
//!
//! With the `parallel` feature (default) the searches run on rayon; without it
//! every helper degrades to a plain iterator. Search helpers always return the
//! *first* hit in index order so that witnesses do not depend on scheduling.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Exec::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Exec::Sequential
        }
    }
}

/// First `Some` produced by `f` over `range`, in index order.
pub fn find_first<R, F>(exec: Exec, range: Range<u64>, f: F) -> Option<R>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    match exec {
        Exec::Sequential => range.into_iter().find_map(f),
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().find_map_first(f)
        }
    }
}

/// First `Some` produced by `f` over a slice, in order.
pub fn find_first_in<T, R, F>(exec: Exec, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    match exec {
        Exec::Sequential => items.iter().find_map(f),
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().find_map_first(f)
        }
    }
}

/// Order-preserving map over `range`.
pub fn map_range<R, F>(exec: Exec, range: Range<u64>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    match exec {
        Exec::Sequential => range.into_iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().map(f).collect()
        }
    }
}

/// Order-preserving map over a slice.
pub fn map_slice<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Exec::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_hit_is_deterministic() {
        let hit = find_first(Exec::default(), 0..10_000, |i| (i % 997 == 996).then_some(i));
        assert_eq!(hit, Some(996));
        let seq = find_first(Exec::Sequential, 0..10_000, |i| (i % 997 == 996).then_some(i));
        assert_eq!(hit, seq);
    }

    #[test]
    fn map_keeps_order() {
        let v = map_range(Exec::default(), 0..100, |i| i * i);
        assert_eq!(v[7], 49);
        assert_eq!(v.len(), 100);
    }
}
