//! Data-parallel helpers. With the `parallel` feature they run on the rayon
//! pool (unless switched off at runtime); without it they are plain loops.
//! Callers only ever reduce with exact, associative operations, so results do
//! not depend on scheduling.

use std::sync::atomic::{AtomicBool, Ordering};

static PARALLEL: AtomicBool = AtomicBool::new(cfg!(feature = "parallel"));

/// Turns the parallel path on or off at runtime. A no-op without the feature.
pub fn set_parallel(on: bool) {
    PARALLEL.store(on && cfg!(feature = "parallel"), Ordering::SeqCst);
}

pub fn is_parallel() -> bool {
    PARALLEL.load(Ordering::SeqCst)
}

/// Order-preserving map over a slice.
pub fn map<I, O, F>(items: &[I], f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

/// Order-preserving map over 0..n.
pub fn map_range<O, F>(n: usize, f: F) -> Vec<O>
where
    O: Send,
    F: Fn(usize) -> O + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if is_parallel() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    (0..n).map(f).collect()
}

/// Folds 0..n into per-chunk accumulators and merges them.
pub fn fold_range<A, Id, F, R>(n: usize, identity: Id, fold: F, merge: R) -> A
where
    A: Send,
    Id: Fn() -> A + Sync + Send,
    F: Fn(&mut A, usize) + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if is_parallel() {
            use rayon::prelude::*;
            return (0..n)
                .into_par_iter()
                .fold(&identity, |mut acc, i| {
                    fold(&mut acc, i);
                    acc
                })
                .reduce(&identity, &merge);
        }
    }
    let mut acc = identity();
    for i in 0..n {
        fold(&mut acc, i);
    }
    merge(identity(), acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fold_matches_closed_form() {
        let s = fold_range(1000, || 0u64, |a, i| *a += i as u64, |a, b| a + b);
        assert_eq!(s, 999 * 1000 / 2);
        assert_eq!(map_range(5, |i| i * i), vec![0, 1, 4, 9, 16]);
    }
}
