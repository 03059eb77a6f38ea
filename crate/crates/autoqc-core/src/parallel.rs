//! Execution strategy for the embarrassingly parallel sweeps.
//!
//! The heavy loops (time grids, eigenvalue-class pair sums, parameter scans)
//! map independent work items and then reduce sequentially, so results are
//! identical for both strategies bit for bit.  With the `parallel` feature
//! disabled the parallel variant silently degrades to the sequential one.

/// How a sweep distributes its independent work items.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Parallel,
    Sequential,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// Maps `f` over `0..n`, preserving index order in the output.
pub fn map_indexed<U, F>(exec: Exec, n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Exec::Parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Maps `f` over a slice, preserving element order in the output.
pub fn map_slice<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Exec::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_strategies_agree_and_preserve_order() {
        let f = |i: usize| (i as f64).sqrt() * 3.0 - 1.0;
        let seq = map_indexed(Exec::Sequential, 1000, f);
        let par = map_indexed(Exec::Parallel, 1000, f);
        assert_eq!(seq, par);
        assert_eq!(seq[4], 5.0);
    }
}
