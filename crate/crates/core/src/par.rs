//! Data-parallel helpers. With the `parallel` feature the work is spread over
//! the rayon pool; without it, or with [`Parallelism::Sequential`], the
//! same closures run in order on the calling thread. Results are always
//! returned in input order so output never depends on scheduling.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    /// Whether work will actually fan out.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

/// `items.iter().map(f).collect()`, possibly in parallel.
pub fn map<T, U, F>(mode: Parallelism, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Whether `f` holds for every item; may stop early.
pub fn all<T, F>(mode: Parallelism, items: &[T], f: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().all(f);
    }
    let _ = mode;
    items.iter().all(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = map(Parallelism::Sequential, &xs, |x| x * x);
        let b = map(Parallelism::Parallel, &xs, |x| x * x);
        assert_eq!(a, b);
        assert!(all(Parallelism::Parallel, &xs, |&x| x < 1000));
        assert!(!all(Parallelism::Sequential, &xs, |&x| x < 999));
    }
}
