//! Data-parallel mapping with a sequential fallback.
//!
//! With the `parallel` feature (default) the [`ExecPolicy::Parallel`] policy
//! fans work out over rayon's global pool. Without it every policy runs
//! sequentially. Results are always returned in input order, so any
//! reduction done afterwards is deterministic.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecPolicy {
    Sequential,
    Parallel,
}

impl Default for ExecPolicy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecPolicy::Parallel
        } else {
            ExecPolicy::Sequential
        }
    }
}

impl ExecPolicy {
    /// Whether this policy actually runs in parallel in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == ExecPolicy::Parallel
    }
}

pub fn map<T, R, F>(policy: ExecPolicy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if policy.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = policy;
    items.iter().map(f).collect()
}

/// Maps a fallible function, returning the first error in input order.
pub fn try_map<T, R, E, F>(policy: ExecPolicy, items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    map(policy, items, f).into_iter().collect()
}

pub fn try_map_range<R, E, F>(
    policy: ExecPolicy,
    range: std::ops::Range<usize>,
    f: F,
) -> Result<Vec<R>, E>
where
    R: Send,
    E: Send,
    F: Fn(usize) -> Result<R, E> + Sync + Send,
{
    let items: Vec<usize> = range.collect();
    try_map(policy, &items, |&i| f(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policies_agree_and_keep_order() {
        let xs: Vec<u64> = (0..10_000).collect();
        let a = map(ExecPolicy::Sequential, &xs, |x| x * x);
        let b = map(ExecPolicy::Parallel, &xs, |x| x * x);
        assert_eq!(a, b);
        assert_eq!(a[77], 77 * 77);
    }

    #[test]
    fn first_error_in_input_order_wins() {
        let xs: Vec<i32> = (0..100).collect();
        let r: Result<Vec<i32>, i32> = try_map(ExecPolicy::Parallel, &xs, |&x| {
            if x % 30 == 29 {
                Err(x)
            } else {
                Ok(x)
            }
        });
        assert_eq!(r, Err(29));
    }
}
