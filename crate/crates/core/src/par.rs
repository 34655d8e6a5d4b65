//! Data-parallel helpers for the brute-force enumerations.
//!
//! With the `parallel` feature the work is spread over rayon's pool; without
//! it, or with [`Strategy::Sequential`], the same closures run in a plain loop.
//! Output order never depends on the strategy.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

pub fn map<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match strategy {
        Strategy::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
    }
}

pub fn map_range<R, F>(strategy: Strategy, n: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    match strategy {
        Strategy::Sequential => (0..n).map(f).collect(),
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
    }
}

/// Smallest index in `0..n` satisfying `pred`.
pub fn find_first<F>(strategy: Strategy, n: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    match strategy {
        Strategy::Sequential => (0..n).find(|&i| pred(i)),
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().find_first(|&i| pred(i))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let seq = map_range(Strategy::Sequential, 1000, |i| i * i % 17);
        let def = map_range(Strategy::default(), 1000, |i| i * i % 17);
        assert_eq!(seq, def);
        assert_eq!(find_first(Strategy::default(), 1000, |i| i > 10 && i % 7 == 0), Some(14));
        assert_eq!(find_first(Strategy::Sequential, 10, |_| false), None);
    }
}
