//! Thin dispatch layer between the rayon and sequential execution paths.
//!
//! With the `parallel` feature (the default) the helpers fan out over the
//! ambient rayon pool; without it they degrade to plain iteration with the
//! same signatures, so callers are oblivious. The fold used everywhere is a
//! sum of exact polynomials, which is associative and commutative, so any
//! reduction tree produces the identical result.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `items` and sum the results.
#[cfg(feature = "parallel")]
pub(crate) fn map_sum<T, R, F>(items: Vec<T>, zero: impl Fn() -> R + Sync, f: F) -> R
where
    T: Send,
    R: Send + std::ops::Add<Output = R>,
    F: Fn(T) -> R + Sync + Send,
{
    items
        .into_par_iter()
        .map(f)
        .reduce_with(|a, b| a + b)
        .unwrap_or_else(zero)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_sum<T, R, F>(items: Vec<T>, zero: impl Fn() -> R, f: F) -> R
where
    R: std::ops::Add<Output = R>,
    F: Fn(T) -> R,
{
    items.into_iter().map(f).fold(zero(), |a, b| a + b)
}

/// Map `items`, preserving order of the results.
#[cfg(feature = "parallel")]
pub(crate) fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}
