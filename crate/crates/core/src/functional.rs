//! Function values as ordinary parameters.
//!
//! Pipelines take four kinds of function value. Each role is a trait with a
//! blanket implementation, so any closure or `fn` item of the right shape
//! fills it. Roles used by parallel execution are `Send + Sync` because the
//! engine may invoke them from several workers at once; the library never
//! mutates them.

/// Tests one element. Must be free of side effects on library state and
/// return the same answer for the same input within one execution.
pub trait Predicate<T>: Fn(&T) -> bool + Send + Sync {}

impl<T, F> Predicate<T> for F where F: Fn(&T) -> bool + Send + Sync {}

/// Transforms one element into another value, deterministically.
pub trait Mapper<T, U>: Fn(T) -> U + Send + Sync {}

impl<T, U, F> Mapper<T, U> for F where F: Fn(T) -> U + Send + Sync {}

/// Folds one element into the result so far.
///
/// Accumulation always runs on the calling thread, so state may be captured
/// mutably.
pub trait Accumulator<R, T>: FnMut(R, T) -> R {}

impl<R, T, F> Accumulator<R, T> for F where F: FnMut(R, T) -> R {}

/// Performs an action per element. Side effects such as printing are expected.
pub trait Consumer<T>: Fn(T) + Send + Sync {}

impl<T, F> Consumer<T> for F where F: Fn(T) + Send + Sync {}

/// Invokes `f` on `x`.
pub fn apply<F>(f: F, x: i64) -> i64
where
    F: Fn(i64) -> i64,
{
    f(x)
}

/// Invokes a three-argument real function.
pub fn apply3<G>(g: G, u: f64, v: f64, w: f64) -> f64
where
    G: Fn(f64, f64, f64) -> f64,
{
    g(u, v, w)
}

pub fn apply_to_seven<F>(f: F) -> i64
where
    F: Fn(i64) -> i64,
{
    apply(f, 7)
}

pub fn apply_to_minus_nine<F>(f: F) -> i64
where
    F: Fn(i64) -> i64,
{
    apply(f, -9)
}

pub fn add5(x: i64) -> i64 {
    x + 5
}

pub fn mult_by_3_if_positive(x: i64) -> i64 {
    if x > 0 {
        3 * x
    } else {
        0
    }
}

/// Euclidean norm of a 3-vector.
pub fn norm3(u: f64, v: f64, w: f64) -> f64 {
    (u * u + v * v + w * w).sqrt()
}
