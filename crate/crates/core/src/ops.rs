//! Intermediate operations (`filter`, `map`, `map_to_int`) and terminal
//! operations (`count`, `sum`, `for_each`, `reduce`).
//!
//! Intermediate operations only record a stage; nothing runs until a
//! terminal operation is called. In sequential mode every element passes
//! through the stages in the source's encounter order.

use crate::engine::{PartialResult, TerminalKind};
use crate::error::Result;
use crate::functional::{Accumulator, Consumer, Mapper, Predicate};
use crate::pipeline::{IntPipeline, Numeric, Pipeline, StageKind};

impl<T: Send + 'static> Pipeline<T> {
    /// Keeps the elements for which `predicate` returns `true`.
    pub fn filter<P>(self, predicate: P) -> Result<Pipeline<T>>
    where
        P: Predicate<T> + 'static,
    {
        self.push_stage(StageKind::Filter, move |x| predicate(&x).then_some(x))
    }

    /// Replaces each element `x` with `f(x)`.
    pub fn map<U, F>(self, f: F) -> Result<Pipeline<U>>
    where
        U: Send + 'static,
        F: Mapper<T, U> + 'static,
    {
        self.push_stage(StageKind::Map, move |x| Some(f(x)))
    }

    /// Like [`map`](Self::map), producing an integer pipeline that supports `sum`.
    pub fn map_to_int<F>(self, f: F) -> Result<IntPipeline>
    where
        F: Mapper<T, i64> + 'static,
    {
        self.push_stage(StageKind::MapToInt, move |x| Some(f(x)))
    }

    /// Number of elements that survive every stage.
    pub fn count(self) -> Result<i64> {
        let result = self.execute(TerminalKind::Count, |acc, _| {
            if let PartialResult::Count(n) = acc {
                *n += 1;
            }
        })?;
        match result {
            PartialResult::Count(n) => Ok(n),
            other => unreachable!("count produced {other:?}"),
        }
    }

    /// Invokes `action` once per element.
    ///
    /// Sequential pipelines call it in encounter order. Parallel pipelines call
    /// it from several workers and the order is unspecified.
    pub fn for_each<F>(self, action: F) -> Result<()>
    where
        F: Consumer<T>,
    {
        self.execute(TerminalKind::ForEach, |_, x| action(x))?;
        Ok(())
    }

    /// Folds the elements left to right, starting from `initial`:
    /// `acc(...acc(acc(initial, x1), x2)..., xn)`.
    ///
    /// Always runs sequentially on the calling thread, even for parallel
    /// pipelines: without a combiner for partial results there is no way to
    /// merge independently folded chunks.
    pub fn reduce<R, F>(self, initial: R, mut acc: F) -> Result<R>
    where
        F: Accumulator<R, T>,
    {
        let mut result = Some(initial);
        self.execute_in_order(&mut |x| {
            let so_far = result.take().expect("accumulator result present");
            result = Some(acc(so_far, x));
        })?;
        Ok(result.expect("accumulator result present"))
    }
}

impl<T: Numeric> Pipeline<T> {
    /// Sum of the elements; zero for an empty pipeline.
    ///
    /// Integer sums wrap on overflow. Real sums add left to right within a
    /// chunk, so a parallel sum may differ from the sequential one by rounding.
    pub fn sum(self) -> Result<T> {
        let partial = self.execute(T::SUM_KIND, T::add_into)?;
        Ok(T::from_partial(partial))
    }
}
