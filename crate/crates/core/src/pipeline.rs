//! The lazy, single-use pipeline value.

use std::fmt;
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, MutexGuard};

use crate::engine::{self, ChunkJob, Flow, PartialResult, TerminalKind};
use crate::error::{Result, StreamError};

/// Whether a terminal operation runs on the calling thread or fans out to workers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ExecutionMode {
    #[default]
    Sequential,
    Parallel,
}

/// One recorded intermediate operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageKind {
    Filter,
    Map,
    MapToInt,
}

/// Where a pipeline's elements come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceKind {
    Literal,
    Collection,
    FileLines(PathBuf),
    IntRange { lo: i64, hi: i64, inclusive: bool },
}

/// A source plus zero or more intermediate stages, evaluated only when a
/// terminal operation runs.
///
/// Cloning a pipeline yields another handle to the same stream. A stream can
/// be operated upon once: the first terminal operation, or the first
/// intermediate operation chaining it into a new pipeline, consumes it for
/// every handle, and later operations fail with
/// [`StreamError::AlreadyConsumed`].
pub struct Pipeline<T> {
    shared: Arc<Mutex<Inner<T>>>,
}

struct Inner<T> {
    flow: Option<Box<dyn Flow<T>>>,
    source: SourceKind,
    stages: Vec<StageKind>,
    mode: ExecutionMode,
    workers: Option<NonZeroUsize>,
}

/// A pipeline of 64-bit integers, as produced by ranges and `map_to_int`.
pub type IntPipeline = Pipeline<i64>;

/// A pipeline of doubles.
pub type RealPipeline = Pipeline<f64>;

impl<T> Clone for Pipeline<T> {
    fn clone(&self) -> Self {
        Pipeline {
            shared: Arc::clone(&self.shared),
        }
    }
}

impl<T> fmt::Debug for Pipeline<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = self.lock();
        f.debug_struct("Pipeline")
            .field("source", &inner.source)
            .field("stages", &inner.stages)
            .field("mode", &inner.mode)
            .field("workers", &inner.workers)
            .field("consumed", &inner.flow.is_none())
            .finish()
    }
}

impl<T: Send + 'static> Pipeline<T> {
    pub(crate) fn from_flow(flow: Box<dyn Flow<T>>, source: SourceKind) -> Self {
        Self::from_inner(Inner {
            flow: Some(flow),
            source,
            stages: Vec::new(),
            mode: ExecutionMode::default(),
            workers: None,
        })
    }

    /// Consumes this stream and returns a new one with `stage` appended.
    pub(crate) fn push_stage<U, F>(self, kind: StageKind, stage: F) -> Result<Pipeline<U>>
    where
        U: Send + 'static,
        F: Fn(T) -> Option<U> + Send + Sync + 'static,
    {
        let mut inner = self.lock();
        let upstream = inner.flow.take().ok_or(StreamError::AlreadyConsumed)?;
        let mut stages = inner.stages.clone();
        stages.push(kind);
        Ok(Pipeline::from_inner(Inner {
            flow: Some(Box::new(StageFlow {
                upstream,
                stage: Box::new(stage),
            })),
            source: inner.source.clone(),
            stages,
            mode: inner.mode,
            workers: inner.workers,
        }))
    }

    /// Runs an order-insensitive terminal, in the pipeline's mode.
    pub(crate) fn execute<F>(self, kind: TerminalKind, fold: F) -> Result<PartialResult>
    where
        F: Fn(&mut PartialResult, T) + Sync,
    {
        let (flow, mode, workers) = self.mark_consumed()?;
        match mode {
            ExecutionMode::Sequential => {
                let mut acc = PartialResult::identity(kind);
                flow.run_sequential(&mut |x| fold(&mut acc, x))?;
                Ok(acc)
            }
            ExecutionMode::Parallel => {
                let job = ChunkJob { kind, fold: &fold };
                let partials = flow.run_chunked(workers, &job)?;
                Ok(engine::merge(&partials, kind))
            }
        }
    }

    /// Runs the pipeline on the calling thread in encounter order, whatever its mode.
    pub(crate) fn execute_in_order(self, sink: &mut dyn FnMut(T)) -> Result<()> {
        let (flow, _, _) = self.mark_consumed()?;
        flow.run_sequential(sink)
    }
}

impl<T> Pipeline<T> {
    fn from_inner(inner: Inner<T>) -> Self {
        Pipeline {
            shared: Arc::new(Mutex::new(inner)),
        }
    }

    fn lock(&self) -> MutexGuard<'_, Inner<T>> {
        self.shared.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// Switches to parallel execution. Idempotent.
    pub fn parallel(self) -> Result<Self> {
        self.set_mode(ExecutionMode::Parallel)
    }

    /// Switches to sequential execution, the default.
    pub fn sequential(self) -> Result<Self> {
        self.set_mode(ExecutionMode::Sequential)
    }

    fn set_mode(self, mode: ExecutionMode) -> Result<Self> {
        {
            let mut inner = self.lock();
            if inner.flow.is_none() {
                return Err(StreamError::AlreadyConsumed);
            }
            inner.mode = mode;
        }
        Ok(self)
    }

    /// Overrides the number of parallel workers. Has no effect in sequential mode.
    pub fn with_workers(self, workers: NonZeroUsize) -> Result<Self> {
        {
            let mut inner = self.lock();
            if inner.flow.is_none() {
                return Err(StreamError::AlreadyConsumed);
            }
            inner.workers = Some(workers);
        }
        Ok(self)
    }

    pub fn mode(&self) -> ExecutionMode {
        self.lock().mode
    }

    /// The worker count a parallel run would use.
    pub fn workers(&self) -> NonZeroUsize {
        self.lock().workers.unwrap_or_else(engine::default_workers)
    }

    /// Recorded intermediate stages, in call order.
    pub fn stages(&self) -> Vec<StageKind> {
        self.lock().stages.clone()
    }

    pub fn source(&self) -> SourceKind {
        self.lock().source.clone()
    }

    pub fn is_consumed(&self) -> bool {
        self.lock().flow.is_none()
    }

    /// Takes the executable flow out of the shared state, leaving every
    /// handle consumed.
    fn mark_consumed(&self) -> Result<(Box<dyn Flow<T>>, ExecutionMode, NonZeroUsize)> {
        let mut inner = self.lock();
        let flow = inner.flow.take().ok_or(StreamError::AlreadyConsumed)?;
        let workers = inner.workers.unwrap_or_else(engine::default_workers);
        Ok((flow, inner.mode, workers))
    }
}

/// Element types that support the `sum` terminal.
pub trait Numeric: Copy + Send + Sync + sealed::Sealed + 'static {
    #[doc(hidden)]
    const SUM_KIND: TerminalKind;
    #[doc(hidden)]
    fn add_into(acc: &mut PartialResult, x: Self);
    #[doc(hidden)]
    fn from_partial(p: PartialResult) -> Self;
}

mod sealed {
    pub trait Sealed {}
    impl Sealed for i64 {}
    impl Sealed for f64 {}
}

/// Integer sums wrap on overflow, which keeps them independent of chunking.
impl Numeric for i64 {
    const SUM_KIND: TerminalKind = TerminalKind::IntSum;

    fn add_into(acc: &mut PartialResult, x: Self) {
        if let PartialResult::IntSum(s) = acc {
            *s = s.wrapping_add(x);
        }
    }

    fn from_partial(p: PartialResult) -> Self {
        match p {
            PartialResult::IntSum(s) => s,
            other => unreachable!("integer sum produced {other:?}"),
        }
    }
}

impl Numeric for f64 {
    const SUM_KIND: TerminalKind = TerminalKind::RealSum;

    fn add_into(acc: &mut PartialResult, x: Self) {
        if let PartialResult::RealSum(s) = acc {
            *s += x;
        }
    }

    fn from_partial(p: PartialResult) -> Self {
        match p {
            PartialResult::RealSum(s) => s,
            other => unreachable!("real sum produced {other:?}"),
        }
    }
}

struct StageFlow<A, B> {
    upstream: Box<dyn Flow<A>>,
    stage: Box<dyn Fn(A) -> Option<B> + Send + Sync>,
}

impl<A: 'static, B: 'static> Flow<B> for StageFlow<A, B> {
    fn run_sequential(self: Box<Self>, sink: &mut dyn FnMut(B)) -> Result<()> {
        let stage = self.stage;
        self.upstream.run_sequential(&mut |a| {
            if let Some(b) = stage(a) {
                sink(b);
            }
        })
    }

    fn run_chunked(self: Box<Self>, workers: NonZeroUsize, job: &ChunkJob<'_, B>) -> Result<Vec<PartialResult>> {
        let stage = &self.stage;
        let fold = |acc: &mut PartialResult, a: A| {
            if let Some(b) = stage(a) {
                (job.fold)(acc, b);
            }
        };
        let upstream_job = ChunkJob {
            kind: job.kind,
            fold: &fold,
        };
        self.upstream.run_chunked(workers, &upstream_job)
    }
}
