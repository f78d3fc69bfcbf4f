//! Sequential and chunked-parallel execution of a pipeline's terminal.
//!
//! A parallel run splits the source into contiguous chunks (see
//! [`plan_chunks`]) and hands them to scoped worker threads that pull the next
//! unclaimed chunk until none remain. Each chunk folds into its own
//! [`PartialResult`]; partials are merged in chunk order. A panic raised by a
//! user function on any worker stops the others from claiming further chunks
//! and is re-raised on the calling thread once all workers have stopped.

use std::any::Any;
use std::num::NonZeroUsize;
use std::ops::Range;
use std::panic::{self, AssertUnwindSafe};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use crate::error::Result;

/// Chunks created per worker.
pub const CHUNKS_PER_WORKER: usize = 4;

/// Number of workers used when a pipeline does not override it.
pub fn default_workers() -> NonZeroUsize {
    thread::available_parallelism().unwrap_or(NonZeroUsize::MIN)
}

/// Partition of `[0, n)` into ordered, contiguous, near-equal chunks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChunkPlan {
    workers: NonZeroUsize,
    chunks: Vec<Range<u64>>,
}

impl ChunkPlan {
    pub fn workers(&self) -> NonZeroUsize {
        self.workers
    }

    pub fn chunks(&self) -> &[Range<u64>] {
        &self.chunks
    }

    pub fn len(&self) -> usize {
        self.chunks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chunks.is_empty()
    }
}

/// Plans `min(workers * 4, max(1, n))` chunks whose sizes differ by at most one.
///
/// Larger chunks come first. With `n == 0` the plan holds a single empty chunk.
pub fn plan_chunks(n: u64, workers: NonZeroUsize) -> ChunkPlan {
    let wanted = (workers.get() as u64).saturating_mul(CHUNKS_PER_WORKER as u64);
    let count = wanted.min(n.max(1));
    let base = n / count;
    let extra = n % count;
    let mut chunks = Vec::with_capacity(count as usize);
    let mut start = 0;
    for i in 0..count {
        let len = base + u64::from(i < extra);
        chunks.push(start..start + len);
        start += len;
    }
    ChunkPlan { workers, chunks }
}

/// Which terminal a partial result belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminalKind {
    Count,
    IntSum,
    RealSum,
    ForEach,
}

/// The value one chunk contributes to an order-insensitive terminal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PartialResult {
    Count(i64),
    IntSum(i64),
    RealSum(f64),
    Unit,
}

impl PartialResult {
    /// The value of the terminal over an empty chunk.
    pub fn identity(kind: TerminalKind) -> Self {
        match kind {
            TerminalKind::Count => PartialResult::Count(0),
            TerminalKind::IntSum => PartialResult::IntSum(0),
            TerminalKind::RealSum => PartialResult::RealSum(0.0),
            TerminalKind::ForEach => PartialResult::Unit,
        }
    }

    pub fn kind(&self) -> TerminalKind {
        match self {
            PartialResult::Count(_) => TerminalKind::Count,
            PartialResult::IntSum(_) => TerminalKind::IntSum,
            PartialResult::RealSum(_) => TerminalKind::RealSum,
            PartialResult::Unit => TerminalKind::ForEach,
        }
    }

    fn combine(self, other: PartialResult) -> PartialResult {
        match (self, other) {
            (PartialResult::Count(a), PartialResult::Count(b)) => PartialResult::Count(a + b),
            (PartialResult::IntSum(a), PartialResult::IntSum(b)) => PartialResult::IntSum(a.wrapping_add(b)),
            (PartialResult::RealSum(a), PartialResult::RealSum(b)) => PartialResult::RealSum(a + b),
            (PartialResult::Unit, PartialResult::Unit) => PartialResult::Unit,
            (a, b) => panic!("cannot merge partial results {a:?} and {b:?}"),
        }
    }
}

/// Combines per-chunk partials, in chunk order, into the terminal's result.
///
/// # Panics
///
/// If a partial does not belong to `kind`.
pub fn merge(partials: &[PartialResult], kind: TerminalKind) -> PartialResult {
    partials
        .iter()
        .fold(PartialResult::identity(kind), |acc, p| acc.combine(*p))
}

/// A terminal expressed as a per-element fold into a [`PartialResult`].
pub(crate) struct ChunkJob<'a, T> {
    pub kind: TerminalKind,
    pub fold: &'a (dyn Fn(&mut PartialResult, T) + Sync),
}

/// Something that can push its elements through a sink, either all in
/// encounter order or split into chunks.
///
/// Sources implement this directly; each intermediate stage wraps its
/// upstream flow and adapts the sink.
pub(crate) trait Flow<T>: Send {
    fn run_sequential(self: Box<Self>, sink: &mut dyn FnMut(T)) -> Result<()>;

    fn run_chunked(self: Box<Self>, workers: NonZeroUsize, job: &ChunkJob<'_, T>) -> Result<Vec<PartialResult>>;
}

/// Runs `process` over every chunk, on up to `workers` threads, and returns
/// the partials in chunk order.
pub(crate) fn fold_chunks<C, F>(
    chunks: Vec<C>,
    workers: NonZeroUsize,
    kind: TerminalKind,
    process: F,
) -> Vec<PartialResult>
where
    C: Send,
    F: Fn(C, &mut PartialResult) + Sync,
{
    let threads = workers.get().min(chunks.len());
    if threads <= 1 {
        return chunks
            .into_iter()
            .map(|chunk| {
                let mut acc = PartialResult::identity(kind);
                process(chunk, &mut acc);
                acc
            })
            .collect();
    }

    let total = chunks.len();
    let slots: Vec<Mutex<Option<C>>> = chunks.into_iter().map(|c| Mutex::new(Some(c))).collect();
    let next = AtomicUsize::new(0);
    let cancelled = AtomicBool::new(false);

    type WorkerOutput = std::result::Result<Vec<(usize, PartialResult)>, Box<dyn Any + Send>>;

    let outputs: Vec<WorkerOutput> = thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    while !cancelled.load(Ordering::Relaxed) {
                        let index = next.fetch_add(1, Ordering::Relaxed);
                        if index >= total {
                            break;
                        }
                        let chunk = slots[index]
                            .lock()
                            .unwrap_or_else(|e| e.into_inner())
                            .take()
                            .expect("chunk claimed twice");
                        let mut acc = PartialResult::identity(kind);
                        let outcome = panic::catch_unwind(AssertUnwindSafe(|| process(chunk, &mut acc)));
                        if let Err(payload) = outcome {
                            cancelled.store(true, Ordering::Relaxed);
                            return Err(payload);
                        }
                        done.push((index, acc));
                    }
                    Ok(done)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(Err)).collect()
    });

    let mut partials = Vec::with_capacity(total);
    let mut first_panic = None;
    for output in outputs {
        match output {
            Ok(done) => partials.extend(done),
            Err(payload) => {
                first_panic.get_or_insert(payload);
            }
        }
    }
    if let Some(payload) = first_panic {
        panic::resume_unwind(payload);
    }
    partials.sort_unstable_by_key(|(index, _)| *index);
    debug_assert_eq!(partials.len(), total);
    partials.into_iter().map(|(_, p)| p).collect()
}

/// Splits an owned vector along the plan's boundaries.
pub(crate) fn split_owned<T>(mut items: Vec<T>, plan: &ChunkPlan) -> Vec<Vec<T>> {
    let mut pieces = Vec::with_capacity(plan.len());
    for range in plan.chunks().iter().rev() {
        pieces.push(items.split_off(range.start as usize));
    }
    pieces.reverse();
    pieces
}
