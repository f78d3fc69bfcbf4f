//! Ways to create a pipeline: literal values, collections, text files and
//! integer ranges.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::marker::PhantomData;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use crate::engine::{self, ChunkJob, Flow, PartialResult};
use crate::error::{Result, StreamError};
use crate::pipeline::{IntPipeline, Pipeline, SourceKind};

/// A pipeline over the given values, in order.
pub fn of<T, I>(values: I) -> Pipeline<T>
where
    T: Send + 'static,
    I: IntoIterator<Item = T>,
{
    let items = values.into_iter().collect();
    Pipeline::from_flow(Box::new(OwnedSource { items }), SourceKind::Literal)
}

/// A pipeline that reads (clones) elements out of `collection` when it runs.
///
/// Accepts anything that views as a slice: `Vec<T>`, `Arc<[T]>`, `Box<[T]>`,
/// `&'static [T]` and so on.
pub fn from_collection<C, T>(collection: C) -> Pipeline<T>
where
    C: AsRef<[T]> + Send + Sync + 'static,
    T: Clone + Send + Sync + 'static,
{
    Pipeline::from_flow(
        Box::new(CollectionSource {
            collection,
            _element: PhantomData,
        }),
        SourceKind::Collection,
    )
}

/// A pipeline over the lines of a UTF-8 text file.
///
/// The file is opened immediately, so a missing or unreadable file is
/// reported here. Lines are read when a terminal operation runs. `\n` and
/// `\r\n` terminators are stripped and a final terminator does not produce
/// an empty trailing line.
pub fn lines(path: impl AsRef<Path>) -> Result<Pipeline<String>> {
    let path = path.as_ref().to_path_buf();
    let file = File::open(&path).map_err(|e| StreamError::from_open(path.clone(), e))?;
    Ok(Pipeline::from_flow(
        Box::new(LinesSource {
            reader: BufReader::new(file),
            path: path.clone(),
        }),
        SourceKind::FileLines(path),
    ))
}

/// `lo, lo + 1, ..., hi - 1`; empty when `lo >= hi`.
pub fn range(lo: i64, hi: i64) -> IntPipeline {
    let len = if hi > lo {
        (i128::from(hi) - i128::from(lo)) as u64
    } else {
        0
    };
    range_source(
        lo,
        len,
        SourceKind::IntRange {
            lo,
            hi,
            inclusive: false,
        },
    )
}

/// `lo, lo + 1, ..., hi`; empty when `lo > hi`.
pub fn range_closed(lo: i64, hi: i64) -> IntPipeline {
    let len = if hi >= lo {
        u64::try_from(i128::from(hi) - i128::from(lo) + 1).unwrap_or(u64::MAX)
    } else {
        0
    };
    range_source(
        lo,
        len,
        SourceKind::IntRange {
            lo,
            hi,
            inclusive: true,
        },
    )
}

fn range_source(start: i64, len: u64, kind: SourceKind) -> IntPipeline {
    Pipeline::from_flow(Box::new(RangeSource { start, len }), kind)
}

struct OwnedSource<T> {
    items: Vec<T>,
}

impl<T: Send> Flow<T> for OwnedSource<T> {
    fn run_sequential(self: Box<Self>, sink: &mut dyn FnMut(T)) -> Result<()> {
        self.items.into_iter().for_each(sink);
        Ok(())
    }

    fn run_chunked(self: Box<Self>, workers: NonZeroUsize, job: &ChunkJob<'_, T>) -> Result<Vec<PartialResult>> {
        Ok(fold_owned(self.items, workers, job))
    }
}

fn fold_owned<T: Send>(items: Vec<T>, workers: NonZeroUsize, job: &ChunkJob<'_, T>) -> Vec<PartialResult> {
    let plan = engine::plan_chunks(items.len() as u64, workers);
    let chunks = engine::split_owned(items, &plan);
    engine::fold_chunks(chunks, workers, job.kind, |chunk, acc| {
        for x in chunk {
            (job.fold)(acc, x);
        }
    })
}

struct CollectionSource<C, T> {
    collection: C,
    _element: PhantomData<fn() -> T>,
}

impl<C, T> Flow<T> for CollectionSource<C, T>
where
    C: AsRef<[T]> + Send + Sync,
    T: Clone + Send + Sync,
{
    fn run_sequential(self: Box<Self>, sink: &mut dyn FnMut(T)) -> Result<()> {
        self.collection.as_ref().iter().cloned().for_each(sink);
        Ok(())
    }

    fn run_chunked(self: Box<Self>, workers: NonZeroUsize, job: &ChunkJob<'_, T>) -> Result<Vec<PartialResult>> {
        let slice = self.collection.as_ref();
        let plan = engine::plan_chunks(slice.len() as u64, workers);
        let chunks = plan.chunks().to_vec();
        Ok(engine::fold_chunks(chunks, workers, job.kind, |range, acc| {
            for x in &slice[range.start as usize..range.end as usize] {
                (job.fold)(acc, x.clone());
            }
        }))
    }
}

struct RangeSource {
    start: i64,
    len: u64,
}

impl RangeSource {
    fn value(&self, offset: u64) -> i64 {
        self.start.wrapping_add(offset as i64)
    }
}

impl Flow<i64> for RangeSource {
    fn run_sequential(self: Box<Self>, sink: &mut dyn FnMut(i64)) -> Result<()> {
        for offset in 0..self.len {
            sink(self.value(offset));
        }
        Ok(())
    }

    fn run_chunked(self: Box<Self>, workers: NonZeroUsize, job: &ChunkJob<'_, i64>) -> Result<Vec<PartialResult>> {
        let plan = engine::plan_chunks(self.len, workers);
        let chunks = plan.chunks().to_vec();
        let this = &*self;
        Ok(engine::fold_chunks(chunks, workers, job.kind, |offsets, acc| {
            for offset in offsets {
                (job.fold)(acc, this.value(offset));
            }
        }))
    }
}

struct LinesSource {
    reader: BufReader<File>,
    path: PathBuf,
}

impl LinesSource {
    /// Reads every line, handing each to `sink`. Stops at the first error.
    fn read_all(mut self, sink: &mut dyn FnMut(String)) -> Result<()> {
        let mut buf = Vec::new();
        let mut line_no = 0u64;
        loop {
            buf.clear();
            let read = self
                .reader
                .read_until(b'\n', &mut buf)
                .map_err(|source| StreamError::Read {
                    path: self.path.clone(),
                    source,
                })?;
            if read == 0 {
                return Ok(());
            }
            line_no += 1;
            if buf.last() == Some(&b'\n') {
                buf.pop();
                if buf.last() == Some(&b'\r') {
                    buf.pop();
                }
            }
            let line = String::from_utf8(std::mem::take(&mut buf)).map_err(|_| StreamError::InvalidEncoding {
                path: self.path.clone(),
                line: line_no,
            })?;
            sink(line);
        }
    }
}

impl Flow<String> for LinesSource {
    fn run_sequential(self: Box<Self>, sink: &mut dyn FnMut(String)) -> Result<()> {
        self.read_all(sink)
    }

    /// Lines are read by this thread alone, then split among workers.
    fn run_chunked(self: Box<Self>, workers: NonZeroUsize, job: &ChunkJob<'_, String>) -> Result<Vec<PartialResult>> {
        let mut items = Vec::new();
        self.read_all(&mut |line| items.push(line))?;
        Ok(fold_owned(items, workers, job))
    }
}

#[cfg(test)]
mod tests {
    use std::io::Write;
    use std::sync::Arc;

    use super::*;

    const WORDS: [&str; 6] = ["bat", "cat", "bird", "mad", "catch", "ditch"];

    fn collect<T: Send + 'static>(p: Pipeline<T>) -> Vec<T> {
        p.reduce(Vec::new(), |mut acc, x| {
            acc.push(x);
            acc
        })
        .unwrap()
    }

    fn temp_file(contents: &[u8]) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(contents).unwrap();
        file.flush().unwrap();
        file
    }

    #[test]
    fn literal_values_keep_order() {
        assert_eq!(collect(of(WORDS)), WORDS);
        assert_eq!(of(Vec::<String>::new()).count().unwrap(), 0);
        let total = of([1.5, 2.4, -0.1]).sum().unwrap();
        assert!((total - 3.8).abs() < 1e-12);
    }

    #[test]
    fn collection_matches_literal() {
        let list: Vec<&'static str> = WORDS.to_vec();
        assert_eq!(collect(from_collection(list.clone())), collect(of(list)));
        let shared: Arc<[i64]> = (100..=200).collect();
        assert_eq!(from_collection(shared).count().unwrap(), 101);
        assert_eq!(from_collection(Vec::<i64>::new()).count().unwrap(), 0);
    }

    #[test]
    fn collection_is_not_moved_out() {
        let shared: Arc<[i64]> = Arc::from(vec![3, 1, 2]);
        assert_eq!(collect(from_collection(Arc::clone(&shared))), [3, 1, 2]);
        assert_eq!(*shared, [3, 1, 2]);
        assert_eq!(Arc::strong_count(&shared), 1);
    }

    #[test]
    fn half_open_ranges() {
        assert_eq!(collect(range(5, 10)), [5, 6, 7, 8, 9]);
        assert_eq!(range(100, 201).count().unwrap(), 101);
        assert_eq!(range(7, 7).count().unwrap(), 0);
        assert_eq!(range(9, 2).count().unwrap(), 0);
    }

    #[test]
    fn closed_ranges() {
        assert_eq!(collect(range_closed(5, 10)), [5, 6, 7, 8, 9, 10]);
        assert_eq!(range_closed(100, 200).count().unwrap(), 101);
        assert_eq!(range_closed(3, 2).count().unwrap(), 0);
        assert_eq!(collect(range_closed(i64::MAX - 1, i64::MAX)), [i64::MAX - 1, i64::MAX]);
        assert_eq!(collect(range(i64::MIN, i64::MIN + 2)), [i64::MIN, i64::MIN + 1]);
    }

    #[test]
    fn file_lines_strip_terminators() {
        let file = temp_file(b"a\nb\nc\n");
        assert_eq!(collect(lines(file.path()).unwrap()), ["a", "b", "c"]);
        let file = temp_file(b"a\nb\nc");
        assert_eq!(lines(file.path()).unwrap().count().unwrap(), 3);
        let file = temp_file(b"one\r\ntwo\r\n\r\nfour");
        assert_eq!(collect(lines(file.path()).unwrap()), ["one", "two", "", "four"]);
        let file = temp_file(b"");
        assert_eq!(lines(file.path()).unwrap().count().unwrap(), 0);
        let file = temp_file(b"\n");
        assert_eq!(collect(lines(file.path()).unwrap()), [""]);
    }

    #[test]
    fn missing_file_fails_at_creation() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("GreatGatsby.txt");
        match lines(&missing) {
            Err(StreamError::FileNotFound { path }) => assert_eq!(path, missing),
            other => panic!("expected FileNotFound, got {other:?}"),
        }
    }

    #[test]
    fn invalid_utf8_fails_at_consumption() {
        let file = temp_file(b"ok\n\xff\xfe\nlater\n");
        let p = lines(file.path()).unwrap();
        let seen = std::sync::Mutex::new(Vec::new());
        let err = p.for_each(|l| seen.lock().unwrap().push(l)).unwrap_err();
        assert!(matches!(err, StreamError::InvalidEncoding { line: 2, .. }), "{err:?}");
        assert_eq!(*seen.lock().unwrap(), ["ok"]);

        let p = lines(file.path()).unwrap().parallel().unwrap();
        assert!(matches!(p.count(), Err(StreamError::InvalidEncoding { line: 2, .. })));
    }

    #[test]
    fn file_lines_parallel_count() {
        let body: String = (0..1000).map(|i| format!("line {i}\n")).collect();
        let file = temp_file(body.as_bytes());
        let p = lines(file.path()).unwrap().parallel().unwrap();
        assert_eq!(p.count().unwrap(), 1000);
    }

    #[test]
    fn source_kinds() {
        assert_eq!(of([1]).source(), SourceKind::Literal);
        assert_eq!(from_collection(vec![1]).source(), SourceKind::Collection);
        assert_eq!(
            range_closed(1, 4).source(),
            SourceKind::IntRange {
                lo: 1,
                hi: 4,
                inclusive: true
            }
        );
    }
}
