//! Sequential vs parallel prime counting over random integers.
//!
//! Each repetition counts the primes in the same value array twice, once with
//! a sequential pipeline and once with a parallel one, times both runs with a
//! monotonic clock and reports the ratio.

use std::fmt;
use std::io::{self, Write};
use std::num::NonZeroUsize;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::error::StreamError;
use crate::source::from_collection;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid benchmark configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("repetition {repetition}: sequential run counted {sequential} primes, parallel run counted {parallel}")]
    CountMismatch {
        repetition: usize,
        sequential: i64,
        parallel: i64,
    },
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub num_values: usize,
    pub max_value: i64,
    pub repetitions: usize,
    pub seed: Option<u64>,
    pub workers: Option<NonZeroUsize>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            num_values: 2_000_000,
            max_value: 10_000,
            repetitions: 5,
            seed: None,
            workers: None,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        if self.num_values < 1 {
            return Err(BenchError::InvalidConfig("num_values must be at least 1"));
        }
        if self.max_value < 3 {
            return Err(BenchError::InvalidConfig("max_value must be at least 3"));
        }
        if self.repetitions < 1 {
            return Err(BenchError::InvalidConfig("repetitions must be at least 1"));
        }
        Ok(())
    }
}

/// Trial division by every `i` in `[2, n)`.
///
/// Deliberately slow: there is no square-root cutoff, so the cost for a prime
/// grows linearly with `n`. This is the benchmark's workload. Requires `n >= 2`.
pub fn is_prime(n: i64) -> bool {
    debug_assert!(n >= 2, "is_prime requires n >= 2, got {n}");
    let mut i = 2;
    while i < n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// `num_values` integers drawn uniformly from `[2, max_value)`.
///
/// With a seed the values are reproducible; otherwise the generator is seeded
/// from the operating system.
pub fn generate_values(cfg: &BenchConfig) -> Vec<i64> {
    let mut rng = match cfg.seed {
        Some(seed) => ChaCha8Rng::seed_from_u64(seed),
        None => ChaCha8Rng::from_entropy(),
    };
    (0..cfg.num_values)
        .map(|_| 2 + rng.gen_range(0..cfg.max_value - 2))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Repetition {
    pub sequential_ms: i64,
    pub parallel_ms: i64,
    pub primes_sequential: i64,
    pub primes_parallel: i64,
    pub speedup: f64,
}

impl Repetition {
    fn new(sequential: Duration, parallel: Duration, primes_sequential: i64, primes_parallel: i64) -> Self {
        let sequential_ms = whole_millis(sequential);
        let parallel_ms = whole_millis(parallel);
        Repetition {
            sequential_ms,
            parallel_ms,
            primes_sequential,
            primes_parallel,
            speedup: sequential_ms as f64 / parallel_ms as f64,
        }
    }

    pub const CSV_HEADER: &'static str =
        "repetition,sequential_ms,parallel_ms,primes_sequential,primes_parallel,speedup";

    pub fn csv_row(&self, repetition: usize) -> String {
        format!(
            "{repetition},{},{},{},{},{:.2}",
            self.sequential_ms, self.parallel_ms, self.primes_sequential, self.primes_parallel, self.speedup
        )
    }
}

/// Durations under a millisecond count as one, so the speedup stays finite.
fn whole_millis(d: Duration) -> i64 {
    i64::try_from(d.as_millis()).unwrap_or(i64::MAX).max(1)
}

impl fmt::Display for Repetition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sequential {}ms, parallel {}ms, speedup factor {:2.2}",
            self.sequential_ms, self.parallel_ms, self.speedup
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub repetitions: Vec<Repetition>,
}

impl BenchReport {
    pub fn median_speedup(&self) -> f64 {
        let mut speedups: Vec<f64> = self.repetitions.iter().map(|r| r.speedup).collect();
        speedups.sort_by(f64::total_cmp);
        let n = speedups.len();
        if n == 0 {
            return f64::NAN;
        }
        if n % 2 == 1 {
            speedups[n / 2]
        } else {
            (speedups[n / 2 - 1] + speedups[n / 2]) / 2.0
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Text,
    Csv,
}

/// Counts primes in `values` with one pipeline, returning the count and wall time.
pub fn count_primes(
    values: &Arc<[i64]>,
    parallel: bool,
    workers: Option<NonZeroUsize>,
) -> Result<(i64, Duration), StreamError> {
    let start = Instant::now();
    let mut pipeline = from_collection(Arc::clone(values));
    pipeline = if parallel {
        pipeline.parallel()?
    } else {
        pipeline.sequential()?
    };
    if let Some(workers) = workers {
        pipeline = pipeline.with_workers(workers)?;
    }
    let count = pipeline.filter(|n| is_prime(*n))?.count()?;
    Ok((count, start.elapsed()))
}

/// Runs every repetition, writing one line per repetition to `out`.
pub fn run_benchmark<W: Write>(
    cfg: &BenchConfig,
    format: ReportFormat,
    out: &mut W,
) -> Result<BenchReport, BenchError> {
    cfg.validate()?;
    let values: Arc<[i64]> = generate_values(cfg).into();
    if format == ReportFormat::Csv {
        writeln!(out, "{}", Repetition::CSV_HEADER)?;
    }
    let mut repetitions = Vec::with_capacity(cfg.repetitions);
    for repetition in 0..cfg.repetitions {
        let (primes_sequential, sequential) = count_primes(&values, false, cfg.workers)?;
        let (primes_parallel, parallel) = count_primes(&values, true, cfg.workers)?;
        if primes_sequential != primes_parallel {
            return Err(BenchError::CountMismatch {
                repetition,
                sequential: primes_sequential,
                parallel: primes_parallel,
            });
        }
        let rep = Repetition::new(sequential, parallel, primes_sequential, primes_parallel);
        match format {
            ReportFormat::Text => writeln!(out, "{rep}")?,
            ReportFormat::Csv => writeln!(out, "{}", rep.csv_row(repetition))?,
        }
        out.flush()?;
        repetitions.push(rep);
    }
    Ok(BenchReport { repetitions })
}
