//! Lazy, single-use stream pipelines over in-memory values, integer ranges
//! and text files, with sequential or chunked parallel execution.
//!
//! ```
//! use streamfold::{of, range_closed};
//!
//! let words = ["bat", "cat", "bird", "mad", "catch", "ditch"];
//! let n = of(words).filter(|w| w.starts_with("ca"))?.count()?;
//! assert_eq!(n, 2);
//!
//! let odd = range_closed(27, 159).parallel()?.filter(|x| x % 2 == 1)?.sum()?;
//! assert_eq!(odd, 6231);
//! # Ok::<(), streamfold::StreamError>(())
//! ```

pub mod bench;
pub mod decimal;
pub mod demo;
pub mod engine;
pub mod error;
pub mod functional;
mod ops;
pub mod pipeline;
pub mod source;

pub use crate::decimal::{ExactDecimal, ParseDecimalError};
pub use crate::engine::{merge, plan_chunks, ChunkPlan, PartialResult, TerminalKind};
pub use crate::error::StreamError;
pub use crate::functional::{Accumulator, Consumer, Mapper, Predicate};
pub use crate::pipeline::{ExecutionMode, IntPipeline, Numeric, Pipeline, RealPipeline, SourceKind, StageKind};
pub use crate::source::{from_collection, lines, of, range, range_closed};
