//! Small stream computations runnable by name from the command line.
//!
//! | id     | computation                                      | needs a file |
//! |--------|--------------------------------------------------|--------------|
//! | `ep7`  | number of lines in a file                        | yes          |
//! | `ep8`  | sum of the integers 27 to 159                    | no           |
//! | `ep9`  | sum of the odd integers 27 to 159                | no           |
//! | `ep10` | print the integers 27 to 159, one per line       | no           |
//! | `ep11` | print the first character of each line           | yes          |
//! | `ep12` | print the length of each line                    | yes          |
//! | `ep13` | exact sum of the decimal numbers, one per line   | yes          |

use std::fmt::{self, Display};
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;
use std::sync::Mutex;

use thiserror::Error;

use crate::decimal::{ExactDecimal, ParseDecimalError};
use crate::error::StreamError;
use crate::pipeline::Pipeline;
use crate::source::{lines, range_closed};

#[derive(Debug, Error)]
pub enum DemoError {
    #[error("unknown demo {0:?} (expected one of ep7, ep8, ep9, ep10, ep11, ep12, ep13)")]
    UnknownDemo(String),
    #[error("demo {0} needs an input file")]
    MissingFile(Demo),
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error(transparent)]
    Decimal(#[from] ParseDecimalError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Demo {
    CountLines,
    SumRange,
    SumOddRange,
    PrintRange,
    FirstCharacters,
    LineLengths,
    DecimalSum,
}

impl Demo {
    pub const ALL: [Demo; 7] = [
        Demo::CountLines,
        Demo::SumRange,
        Demo::SumOddRange,
        Demo::PrintRange,
        Demo::FirstCharacters,
        Demo::LineLengths,
        Demo::DecimalSum,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Demo::CountLines => "ep7",
            Demo::SumRange => "ep8",
            Demo::SumOddRange => "ep9",
            Demo::PrintRange => "ep10",
            Demo::FirstCharacters => "ep11",
            Demo::LineLengths => "ep12",
            Demo::DecimalSum => "ep13",
        }
    }

    pub fn needs_file(self) -> bool {
        matches!(
            self,
            Demo::CountLines | Demo::FirstCharacters | Demo::LineLengths | Demo::DecimalSum
        )
    }

    /// Runs the demo, printing its result to `out`.
    pub fn run<W: Write + Send>(self, file: Option<&Path>, out: &mut W) -> Result<(), DemoError> {
        let input = || match (self.needs_file(), file) {
            (true, Some(path)) => Ok(lines(path)?),
            _ => Err(DemoError::MissingFile(self)),
        };
        match self {
            Demo::CountLines => writeln!(out, "{}", input()?.count()?)?,
            Demo::SumRange => writeln!(out, "{}", range_closed(27, 159).sum()?)?,
            Demo::SumOddRange => {
                let sum = range_closed(27, 159).filter(|x| x % 2 == 1)?.sum()?;
                writeln!(out, "{sum}")?
            }
            Demo::PrintRange => print_each(range_closed(27, 159), out)?,
            Demo::FirstCharacters => {
                let firsts = input()?.map(|s| s.chars().take(1).collect::<String>())?;
                print_each(firsts, out)?
            }
            Demo::LineLengths => {
                let lengths = input()?.map_to_int(|s| s.chars().count() as i64)?;
                print_each(lengths, out)?
            }
            Demo::DecimalSum => {
                let sum = input()?.map(|s| s.parse::<ExactDecimal>())?.reduce(
                    Ok(ExactDecimal::zero()),
                    |total: Result<ExactDecimal, ParseDecimalError>, value| Ok(total? + value?),
                )??;
                writeln!(out, "{sum}")?
            }
        }
        Ok(())
    }
}

impl FromStr for Demo {
    type Err = DemoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Demo::ALL
            .into_iter()
            .find(|d| d.id() == s)
            .ok_or_else(|| DemoError::UnknownDemo(s.to_owned()))
    }
}

impl Display for Demo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Looks up a demo by id and runs it.
pub fn run_demo<W: Write + Send>(id: &str, file: Option<&Path>, out: &mut W) -> Result<(), DemoError> {
    id.parse::<Demo>()?.run(file, out)
}

/// Writes each element on its own line; the first write error is returned.
fn print_each<T, W>(p: Pipeline<T>, out: &mut W) -> Result<(), DemoError>
where
    T: Display + Send + 'static,
    W: Write + Send,
{
    let sink = Mutex::new((out, None::<io::Error>));
    p.for_each(|x| {
        let mut guard = sink.lock().unwrap_or_else(|e| e.into_inner());
        let (out, err) = &mut *guard;
        if err.is_none() {
            if let Err(e) = writeln!(out, "{x}") {
                *err = Some(e);
            }
        }
    })?;
    match sink.into_inner().unwrap_or_else(|e| e.into_inner()).1 {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}
