use std::fmt;

use optrig::granular::StressError;
use optrig::pythagorean::TripleError;
use optrig::sharpe::SharpeError;
use optrig::trig::TrigError;

/// Exit code for bad input, validation or I/O problems.
pub const EXIT_INPUT: i32 = 2;
/// Exit code for failures of an iterative method.
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

fn classify(numerical: bool, msg: String) -> CliError {
    if numerical {
        CliError::Numerical(msg)
    } else {
        CliError::Input(msg)
    }
}

impl From<TrigError> for CliError {
    fn from(e: TrigError) -> Self {
        classify(e.is_numerical(), e.to_string())
    }
}

impl From<StressError> for CliError {
    fn from(e: StressError) -> Self {
        classify(e.is_numerical(), e.to_string())
    }
}

impl From<SharpeError> for CliError {
    fn from(e: SharpeError) -> Self {
        classify(e.is_numerical(), e.to_string())
    }
}

impl From<TripleError> for CliError {
    fn from(e: TripleError) -> Self {
        let numerical = matches!(&e, TripleError::Trig(t) if t.is_numerical());
        classify(numerical, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
