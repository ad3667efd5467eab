//! Batch front end for `toric-class`: reads JSON descriptions of discrete
//! polymatroids and multicomplexes and reports class groups, canonical
//! classes and Gorenstein verdicts.

use std::fmt;

pub mod commands;
pub mod input;
pub mod report;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const CROSS_CHECK: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const RESOURCE: u8 = 3;
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed or mathematically invalid input.
    Input(String),
    /// A size or point cap was exceeded.
    Resource(String),
    /// Two computations that must agree did not, or an internal invariant broke.
    CrossCheck(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => exit::INPUT,
            CliError::Resource(_) => exit::RESOURCE,
            CliError::CrossCheck(_) => exit::CROSS_CHECK,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Resource(m) => write!(f, "resource limit: {m}"),
            CliError::CrossCheck(m) => write!(f, "cross-check failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<toric_class::Error> for CliError {
    fn from(e: toric_class::Error) -> Self {
        match e {
            toric_class::Error::Usage(m) => CliError::Input(m),
            toric_class::Error::Resource(m) => CliError::Resource(m),
            toric_class::Error::Invariant(m) | toric_class::Error::Internal(m) => CliError::CrossCheck(m),
        }
    }
}
