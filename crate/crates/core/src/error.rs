// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed PLA text. `line` is 1-based.
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },

    /// A caller passed arguments that violate an operation's precondition.
    #[error("{0}")]
    Usage(String),

    /// Electrical parameters outside their physical domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("netlist cannot be simulated: {0}")]
    Netlist(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
