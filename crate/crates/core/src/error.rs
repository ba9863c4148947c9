//! Structured errors shared by every module.

use serde::Serialize;
use thiserror::Error;

/// Broad class of a failure, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    /// Malformed input: bad preset name, unparsable weight, wrong shape.
    Config,
    /// Well-formed input that violates an operation's precondition.
    Precondition,
    /// An enumeration or arithmetic bound was exceeded.
    ResourceBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("{module}::{operation}: {message}")]
pub struct Error {
    pub kind: ErrorKind,
    pub module: &'static str,
    pub operation: &'static str,
    pub message: String,
}

impl Error {
    pub fn new(
        kind: ErrorKind,
        module: &'static str,
        operation: &'static str,
        message: impl Into<String>,
    ) -> Self {
        Error {
            kind,
            module,
            operation,
            message: message.into(),
        }
    }

    pub fn config(module: &'static str, operation: &'static str, message: impl Into<String>) -> Self {
        Self::new(ErrorKind::Config, module, operation, message)
    }

    pub fn precondition(
        module: &'static str,
        operation: &'static str,
        message: impl Into<String>,
    ) -> Self {
        Self::new(ErrorKind::Precondition, module, operation, message)
    }

    pub fn resource(module: &'static str, operation: &'static str, message: impl Into<String>) -> Self {
        Self::new(ErrorKind::ResourceBound, module, operation, message)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
