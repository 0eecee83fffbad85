//! Error types shared across the crate.

use thiserror::Error;

/// A single rejected configuration field with a human-readable reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldViolation {
    pub field: String,
    pub message: String,
}

impl std::fmt::Display for FieldViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Configuration rejected; carries one entry per offending field.
    #[error("invalid configuration: {}", format_violations(.0))]
    InvalidConfig(Vec<FieldViolation>),

    /// Config text could not be parsed (1-based line/column).
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },

    /// Requested grid would exceed the node cap.
    #[error("grid too large: {requested} nodes exceeds cap of {cap}")]
    GridTooLarge { requested: usize, cap: usize },

    /// Operation invoked with an incompatible medium model.
    #[error("model mismatch: {operation} requires {expected}, got {actual}")]
    ModelMismatch {
        operation: &'static str,
        expected: &'static str,
        actual: &'static str,
    },

    /// A population left [0, 1] beyond tolerance: the step is unstable,
    /// not a physics result.
    #[error("state out of bounds at tau={tau}: {component}={value}")]
    StateOutOfBounds {
        tau: f64,
        component: &'static str,
        value: f64,
    },

    /// Full-model stability precondition violated.
    #[error(
        "unstable step: dtau={dtau} exceeds {limit} required by rate ratio {ratio}"
    )]
    StepUnstable { dtau: f64, limit: f64, ratio: f64 },

    /// Field line identically zero; no support boundary exists.
    #[error("field line is identically zero; no front to detect")]
    NoFront,

    /// Discrete maximum sits on the first/last node; parabolic
    /// interpolation is undefined there.
    #[error("peak lies on a grid boundary; interpolation undefined")]
    PeakAtBoundary,

    /// Input line carries no energy; transmission ratio undefined.
    #[error("input line has zero integrated intensity")]
    ZeroInput,

    /// Root solve did not converge (bad parameters).
    #[error("root solve failed to converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn format_violations(violations: &[FieldViolation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
