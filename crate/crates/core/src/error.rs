use thiserror::Error;

/// Errors surfaced by the evaluators, solvers and readers.
///
/// Every fallible path reports a typed error instead of silently returning a
/// non-finite value.
#[derive(Debug, Error)]
pub enum Error {
    #[error("working precision must be at least 15 decimal digits, got {0}")]
    InvalidDigits(u32),

    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("pole of {op} at {at}")]
    Pole { op: &'static str, at: String },

    #[error("{op}: requested accuracy {requested:e} unattainable, achievable about {achievable:e}")]
    Accuracy {
        op: &'static str,
        requested: f64,
        achievable: f64,
    },

    #[error("solver failure in {op}: {detail}")]
    Solver { op: &'static str, detail: String },

    #[error("argument continuation step underflow near sigma={sigma}, t={t} (zero ordinate straddles the path endpoint)")]
    Continuation { sigma: f64, t: f64 },

    #[error("precondition violated in {op}: {detail}")]
    Precondition { op: &'static str, detail: String },

    #[error("sampling too coarse: {detail}")]
    Resolution { detail: String },

    #[error("parse error in {source_name} line {line}: {detail}")]
    TableParse {
        source_name: String,
        line: usize,
        detail: String,
    },

    #[error("invalid reference table {source_name}: {detail}")]
    TableValidation {
        source_name: String,
        detail: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
