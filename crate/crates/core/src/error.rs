use thiserror::Error;

use crate::month::YearMonth;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input outside the domain of a formula (negative rate, α ∉ [0,1), g ≤ -1, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("format error: {0}")]
    Format(String),

    #[error("series has gaps; missing months: {}", join_months(.missing))]
    Gap { missing: Vec<YearMonth> },

    #[error("rate series does not cover lagged months: {}", join_months(.missing))]
    Alignment { missing: Vec<YearMonth> },

    #[error("range error: {0}")]
    Range(String),

    #[error("grid too large: {rows} rows (limit {limit})")]
    Size { rows: usize, limit: usize },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

fn join_months(months: &[YearMonth]) -> String {
    const SHOWN: usize = 24;
    let mut out = months
        .iter()
        .take(SHOWN)
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    if months.len() > SHOWN {
        out.push_str(&format!(" (+{} more)", months.len() - SHOWN));
    }
    out
}
