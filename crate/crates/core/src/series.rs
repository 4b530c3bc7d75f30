use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::month::YearMonth;

/// What a monthly series measures; decides which values are admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    /// Index level, strictly positive.
    IndexLevel,
    /// Quoted rate as a decimal fraction, non-negative.
    QuotedRate,
}

/// Contiguous run of monthly observations.
///
/// Stored as a start month plus one value per month, so months are strictly
/// increasing with no gaps by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MonthlySeries {
    start: YearMonth,
    values: Vec<f64>,
    kind: SeriesKind,
}

impl MonthlySeries {
    pub fn new(start: YearMonth, values: Vec<f64>, kind: SeriesKind) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("series has no observations".into()));
        }
        for (i, v) in values.iter().enumerate() {
            let ok = match kind {
                SeriesKind::IndexLevel => v.is_finite() && *v > 0.0,
                SeriesKind::QuotedRate => v.is_finite() && *v >= 0.0,
            };
            if !ok {
                return Err(Error::Domain(format!(
                    "invalid {kind:?} value {v} at {}",
                    start.offset(i as i64)
                )));
            }
        }
        Ok(Self {
            start,
            values,
            kind,
        })
    }

    /// Builds a series from explicit (month, value) pairs, which must be
    /// strictly increasing and contiguous.
    pub fn from_entries(entries: &[(YearMonth, f64)], kind: SeriesKind) -> Result<Self> {
        let Some(&(start, _)) = entries.first() else {
            return Err(Error::Domain("series has no observations".into()));
        };
        let mut missing = Vec::new();
        for w in entries.windows(2) {
            let (a, b) = (w[0].0, w[1].0);
            if b <= a {
                return Err(Error::Domain(format!("months not increasing at {a} -> {b}")));
            }
            let mut m = a.succ();
            while m < b {
                missing.push(m);
                m = m.succ();
            }
        }
        if !missing.is_empty() {
            return Err(Error::Gap { missing });
        }
        Self::new(start, entries.iter().map(|e| e.1).collect(), kind)
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn start(&self) -> YearMonth {
        self.start
    }

    pub fn end(&self) -> YearMonth {
        self.start.offset(self.values.len() as i64 - 1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn months(&self) -> impl Iterator<Item = YearMonth> + '_ {
        (0..self.values.len()).map(move |i| self.start.offset(i as i64))
    }

    pub fn entries(&self) -> impl Iterator<Item = (YearMonth, f64)> + '_ {
        self.months().zip(self.values.iter().copied())
    }

    pub fn get(&self, month: YearMonth) -> Option<f64> {
        let i = month.months_since(self.start);
        usize::try_from(i).ok().and_then(|i| self.values.get(i).copied())
    }

    /// Inclusive month-range slice.
    pub fn clip(&self, start: YearMonth, end: YearMonth) -> Result<Self> {
        if start > end {
            return Err(Error::Range(format!("start {start} is after end {end}")));
        }
        let lo = start.max(self.start);
        let hi = end.min(self.end());
        if lo > hi {
            return Err(Error::Range(format!(
                "{start}..{end} does not overlap series {}..{}",
                self.start,
                self.end()
            )));
        }
        let i = lo.months_since(self.start) as usize;
        let j = hi.months_since(self.start) as usize;
        Ok(Self {
            start: lo,
            values: self.values[i..=j].to_vec(),
            kind: self.kind,
        })
    }

    /// Relabels every observation `lag` months later, so that the value
    /// observed in month `m` is paired with month `m + lag`.
    pub fn shifted(&self, lag: i64) -> Self {
        Self {
            start: self.start.offset(lag),
            values: self.values.clone(),
            kind: self.kind,
        }
    }

    /// `month,value` CSV, one row per month.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("month,value\n");
        for (m, v) in self.entries() {
            let _ = writeln!(out, "{m},{v}");
        }
        out
    }
}
