//! FRED CSV ingestion.
//!
//! Files look like
//!
//! ```text
//! DATE,MORTGAGE30US
//! 2020-03-05,3.29
//! 2020-03-12,.
//! ```
//!
//! with `.` marking a missing observation. Line endings may be LF or CRLF.
//! Weekly series are reduced to one value per calendar month; missing values
//! are dropped within a month and never interpolated across months.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use chrono::NaiveDate;

use crate::error::{Error, Result};
use crate::month::YearMonth;
use crate::series::{MonthlySeries, SeriesKind};

const MISSING: &str = ".";

/// How raw values are scaled on load.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueUnit {
    /// Used as-is (index levels, or rates already given as fractions).
    Fraction,
    /// Divided by 100 (FRED quotes mortgage rates as e.g. `4.5`).
    Percent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawObservation {
    pub date: NaiveDate,
    pub value: Option<f64>,
}

/// A parsed FRED file: the series id from the header and its rows in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct FredCsv {
    pub series_id: String,
    pub observations: Vec<RawObservation>,
}

/// Reduction applied to the observations that fall in one month.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Aggregation {
    #[default]
    Mean,
    /// Latest-dated observation in the month.
    Last,
    /// Earliest-dated observation in the month.
    First,
}

impl std::str::FromStr for Aggregation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean" => Ok(Aggregation::Mean),
            "last" => Ok(Aggregation::Last),
            "first" => Ok(Aggregation::First),
            other => Err(Error::Domain(format!(
                "unknown aggregation {other:?} (expected mean, last or first)"
            ))),
        }
    }
}

pub fn parse_fred_csv(text: &str, unit: ValueUnit) -> Result<FredCsv> {
    let mut lines = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l));

    let (_, header) = lines
        .next()
        .filter(|(_, l)| !l.is_empty())
        .ok_or_else(|| Error::Format("empty file".into()))?;
    let header = header.trim_start_matches('\u{feff}');
    let series_id = match header.split_once(',') {
        // newer FRED exports label the date column `observation_date`
        Some(("DATE" | "observation_date", id)) if !id.is_empty() && !id.contains(',') => {
            id.to_string()
        }
        _ => {
            return Err(Error::Format(format!(
                "expected header \"DATE,<SERIES_ID>\", found {header:?}"
            )))
        }
    };

    let mut observations = Vec::new();
    for (line, row) in lines {
        if row.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line, message };
        let (date, value) = row
            .split_once(',')
            .ok_or_else(|| parse_err(format!("expected two fields, found {row:?}")))?;
        if value.contains(',') {
            return Err(parse_err(format!("expected two fields, found {row:?}")));
        }
        let date = NaiveDate::parse_from_str(date, "%Y-%m-%d")
            .map_err(|_| parse_err(format!("malformed date {date:?}")))?;
        let value = if value == MISSING {
            None
        } else {
            let v: f64 = value
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| parse_err(format!("non-numeric value {value:?}")))?;
            Some(match unit {
                ValueUnit::Fraction => v,
                ValueUnit::Percent => v / 100.0,
            })
        };
        observations.push(RawObservation { date, value });
    }
    if observations.is_empty() {
        return Err(Error::Format(format!("{series_id}: no observations")));
    }
    Ok(FredCsv {
        series_id,
        observations,
    })
}

pub fn read_fred_csv(path: impl AsRef<Path>, unit: ValueUnit) -> Result<FredCsv> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_fred_csv(&text, unit)
}

/// Writes `csv` back out in FRED layout (LF line endings). Parsing the output
/// with the same `unit` yields identical observations.
pub fn write_fred_csv(csv: &FredCsv, unit: ValueUnit) -> String {
    let mut out = format!("DATE,{}\n", csv.series_id);
    for obs in &csv.observations {
        let value = match obs.value {
            None => MISSING.to_string(),
            Some(v) => match unit {
                ValueUnit::Fraction => v.to_string(),
                ValueUnit::Percent => percent_text(v),
            },
        };
        let _ = writeln!(out, "{},{}", obs.date.format("%Y-%m-%d"), value);
    }
    out
}

/// Shortest decimal text `t` with `t.parse::<f64>() / 100 == v`.
fn percent_text(v: f64) -> String {
    let scaled = v * 100.0;
    for digits in 0..=17 {
        let t = format!("{scaled:.digits$}");
        if t.parse::<f64>().map(|p| p / 100.0) == Ok(v) {
            return t;
        }
    }
    // Some fractions are not reachable as p/100 for any decimal p; fall back
    // to the nearest scaled value.
    scaled.to_string()
}

/// Groups observations by calendar month and reduces each month to one value.
pub fn to_monthly(
    observations: &[RawObservation],
    kind: SeriesKind,
    aggregation: Aggregation,
) -> Result<MonthlySeries> {
    let mut by_month: BTreeMap<YearMonth, Vec<(NaiveDate, f64)>> = BTreeMap::new();
    let mut seen: Vec<YearMonth> = Vec::new();
    for obs in observations {
        let month = YearMonth::from_date(obs.date);
        seen.push(month);
        if let Some(v) = obs.value {
            by_month.entry(month).or_default().push((obs.date, v));
        }
    }
    if by_month.is_empty() {
        return Err(Error::Domain("no present values to aggregate".into()));
    }

    let first = *by_month.keys().next().unwrap();
    let last = *by_month.keys().next_back().unwrap();
    let mut missing = Vec::new();
    let mut m = first;
    while m <= last {
        if !by_month.contains_key(&m) {
            missing.push(m);
        }
        m = m.succ();
    }
    if !missing.is_empty() {
        return Err(Error::Gap { missing });
    }

    let values = by_month
        .into_values()
        .map(|mut obs| {
            obs.sort_by_key(|(d, _)| *d);
            match aggregation {
                Aggregation::Mean => obs.iter().map(|(_, v)| v).sum::<f64>() / obs.len() as f64,
                Aggregation::First => obs[0].1,
                Aggregation::Last => obs[obs.len() - 1].1,
            }
        })
        .collect();
    MonthlySeries::new(first, values, kind)
}

/// Reads a FRED file straight into a monthly series.
pub fn load_monthly(
    path: impl AsRef<Path>,
    kind: SeriesKind,
    unit: ValueUnit,
    aggregation: Aggregation,
) -> Result<MonthlySeries> {
    let csv = read_fred_csv(path, unit)?;
    to_monthly(&csv.observations, kind, aggregation)
}
