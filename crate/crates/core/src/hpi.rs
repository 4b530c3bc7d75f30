//! Mortgage-rate-neutral home price index.
//!
//! Each month's nominal growth is converted to effective growth with the
//! adjuster for the move from last month's rate to this month's rate. The
//! implied price adjustments are then accumulated from the first month's
//! level, which yields an index with the month-to-month rate effect removed.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mortgage::{growth_with_adjuster, price_adjuster, to_periodic, LoanTerms};
use crate::month::YearMonth;
use crate::series::{MonthlySeries, SeriesKind};

pub const DEFAULT_LAG_MONTHS: u32 = 2;

/// `g_1 = 0`, `g_n = h_n / h_{n-1} - 1`.
pub fn growth_series(hpi: &MonthlySeries) -> Result<Vec<f64>> {
    if hpi.kind() != SeriesKind::IndexLevel {
        return Err(Error::Domain("growth_series needs an index-level series".into()));
    }
    let h = hpi.values();
    if let Some(bad) = h.iter().find(|v| !(**v > 0.0)) {
        return Err(Error::Domain(format!("non-positive index level {bad}")));
    }
    Ok(std::iter::once(0.0)
        .chain(h.windows(2).map(|w| (w[1] - w[0]) / w[0]))
        .collect())
}

/// `γ_1 = 1`, `γ_n` = adjuster for last month's rate to this month's rate.
pub fn adjuster_series(rates: &MonthlySeries, terms: &LoanTerms) -> Result<Vec<f64>> {
    if rates.kind() != SeriesKind::QuotedRate {
        return Err(Error::Domain("adjuster_series needs a quoted-rate series".into()));
    }
    let periodic = rates
        .values()
        .iter()
        .map(|r| to_periodic(*r, terms))
        .collect::<Result<Vec<_>>>()?;
    Ok(std::iter::once(1.0)
        .chain(periodic.windows(2).map(|w| price_adjuster(w[0], w[1], terms)))
        .collect())
}

/// Nominal and rate-neutral index side by side, with every intermediate series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdjustedIndex {
    pub start: YearMonth,
    pub down_payment_rate: f64,
    pub lag_months: u32,
    pub nominal: Vec<f64>,
    pub growth: Vec<f64>,
    pub adjuster: Vec<f64>,
    pub effective_growth: Vec<f64>,
    pub adjustment: Vec<f64>,
    pub adjusted: Vec<f64>,
}

impl AdjustedIndex {
    fn accumulate(
        start: YearMonth,
        down_payment_rate: f64,
        lag_months: u32,
        nominal: Vec<f64>,
        mut growth: Vec<f64>,
        mut adjuster: Vec<f64>,
    ) -> Self {
        growth[0] = 0.0;
        adjuster[0] = 1.0;
        let effective_growth: Vec<f64> = growth
            .iter()
            .zip(&adjuster)
            .map(|(g, a)| growth_with_adjuster(*a, *g))
            .collect();
        let adjustment: Vec<f64> = std::iter::once(0.0)
            .chain((1..nominal.len()).map(|n| nominal[n - 1] * effective_growth[n]))
            .collect();
        let adjusted = adjustment
            .iter()
            .scan(nominal[0], |level, k| {
                *level += k;
                Some(*level)
            })
            .collect();
        Self {
            start,
            down_payment_rate,
            lag_months,
            nominal,
            growth,
            adjuster,
            effective_growth,
            adjustment,
            adjusted,
        }
    }

    pub fn len(&self) -> usize {
        self.nominal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nominal.is_empty()
    }

    pub fn end(&self) -> YearMonth {
        self.start.offset(self.len() as i64 - 1)
    }

    pub fn months(&self) -> impl Iterator<Item = YearMonth> + '_ {
        (0..self.len()).map(move |i| self.start.offset(i as i64))
    }

    fn index_of(&self, month: YearMonth) -> Option<usize> {
        usize::try_from(month.months_since(self.start))
            .ok()
            .filter(|i| *i < self.len())
    }

    /// The adjusted index rebuilt as `h_n + Σ_{i≤n} (γ_i - 1) h_i`, without
    /// going through the per-month adjustments.
    pub fn closed_form_adjusted(&self) -> Vec<f64> {
        self.nominal
            .iter()
            .zip(&self.adjuster)
            .scan(0.0, |excess, (h, a)| {
                *excess += (a - 1.0) * h;
                Some(h + *excess)
            })
            .collect()
    }

    /// Restarts the adjustment at `start`: the window's first month gets
    /// `γ = 1` and `h* = h`, later months keep their growth and adjuster.
    pub fn rebased(&self, start: YearMonth, end: YearMonth) -> Result<Self> {
        if start > end {
            return Err(Error::Domain(format!("empty window {start}..{end}")));
        }
        let (Some(i), Some(j)) = (self.index_of(start), self.index_of(end)) else {
            return Err(Error::Range(format!(
                "window {start}..{end} outside series {}..{}",
                self.start,
                self.end()
            )));
        };
        Ok(Self::accumulate(
            start,
            self.down_payment_rate,
            self.lag_months,
            self.nominal[i..=j].to_vec(),
            self.growth[i..=j].to_vec(),
            self.adjuster[i..=j].to_vec(),
        ))
    }

    /// CSV with columns `month,nominal,growth,gamma,eff_growth,adjustment,adjusted`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("month,nominal,growth,gamma,eff_growth,adjustment,adjusted\n");
        for (n, m) in self.months().enumerate() {
            let _ = writeln!(
                out,
                "{m},{},{},{},{},{},{}",
                self.nominal[n],
                self.growth[n],
                self.adjuster[n],
                self.effective_growth[n],
                self.adjustment[n],
                self.adjusted[n]
            );
        }
        out
    }
}

/// Builds the rate-neutral index. The rate observed in month `m - lag_months`
/// drives HPI month `m`; every HPI month must have such a rate.
pub fn neutralize(
    hpi: &MonthlySeries,
    rates: &MonthlySeries,
    terms: &LoanTerms,
    lag_months: u32,
) -> Result<AdjustedIndex> {
    let growth = growth_series(hpi)?;
    if rates.kind() != SeriesKind::QuotedRate {
        return Err(Error::Domain("rate series must be a quoted-rate series".into()));
    }
    let lagged = rates.shifted(i64::from(lag_months));
    let missing: Vec<YearMonth> = hpi
        .months()
        .filter(|m| lagged.get(*m).is_none())
        .map(|m| m.offset(-i64::from(lag_months)))
        .collect();
    if !missing.is_empty() {
        return Err(Error::Alignment { missing });
    }
    let aligned = lagged.clip(hpi.start(), hpi.end())?;
    let adjuster = adjuster_series(&aligned, terms)?;
    Ok(AdjustedIndex::accumulate(
        hpi.start(),
        terms.down_payment_rate(),
        lag_months,
        hpi.values().to_vec(),
        growth,
        adjuster,
    ))
}

/// Nominal growth, rate-neutral growth and the share attributed to rates over a window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImpactReport {
    pub window_start: YearMonth,
    pub window_end: YearMonth,
    pub alpha: f64,
    pub lag_months: u32,
    pub nominal_growth: f64,
    pub adjusted_growth: f64,
    pub impact: f64,
}

/// `C = (A - B) / (1 + A)`.
pub fn impact_share(nominal_growth: f64, adjusted_growth: f64) -> f64 {
    (nominal_growth - adjusted_growth) / (1.0 + nominal_growth)
}

/// Impact of rate movements over `[start, end]`, with the adjustment
/// restarted at `start`.
pub fn impact(adjusted: &AdjustedIndex, start: YearMonth, end: YearMonth) -> Result<ImpactReport> {
    let window = adjusted.rebased(start, end)?;
    let last = window.len() - 1;
    let nominal_growth = window.nominal[last] / window.nominal[0] - 1.0;
    let adjusted_growth = window.adjusted[last] / window.adjusted[0] - 1.0;
    Ok(ImpactReport {
        window_start: start,
        window_end: end,
        alpha: adjusted.down_payment_rate,
        lag_months: adjusted.lag_months,
        nominal_growth,
        adjusted_growth,
        impact: impact_share(nominal_growth, adjusted_growth),
    })
}
