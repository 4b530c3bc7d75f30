//! Buy-now-or-wait analysis: effective-growth grids, the neutrality line and
//! region classification.
//!
//! The neutrality line is strictly a "price change vs. mortgage rate change"
//! line: every point is relative to the baseline rate and today's price level.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mortgage::{
    discount_factor, effective_growth, gamma, growth_with_adjuster, price_adjuster, to_periodic,
    LoanTerms, RateScenario,
};

/// Default sign tolerance for [`classify`].
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Upper bound on grid rows.
pub const MAX_GRID_ROWS: usize = 1_000_000;

/// Rows within this distance of the baseline rate are snapped onto it.
const SNAP: f64 = 1e-12;

/// Rows of an effective-growth grid plus its nominal-growth columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    baseline_rate: f64,
    rate_min: f64,
    rate_max: f64,
    rate_step: f64,
    growth_values: Vec<f64>,
    #[serde(skip)]
    terms: LoanTerms,
}

impl GridSpec {
    pub fn new(
        baseline_rate: f64,
        rate_min: f64,
        rate_max: f64,
        rate_step: f64,
        growth_values: Vec<f64>,
        terms: LoanTerms,
    ) -> Result<Self> {
        to_periodic(baseline_rate, &terms)?;
        to_periodic(rate_min, &terms)?;
        to_periodic(rate_max, &terms)?;
        if rate_min > rate_max {
            return Err(Error::Domain(format!(
                "rate_min {rate_min} exceeds rate_max {rate_max}"
            )));
        }
        if !(rate_step.is_finite() && rate_step > 0.0) {
            return Err(Error::Domain(format!("rate_step {rate_step} must be > 0")));
        }
        if growth_values.is_empty() {
            return Err(Error::Domain("growth_values is empty".into()));
        }
        if growth_values.iter().any(|g| !g.is_finite() || *g <= -1.0) {
            return Err(Error::Domain("growth values must be finite and > -1".into()));
        }
        if growth_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "growth_values must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            baseline_rate,
            rate_min,
            rate_max,
            rate_step,
            growth_values,
            terms,
        })
    }

    /// Baseline 4.5%, rates 3.5%..7.0% in 0.125% steps, growths -10%..+10%.
    pub fn default_table(terms: LoanTerms) -> Self {
        Self::new(
            0.045,
            0.035,
            0.07,
            0.00125,
            default_growths(),
            terms,
        )
        .expect("default grid is valid")
    }

    pub fn baseline_rate(&self) -> f64 {
        self.baseline_rate
    }

    pub fn growth_values(&self) -> &[f64] {
        &self.growth_values
    }

    pub fn terms(&self) -> &LoanTerms {
        &self.terms
    }

    /// Row rates, ascending, generated by integer step count.
    pub fn rates(&self) -> Result<Vec<f64>> {
        rate_rows(
            self.rate_min,
            self.rate_max,
            self.rate_step,
            self.baseline_rate,
        )
    }
}

/// Nominal growth columns of the default table, as fractions.
pub fn default_growths() -> Vec<f64> {
    [-10.0, -8.0, -6.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0]
        .iter()
        .map(|p| p / 100.0)
        .collect()
}

fn rate_rows(min: f64, max: f64, step: f64, baseline: f64) -> Result<Vec<f64>> {
    let span = (max - min) / step;
    // tolerate float dust so that e.g. (0.07-0.035)/0.00125 counts 28 steps
    let steps = (span + 1e-9).floor();
    if !steps.is_finite() || steps + 1.0 > MAX_GRID_ROWS as f64 {
        return Err(Error::Size {
            rows: if steps.is_finite() { steps as usize + 1 } else { usize::MAX },
            limit: MAX_GRID_ROWS,
        });
    }
    let rows = (0..=steps as usize)
        .map(|i| {
            let r = tidy(min + i as f64 * step);
            if (r - baseline).abs() <= SNAP {
                baseline
            } else {
                r
            }
        })
        .collect();
    Ok(rows)
}

/// Rounds accumulated step error away (rates are never quoted beyond 1e-12).
fn tidy(r: f64) -> f64 {
    (r * 1e12).round() / 1e12
}

/// Effective growth for every (rate, nominal growth) pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffectiveGrid {
    pub spec: GridSpec,
    /// Row labels, ascending.
    pub rates: Vec<f64>,
    /// `cells[i][j]` is the effective growth at `rates[i]`, `growth_values[j]`.
    pub cells: Vec<Vec<f64>>,
}

impl EffectiveGrid {
    /// Index of the row sitting exactly on the baseline rate, if any.
    pub fn baseline_row(&self) -> Option<usize> {
        self.rates.iter().position(|r| *r == self.spec.baseline_rate)
    }

    pub fn cell(&self, rate: f64, growth: f64) -> Option<f64> {
        let i = self.rates.iter().position(|r| (r - rate).abs() <= SNAP)?;
        let j = self
            .spec
            .growth_values
            .iter()
            .position(|g| (g - growth).abs() <= SNAP)?;
        Some(self.cells[i][j])
    }
}

pub fn build_grid(spec: &GridSpec) -> Result<EffectiveGrid> {
    let rates = spec.rates()?;
    let baseline = to_periodic(spec.baseline_rate, &spec.terms)?;
    let cells = rates
        .iter()
        .map(|&rate| {
            let alt = to_periodic(rate, &spec.terms)?;
            let adj = price_adjuster(baseline, alt, &spec.terms);
            Ok(spec
                .growth_values
                .iter()
                .map(|&g| growth_with_adjuster(adj, g))
                .collect())
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    Ok(EffectiveGrid {
        spec: spec.clone(),
        rates,
        cells,
    })
}

/// A point on the neutrality line: nominal growth at which effective growth is zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NeutralityPoint {
    pub alternative_rate: f64,
    pub neutral_growth: f64,
}

/// Nominal growth that exactly offsets the move from `baseline_rate` to
/// `alternative_rate`: `(1-γ)/γ`.
pub fn neutral_growth(
    baseline_rate: f64,
    alternative_rate: f64,
    terms: &LoanTerms,
) -> Result<NeutralityPoint> {
    let s = RateScenario::new(baseline_rate, alternative_rate, 0.0, *terms)?;
    let g = gamma(&s);
    Ok(NeutralityPoint {
        alternative_rate,
        neutral_growth: (1.0 - g) / g,
    })
}

/// Same root as [`neutral_growth`], written in discount factors:
/// `(1-α)(β_B - β_A) / (α β_B + (1-α) β_A)`.
pub fn neutral_growth_by_factors(
    baseline_rate: f64,
    alternative_rate: f64,
    terms: &LoanTerms,
) -> Result<f64> {
    let alpha = terms.down_payment_rate();
    let beta_a = discount_factor(to_periodic(baseline_rate, terms)?, terms.term_months());
    let beta_b = discount_factor(to_periodic(alternative_rate, terms)?, terms.term_months());
    Ok((1.0 - alpha) * (beta_b - beta_a) / (alpha * beta_b + (1.0 - alpha) * beta_a))
}

/// Samples the neutrality line over `[rate_min, rate_max]`. The baseline rate
/// is always included when it lies inside the range.
pub fn sample_neutrality_line(
    baseline_rate: f64,
    rate_min: f64,
    rate_max: f64,
    step: f64,
    terms: &LoanTerms,
) -> Result<Vec<NeutralityPoint>> {
    if !(rate_min <= rate_max) {
        return Err(Error::Domain(format!(
            "empty rate range [{rate_min}, {rate_max}]"
        )));
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::Domain(format!("rate step {step} must be > 0")));
    }
    let mut rates = rate_rows(rate_min, rate_max, step, baseline_rate)?;
    if (rate_min..=rate_max).contains(&baseline_rate) && !rates.contains(&baseline_rate) {
        let at = rates.partition_point(|r| *r < baseline_rate);
        rates.insert(at, baseline_rate);
    }
    rates
        .into_iter()
        .map(|r| neutral_growth(baseline_rate, r, terms))
        .collect()
}

/// Sign of one of the three classification coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: f64, tolerance: f64) -> Self {
        if x > tolerance {
            Sign::Positive
        } else if x < -tolerance {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

/// Purchase-decision regions off the neutrality line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Region {
    A,
    B,
    C,
    D,
    E,
    F,
    OnBoundary,
}

impl Region {
    pub const ALL: [Region; 6] = [
        Region::A,
        Region::B,
        Region::C,
        Region::D,
        Region::E,
        Region::F,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Region::A => "A",
            Region::B => "B",
            Region::C => "C",
            Region::D => "D",
            Region::E => "E",
            Region::F => "F",
            Region::OnBoundary => "OnBoundary",
        }
    }

    pub fn recommendation(self) -> &'static str {
        match self {
            Region::A => "Should buy now; future mortgage rate reduction is not enough to compensate for price increase",
            Region::B => "Should buy now; double whamming from future increase in both mortgage rate and price",
            Region::C => "Should buy now; future price reduction is not enough to compensate for mortgage rate increase",
            Region::D => "Should wait; future mortgage rate increase is well compensated by price reduction",
            Region::E => "Should wait; future purchases benefit from reduction in both price and mortgage rate",
            Region::F => "Should wait; future price increase is well compensated by mortgage rate reduction",
            Region::OnBoundary => "On a boundary line; buying now and waiting are equivalent at this tolerance",
        }
    }

    /// Signs of (price change, rate change, effective growth) that define the region.
    pub fn signs(self) -> Option<(Sign, Sign, Sign)> {
        use Sign::{Negative as N, Positive as P};
        Some(match self {
            Region::A => (P, N, P),
            Region::B => (P, P, P),
            Region::C => (N, P, P),
            Region::D => (N, P, N),
            Region::E => (N, N, N),
            Region::F => (P, N, N),
            Region::OnBoundary => return None,
        })
    }

    pub fn buy_now(self) -> Option<bool> {
        match self {
            Region::A | Region::B | Region::C => Some(true),
            Region::D | Region::E | Region::F => Some(false),
            Region::OnBoundary => None,
        }
    }

    fn from_signs(price: Sign, rate: Sign, effective: Sign) -> Result<Self> {
        use Sign::{Negative as N, Positive as P, Zero};
        if price == Zero || rate == Zero || effective == Zero {
            return Ok(Region::OnBoundary);
        }
        match (price, rate, effective) {
            (P, N, P) => Ok(Region::A),
            (P, P, P) => Ok(Region::B),
            (N, P, P) => Ok(Region::C),
            (N, P, N) => Ok(Region::D),
            (N, N, N) => Ok(Region::E),
            (P, N, N) => Ok(Region::F),
            other => Err(Error::Invariant(format!(
                "sign triple {other:?} cannot occur when the adjuster is positive"
            ))),
        }
    }
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Classifies a scenario by the signs of nominal growth, rate change and
/// effective growth. Any coordinate within `tolerance` of zero is a boundary.
pub fn classify(scenario: &RateScenario, tolerance: f64) -> Result<Region> {
    if !(tolerance >= 0.0) {
        return Err(Error::Domain(format!("tolerance {tolerance} must be >= 0")));
    }
    let price = Sign::of(scenario.nominal_growth(), tolerance);
    let rate = Sign::of(
        scenario.alternative_rate() - scenario.baseline_rate(),
        tolerance,
    );
    let effective = Sign::of(effective_growth(scenario), tolerance);
    Region::from_signs(price, rate, effective)
}
