//! Closed-form fixed-rate mortgage arithmetic.
//!
//! Every purchase is financed with a fixed-rate, fully amortizing mortgage
//! over `term_months` payments, after a down payment proportional to price.
//! The annuity (discounting) factor of a rate links a monthly payment back to
//! the financed principal, and the ratio of two such factors is what turns a
//! nominal future price into an effective price at today's rate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How quoted rates are expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateConvention {
    /// Annual nominal rate compounded monthly; the periodic rate is `rate / 12`.
    #[default]
    AnnualNominal,
    /// Already a per-month rate.
    MonthlyPeriodic,
}

/// Mortgage term, down payment share and rate quoting convention.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoanTerms {
    term_months: u32,
    down_payment_rate: f64,
    rate_convention: RateConvention,
}

impl LoanTerms {
    pub fn new(
        term_months: u32,
        down_payment_rate: f64,
        rate_convention: RateConvention,
    ) -> Result<Self> {
        if term_months == 0 {
            return Err(Error::Domain("term_months must be at least 1".into()));
        }
        if !(0.0..1.0).contains(&down_payment_rate) {
            return Err(Error::Domain(format!(
                "down payment rate {down_payment_rate} outside [0, 1)"
            )));
        }
        Ok(Self {
            term_months,
            down_payment_rate,
            rate_convention,
        })
    }

    /// 30-year term, annual nominal quotes, with the given down payment rate.
    pub fn thirty_year(down_payment_rate: f64) -> Result<Self> {
        Self::new(360, down_payment_rate, RateConvention::AnnualNominal)
    }

    pub fn term_months(&self) -> u32 {
        self.term_months
    }

    pub fn down_payment_rate(&self) -> f64 {
        self.down_payment_rate
    }

    pub fn rate_convention(&self) -> RateConvention {
        self.rate_convention
    }
}

impl Default for LoanTerms {
    fn default() -> Self {
        Self {
            term_months: 360,
            down_payment_rate: 0.20,
            rate_convention: RateConvention::AnnualNominal,
        }
    }
}

/// Per-month interest rate as a decimal fraction, in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct PeriodicRate(f64);

impl PeriodicRate {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::Domain(format!("periodic rate {value} must be >= 0")));
        }
        if value >= 1.0 {
            return Err(Error::Domain(format!("periodic rate {value} must be < 1")));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Converts a quoted rate to its per-month equivalent.
///
/// Annual nominal quotes are divided by 12. No published table states this
/// convention; it is the one that reproduces the 4.5%/360-month grid.
pub fn to_periodic(rate: f64, terms: &LoanTerms) -> Result<PeriodicRate> {
    if !rate.is_finite() || rate < 0.0 {
        return Err(Error::Domain(format!("quoted rate {rate} must be >= 0")));
    }
    match terms.rate_convention {
        RateConvention::AnnualNominal => PeriodicRate::new(rate / 12.0),
        RateConvention::MonthlyPeriodic => PeriodicRate::new(rate),
    }
}

/// Present value of `term_months` payments of 1 at `rate`:
/// `((1+r)^T - 1) / (r (1+r)^T)`, and `T` at `r = 0`.
pub fn discount_factor(rate: PeriodicRate, term_months: u32) -> f64 {
    let r = rate.value();
    let t = f64::from(term_months);
    if r == 0.0 {
        return t;
    }
    // (1 - (1+r)^-T) / r, written to stay accurate as r -> 0.
    -f64::exp_m1(-t * r.ln_1p()) / r
}

/// The effective-price adjuster `(1-α)·β(baseline)/β(alternative) + α`.
///
/// Equal rates give exactly 1.
pub fn price_adjuster(baseline: PeriodicRate, alternative: PeriodicRate, terms: &LoanTerms) -> f64 {
    if baseline == alternative {
        return 1.0;
    }
    let alpha = terms.down_payment_rate;
    let beta_a = discount_factor(baseline, terms.term_months);
    let beta_b = discount_factor(alternative, terms.term_months);
    (1.0 - alpha) * beta_a / beta_b + alpha
}

/// Effective growth `γ(1+g) - 1`, evaluated as `γ·g + (γ-1)` so that `γ = 1`
/// returns `g` bit-for-bit.
pub fn growth_with_adjuster(adjuster: f64, nominal_growth: f64) -> f64 {
    adjuster * nominal_growth + (adjuster - 1.0)
}

/// A price together with the rate at which it would be financed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PurchaseQuote {
    price: f64,
    rate: f64,
    periodic: PeriodicRate,
    terms: LoanTerms,
}

impl PurchaseQuote {
    pub fn new(price: f64, rate: f64, terms: LoanTerms) -> Result<Self> {
        if !price.is_finite() || price <= 0.0 {
            return Err(Error::Domain(format!("price {price} must be > 0")));
        }
        let periodic = to_periodic(rate, &terms)?;
        Ok(Self {
            price,
            rate,
            periodic,
            terms,
        })
    }

    pub fn price(&self) -> f64 {
        self.price
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn periodic_rate(&self) -> PeriodicRate {
        self.periodic
    }

    pub fn terms(&self) -> &LoanTerms {
        &self.terms
    }
}

/// Scheduled monthly payment on the financed share `(1-α)·P`.
pub fn monthly_payment(quote: &PurchaseQuote) -> f64 {
    let financed = (1.0 - quote.terms.down_payment_rate) * quote.price;
    financed / discount_factor(quote.periodic, quote.terms.term_months)
}

pub fn down_payment(quote: &PurchaseQuote) -> f64 {
    quote.terms.down_payment_rate * quote.price
}

/// Buying now at `baseline_rate` versus buying next period at
/// `alternative_rate` after nominal prices moved by `nominal_growth`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateScenario {
    baseline_rate: f64,
    alternative_rate: f64,
    nominal_growth: f64,
    terms: LoanTerms,
    baseline_periodic: PeriodicRate,
    alternative_periodic: PeriodicRate,
}

impl RateScenario {
    pub fn new(
        baseline_rate: f64,
        alternative_rate: f64,
        nominal_growth: f64,
        terms: LoanTerms,
    ) -> Result<Self> {
        if !nominal_growth.is_finite() || nominal_growth <= -1.0 {
            return Err(Error::Domain(format!(
                "nominal growth {nominal_growth} must be > -1"
            )));
        }
        let baseline_periodic = to_periodic(baseline_rate, &terms)?;
        let alternative_periodic = to_periodic(alternative_rate, &terms)?;
        Ok(Self {
            baseline_rate,
            alternative_rate,
            nominal_growth,
            terms,
            baseline_periodic,
            alternative_periodic,
        })
    }

    pub fn baseline_rate(&self) -> f64 {
        self.baseline_rate
    }

    pub fn alternative_rate(&self) -> f64 {
        self.alternative_rate
    }

    pub fn nominal_growth(&self) -> f64 {
        self.nominal_growth
    }

    pub fn terms(&self) -> &LoanTerms {
        &self.terms
    }

    pub fn baseline_periodic(&self) -> PeriodicRate {
        self.baseline_periodic
    }

    pub fn alternative_periodic(&self) -> PeriodicRate {
        self.alternative_periodic
    }

    /// Same rates and terms, different nominal growth.
    pub fn with_growth(&self, nominal_growth: f64) -> Result<Self> {
        Self::new(
            self.baseline_rate,
            self.alternative_rate,
            nominal_growth,
            self.terms,
        )
    }
}

/// Multiplier from a future nominal price to its effective price at the baseline rate.
pub fn gamma(scenario: &RateScenario) -> f64 {
    price_adjuster(
        scenario.baseline_periodic,
        scenario.alternative_periodic,
        &scenario.terms,
    )
}

/// `γ·P_B`: what a future purchase at `price_b` costs in today's rate terms.
pub fn effective_price(price_b: f64, scenario: &RateScenario) -> Result<f64> {
    if !price_b.is_finite() || price_b <= 0.0 {
        return Err(Error::Domain(format!("price {price_b} must be > 0")));
    }
    Ok(gamma(scenario) * price_b)
}

pub fn effective_growth(scenario: &RateScenario) -> f64 {
    growth_with_adjuster(gamma(scenario), scenario.nominal_growth)
}
