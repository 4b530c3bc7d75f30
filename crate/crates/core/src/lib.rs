//! Mortgage-rate-adjusted home prices.
//!
//! * [`mortgage`]: payments, annuity factors, the effective-price adjuster γ.
//! * [`scenario`]: effective-growth grids, the neutrality line, buy-now/wait regions.
//! * [`hpi`]: rate-neutral home price index and impact reports.
//! * [`ingest`]: FRED CSV parsing and monthly aggregation.
//! * [`report`]: CSV/JSON/table renderings used by the CLI.

pub mod error;
pub mod hpi;
pub mod ingest;
pub mod month;
pub mod mortgage;
pub mod report;
pub mod scenario;
pub mod series;

pub use error::{Error, Result};
pub use hpi::{
    adjuster_series, growth_series, impact, impact_share, neutralize, AdjustedIndex, ImpactReport,
    DEFAULT_LAG_MONTHS,
};
pub use ingest::{
    load_monthly, parse_fred_csv, read_fred_csv, to_monthly, write_fred_csv, Aggregation,
    FredCsv, RawObservation, ValueUnit,
};
pub use month::YearMonth;
pub use mortgage::{
    discount_factor, down_payment, effective_growth, effective_price, gamma, monthly_payment,
    price_adjuster, to_periodic, LoanTerms, PeriodicRate, PurchaseQuote, RateConvention,
    RateScenario,
};
pub use scenario::{
    build_grid, classify, neutral_growth, neutral_growth_by_factors, sample_neutrality_line,
    EffectiveGrid, GridSpec, NeutralityPoint, Region, DEFAULT_TOLERANCE,
};
pub use series::{MonthlySeries, SeriesKind};
