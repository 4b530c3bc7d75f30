//! `effprice`: effective home prices, buy-now/wait regions and rate-neutral HPIs.
//!
//! Rates and growths are entered in percent (`4.5` means 4.5%) and converted
//! to fractions once, here. Exit codes: 0 success, 1 domain or data error,
//! 2 usage error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use effprice::{
    build_grid, classify, effective_growth, effective_price, gamma, impact, load_monthly,
    neutralize, report, sample_neutrality_line, Aggregation, GridSpec, LoanTerms, RateConvention,
    RateScenario, SeriesKind, ValueUnit, YearMonth, DEFAULT_TOLERANCE,
};
use serde_json::json;

const DATA_DIR_ENV: &str = "EFFPRICE_DATA_DIR";
const DEFAULT_HPI_FILE: &str = "CSUSHPINSA.csv";
const DEFAULT_RATES_FILE: &str = "MORTGAGE30US.csv";

#[derive(Debug, Parser)]
#[command(name = "effprice", version, about = "Mortgage-rate-adjusted home price analysis")]
struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    output: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Price adjuster, effective growth and effective price for one scenario.
    Effective(EffectiveArgs),
    /// Effective-growth grid over rates (rows) and nominal growths (columns).
    Grid(GridArgs),
    /// Sample the neutrality line (nominal growth with zero effective growth).
    Neutrality(NeutralityArgs),
    /// Buy-now-or-wait region of a scenario.
    Classify(ClassifyArgs),
    /// Rate-neutral index from FRED HPI and mortgage-rate files.
    Adjust(AdjustArgs),
    /// Nominal vs. rate-neutral growth and the impact share over a window.
    Impact(ImpactArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Convention {
    Annual,
    Monthly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Unit {
    Fraction,
    Percent,
}

impl From<Unit> for ValueUnit {
    fn from(u: Unit) -> Self {
        match u {
            Unit::Fraction => ValueUnit::Fraction,
            Unit::Percent => ValueUnit::Percent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Agg {
    Mean,
    Last,
    First,
}

impl From<Agg> for Aggregation {
    fn from(a: Agg) -> Self {
        match a {
            Agg::Mean => Aggregation::Mean,
            Agg::Last => Aggregation::Last,
            Agg::First => Aggregation::First,
        }
    }
}

#[derive(Debug, Args)]
struct TermArgs {
    /// Mortgage term in months.
    #[arg(long, default_value_t = 360, value_parser = clap::value_parser!(u32).range(1..))]
    term: u32,

    /// How quoted rates compound: annual nominal (divided by 12) or already monthly.
    #[arg(long, value_enum, default_value_t = Convention::Annual)]
    rate_convention: Convention,
}

impl TermArgs {
    fn terms(&self, alpha: f64) -> effprice::Result<LoanTerms> {
        let convention = match self.rate_convention {
            Convention::Annual => RateConvention::AnnualNominal,
            Convention::Monthly => RateConvention::MonthlyPeriodic,
        };
        LoanTerms::new(self.term, alpha, convention)
    }
}

#[derive(Debug, Args)]
struct EffectiveArgs {
    /// Today's mortgage rate, percent.
    #[arg(long, value_parser = rate_pct)]
    baseline_rate: f64,
    /// Next period's mortgage rate, percent.
    #[arg(long, value_parser = rate_pct)]
    rate: f64,
    /// Nominal price growth to next period, percent.
    #[arg(long, default_value = "0", value_parser = growth_pct, allow_negative_numbers = true)]
    growth: f64,
    /// Nominal price next period; adds the effective price to the report.
    #[arg(long, value_parser = positive)]
    price: Option<f64>,
    /// Down payment rate as a fraction in [0, 1).
    #[arg(long, default_value = "0.20", value_parser = alpha)]
    alpha: f64,
    #[command(flatten)]
    term: TermArgs,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, default_value = "4.5", value_parser = rate_pct)]
    baseline_rate: f64,
    #[arg(long, default_value = "3.5", value_parser = rate_pct)]
    rate_min: f64,
    #[arg(long, default_value = "7.0", value_parser = rate_pct)]
    rate_max: f64,
    #[arg(long, default_value = "0.125", value_parser = step_pct)]
    rate_step: f64,
    /// Nominal growth columns, percent, comma separated and increasing.
    #[arg(
        long,
        value_delimiter = ',',
        allow_negative_numbers = true,
        value_parser = growth_pct,
        default_value = "-10,-8,-6,-4,-2,-1,0,1,2,4,6,8,10"
    )]
    growths: Vec<f64>,
    #[arg(long, default_value = "0.20", value_parser = alpha)]
    alpha: f64,
    #[command(flatten)]
    term: TermArgs,
}

#[derive(Debug, Args)]
struct NeutralityArgs {
    #[arg(long, value_parser = rate_pct)]
    baseline_rate: f64,
    #[arg(long, default_value = "3.5", value_parser = rate_pct)]
    rate_min: f64,
    #[arg(long, default_value = "7.0", value_parser = rate_pct)]
    rate_max: f64,
    #[arg(long, default_value = "0.125", value_parser = step_pct)]
    rate_step: f64,
    #[arg(long, default_value = "0.20", value_parser = alpha)]
    alpha: f64,
    #[command(flatten)]
    term: TermArgs,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long, value_parser = rate_pct)]
    baseline_rate: f64,
    #[arg(long, value_parser = rate_pct)]
    rate: f64,
    #[arg(long, value_parser = growth_pct, allow_negative_numbers = true)]
    growth: f64,
    /// Values within this distance of zero count as on a boundary.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = non_negative)]
    tolerance: f64,
    #[arg(long, default_value = "0.20", value_parser = alpha)]
    alpha: f64,
    #[command(flatten)]
    term: TermArgs,
}

#[derive(Debug, Args)]
struct DataArgs {
    /// FRED CSV with the home price index (default: $EFFPRICE_DATA_DIR/CSUSHPINSA.csv).
    #[arg(long, value_name = "FILE")]
    hpi: Option<PathBuf>,
    /// FRED CSV with mortgage rates (default: $EFFPRICE_DATA_DIR/MORTGAGE30US.csv).
    #[arg(long, value_name = "FILE")]
    rates: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Unit::Fraction)]
    hpi_unit: Unit,
    #[arg(long, value_enum, default_value_t = Unit::Percent)]
    rates_unit: Unit,
    /// How observations within a month are combined.
    #[arg(long, value_enum, default_value_t = Agg::Mean)]
    aggregate: Agg,
    /// Months between a rate observation and the HPI month it affects.
    #[arg(long, default_value_t = 2)]
    lag: u32,
    /// First month of the window (YYYY-MM).
    #[arg(long, value_parser = month)]
    from: Option<YearMonth>,
    /// Last month of the window (YYYY-MM).
    #[arg(long, value_parser = month)]
    to: Option<YearMonth>,
    #[command(flatten)]
    term: TermArgs,
}

#[derive(Debug, Args)]
struct AdjustArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long, default_value = "0.20", value_parser = alpha)]
    alpha: f64,
}

#[derive(Debug, Args)]
struct ImpactArgs {
    #[command(flatten)]
    data: DataArgs,
    /// One or more down payment rates, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.20", value_parser = alpha)]
    alpha: Vec<f64>,
}

fn parse_number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("{s:?} is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

fn rate_pct(s: &str) -> Result<f64, String> {
    let v = parse_number(s)?;
    if v < 0.0 {
        return Err("rates must be >= 0".into());
    }
    Ok(v / 100.0)
}

fn step_pct(s: &str) -> Result<f64, String> {
    let v = parse_number(s)?;
    if v <= 0.0 {
        return Err("step must be > 0".into());
    }
    Ok(v / 100.0)
}

fn growth_pct(s: &str) -> Result<f64, String> {
    let v = parse_number(s)?;
    if v <= -100.0 {
        return Err("growth must be > -100%".into());
    }
    Ok(v / 100.0)
}

fn alpha(s: &str) -> Result<f64, String> {
    let v = parse_number(s)?;
    if !(0.0..1.0).contains(&v) {
        return Err("down payment rate must be in [0, 1)".into());
    }
    Ok(v)
}

fn positive(s: &str) -> Result<f64, String> {
    let v = parse_number(s)?;
    if v <= 0.0 {
        return Err("must be > 0".into());
    }
    Ok(v)
}

fn non_negative(s: &str) -> Result<f64, String> {
    let v = parse_number(s)?;
    if v < 0.0 {
        return Err("must be >= 0".into());
    }
    Ok(v)
}

fn month(s: &str) -> Result<YearMonth, String> {
    s.parse().map_err(|e: effprice::Error| e.to_string())
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<effprice::Error> for Failure {
    fn from(e: effprice::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let text = match &cli.command {
        Command::Effective(a) => effective_cmd(a, cli.output.unwrap_or(Format::Table))?,
        Command::Grid(a) => grid_cmd(a, cli.output.unwrap_or(Format::Csv))?,
        Command::Neutrality(a) => neutrality_cmd(a, cli.output.unwrap_or(Format::Csv))?,
        Command::Classify(a) => classify_cmd(a, cli.output.unwrap_or(Format::Table))?,
        Command::Adjust(a) => adjust_cmd(a, cli.output.unwrap_or(Format::Csv))?,
        Command::Impact(a) => impact_cmd(a, cli.output.unwrap_or(Format::Json))?,
    };
    match &cli.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Data(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Data(e.to_string()))
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn effective_cmd(a: &EffectiveArgs, format: Format) -> Result<String, Failure> {
    let terms = a.term.terms(a.alpha)?;
    let scenario = RateScenario::new(a.baseline_rate, a.rate, a.growth, terms)?;
    let gamma = gamma(&scenario);
    let g_star = effective_growth(&scenario);
    let price = a.price.map(|p| effective_price(p, &scenario)).transpose()?;
    Ok(match format {
        Format::Json => {
            let mut v = json!({
                "baseline_rate": report::json_number(a.baseline_rate),
                "rate": report::json_number(a.rate),
                "growth": report::json_number(a.growth),
                "alpha": report::json_number(a.alpha),
                "term_months": a.term.term,
                "gamma": report::json_number(gamma),
                "effective_growth": report::json_number(g_star),
            });
            if let (Some(p), Some(eff)) = (a.price, price) {
                v["price"] = report::json_number(p);
                v["effective_price"] = report::json_number(eff);
            }
            pretty(&v)
        }
        Format::Csv => {
            let mut out = String::from("gamma,effective_growth");
            if price.is_some() {
                out.push_str(",effective_price");
            }
            out.push_str(&format!("\n{gamma},{g_star}"));
            if let Some(eff) = price {
                out.push_str(&format!(",{eff}"));
            }
            out.push('\n');
            out
        }
        Format::Table => {
            let mut out = format!(
                "gamma             {}\neffective_growth  {}\n",
                report::fixed3(gamma),
                report::fixed3(g_star)
            );
            if let Some(eff) = price {
                out.push_str(&format!("effective_price   {eff:.2}\n"));
            }
            out
        }
    })
}

fn grid_cmd(a: &GridArgs, format: Format) -> Result<String, Failure> {
    let terms = a.term.terms(a.alpha)?;
    let spec = GridSpec::new(
        a.baseline_rate,
        a.rate_min,
        a.rate_max,
        a.rate_step,
        a.growths.clone(),
        terms,
    )?;
    let grid = build_grid(&spec)?;
    Ok(match format {
        Format::Csv => report::grid_csv(&grid),
        Format::Json => pretty(&report::grid_json(&grid)),
        Format::Table => report::grid_table(&grid),
    })
}

fn neutrality_cmd(a: &NeutralityArgs, format: Format) -> Result<String, Failure> {
    let terms = a.term.terms(a.alpha)?;
    let points =
        sample_neutrality_line(a.baseline_rate, a.rate_min, a.rate_max, a.rate_step, &terms)?;
    Ok(match format {
        Format::Csv => report::neutrality_csv(&points),
        Format::Json => pretty(&report::neutrality_json(a.baseline_rate, &points)),
        Format::Table => report::neutrality_table(&points),
    })
}

fn classify_cmd(a: &ClassifyArgs, format: Format) -> Result<String, Failure> {
    let terms = a.term.terms(a.alpha)?;
    let scenario = RateScenario::new(a.baseline_rate, a.rate, a.growth, terms)?;
    let region = classify(&scenario, a.tolerance)?;
    let g_star = effective_growth(&scenario);
    Ok(match format {
        Format::Table => format!("{}: {}\n", region.label(), region.recommendation()),
        Format::Json => pretty(&json!({
            "region": region.label(),
            "recommendation": region.recommendation(),
            "buy_now": region.buy_now(),
            "gamma": report::json_number(gamma(&scenario)),
            "effective_growth": report::json_number(g_star),
        })),
        Format::Csv => format!(
            "region,effective_growth,recommendation\n{},{},\"{}\"\n",
            region.label(),
            g_star,
            region.recommendation()
        ),
    })
}

fn resolve_input(given: Option<&Path>, default_name: &str, flag: &str) -> Result<PathBuf, Failure> {
    let data_dir = std::env::var_os(DATA_DIR_ENV).map(PathBuf::from);
    match (given, data_dir) {
        (Some(p), Some(dir)) if p.is_relative() && !p.exists() => Ok(dir.join(p)),
        (Some(p), _) => Ok(p.to_path_buf()),
        (None, Some(dir)) => Ok(dir.join(default_name)),
        (None, None) => Err(Failure::Usage(format!(
            "{flag} is required when {DATA_DIR_ENV} is not set"
        ))),
    }
}

struct LoadedData {
    hpi: effprice::MonthlySeries,
    rates: effprice::MonthlySeries,
}

fn load_data(d: &DataArgs) -> Result<LoadedData, Failure> {
    if let (Some(from), Some(to)) = (d.from, d.to) {
        if from > to {
            return Err(Failure::Usage(format!("--from {from} is after --to {to}")));
        }
    }
    let hpi_path = resolve_input(d.hpi.as_deref(), DEFAULT_HPI_FILE, "--hpi")?;
    let rates_path = resolve_input(d.rates.as_deref(), DEFAULT_RATES_FILE, "--rates")?;
    let hpi = load_monthly(
        &hpi_path,
        SeriesKind::IndexLevel,
        d.hpi_unit.into(),
        d.aggregate.into(),
    )?;
    let rates = load_monthly(
        &rates_path,
        SeriesKind::QuotedRate,
        d.rates_unit.into(),
        d.aggregate.into(),
    )?;
    Ok(LoadedData { hpi, rates })
}

fn window(d: &DataArgs, hpi: &effprice::MonthlySeries) -> (YearMonth, YearMonth) {
    (d.from.unwrap_or(hpi.start()), d.to.unwrap_or(hpi.end()))
}

fn adjust_cmd(a: &AdjustArgs, format: Format) -> Result<String, Failure> {
    let data = load_data(&a.data)?;
    let terms = a.data.term.terms(a.alpha)?;
    let (from, to) = window(&a.data, &data.hpi);
    let hpi = data.hpi.clip(from, to)?;
    let index = neutralize(&hpi, &data.rates, &terms, a.data.lag)?;
    Ok(match format {
        Format::Csv => index.to_csv(),
        Format::Json => pretty(&report::adjusted_json(&index)),
        Format::Table => report::adjusted_table(&index),
    })
}

fn impact_cmd(a: &ImpactArgs, format: Format) -> Result<String, Failure> {
    let data = load_data(&a.data)?;
    let (from, to) = window(&a.data, &data.hpi);
    let hpi = data.hpi.clip(from, to)?;
    let reports = a
        .alpha
        .iter()
        .map(|alpha| {
            let terms = a.data.term.terms(*alpha)?;
            let index = neutralize(&hpi, &data.rates, &terms, a.data.lag)?;
            impact(&index, from, to)
        })
        .collect::<effprice::Result<Vec<_>>>()?;
    Ok(match format {
        Format::Json => {
            let values: Vec<_> = reports.iter().map(report::impact_json).collect();
            match values.as_slice() {
                [one] => pretty(one),
                _ => pretty(&serde_json::Value::Array(values)),
            }
        }
        Format::Csv => report::impact_csv(&reports),
        Format::Table => report::impact_table(&reports),
    })
}
