//! Text renderings shared by the CLI: CSV, JSON and fixed-width tables.
//!
//! CSV carries full `f64` precision. JSON numbers are rounded to six
//! significant digits and table cells to three decimals.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::hpi::{AdjustedIndex, ImpactReport};
use crate::scenario::{EffectiveGrid, NeutralityPoint};

/// Three-decimal cell text; values that round to zero print as `0.000`.
pub fn fixed3(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Rounds to six significant digits for JSON output.
pub fn sig6(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

pub fn json_number(x: f64) -> Value {
    json!(sig6(x))
}

pub fn grid_csv(grid: &EffectiveGrid) -> String {
    let mut out = String::from("rate");
    for g in grid.spec.growth_values() {
        let _ = write!(out, ",{g}");
    }
    out.push('\n');
    for (rate, row) in grid.rates.iter().zip(&grid.cells) {
        let _ = write!(out, "{rate}");
        for v in row {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}

pub fn grid_json(grid: &EffectiveGrid) -> Value {
    json!({
        "baseline_rate": json_number(grid.spec.baseline_rate()),
        "term_months": grid.spec.terms().term_months(),
        "alpha": json_number(grid.spec.terms().down_payment_rate()),
        "growths": grid.spec.growth_values().iter().map(|g| json_number(*g)).collect::<Vec<_>>(),
        "rows": grid.rates.iter().zip(&grid.cells).map(|(r, row)| json!({
            "rate": json_number(*r),
            "effective_growth": row.iter().map(|v| json_number(*v)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

/// Rates and growth headers in percent, cells to three decimals; the
/// baseline row is marked with `*`.
pub fn grid_table(grid: &EffectiveGrid) -> String {
    let baseline = grid.baseline_row();
    let mut out = format!("{:>10}", "rate");
    for g in grid.spec.growth_values() {
        let _ = write!(out, " {:>7}", format!("{:.0}%", g * 100.0));
    }
    out.push('\n');
    for (i, (rate, row)) in grid.rates.iter().zip(&grid.cells).enumerate() {
        let mark = if Some(i) == baseline { '*' } else { ' ' };
        let _ = write!(out, "{mark}{:>9}", format!("{:.3}%", rate * 100.0));
        for v in row {
            let _ = write!(out, " {:>7}", fixed3(*v));
        }
        out.push('\n');
    }
    out
}

pub fn neutrality_csv(points: &[NeutralityPoint]) -> String {
    let mut out = String::from("rate,neutral_growth\n");
    for p in points {
        let _ = writeln!(out, "{},{}", p.alternative_rate, p.neutral_growth);
    }
    out
}

pub fn neutrality_json(baseline_rate: f64, points: &[NeutralityPoint]) -> Value {
    json!({
        "baseline_rate": json_number(baseline_rate),
        "points": points.iter().map(|p| json!({
            "rate": json_number(p.alternative_rate),
            "neutral_growth": json_number(p.neutral_growth),
        })).collect::<Vec<_>>(),
    })
}

pub fn neutrality_table(points: &[NeutralityPoint]) -> String {
    let mut out = format!("{:>9} {:>14}\n", "rate", "neutral_growth");
    for p in points {
        let _ = writeln!(
            out,
            "{:>9} {:>14}",
            format!("{:.3}%", p.alternative_rate * 100.0),
            fixed3(p.neutral_growth)
        );
    }
    out
}

pub fn adjusted_json(index: &AdjustedIndex) -> Value {
    json!({
        "alpha": json_number(index.down_payment_rate),
        "lag_months": index.lag_months,
        "rows": index.months().enumerate().map(|(n, m)| json!({
            "month": m.to_string(),
            "nominal": json_number(index.nominal[n]),
            "growth": json_number(index.growth[n]),
            "gamma": json_number(index.adjuster[n]),
            "eff_growth": json_number(index.effective_growth[n]),
            "adjustment": json_number(index.adjustment[n]),
            "adjusted": json_number(index.adjusted[n]),
        })).collect::<Vec<_>>(),
    })
}

pub fn adjusted_table(index: &AdjustedIndex) -> String {
    let mut out = format!(
        "{:<8} {:>10} {:>8} {:>8} {:>10} {:>10} {:>10}\n",
        "month", "nominal", "growth", "gamma", "eff_growth", "adjustment", "adjusted"
    );
    for (n, m) in index.months().enumerate() {
        let _ = writeln!(
            out,
            "{:<8} {:>10.3} {:>8.3} {:>8.3} {:>10.3} {:>10.3} {:>10.3}",
            m.to_string(),
            index.nominal[n],
            index.growth[n],
            index.adjuster[n],
            index.effective_growth[n],
            index.adjustment[n],
            index.adjusted[n]
        );
    }
    out
}

pub fn impact_json(report: &ImpactReport) -> Value {
    json!({
        "window_start": report.window_start.to_string(),
        "window_end": report.window_end.to_string(),
        "alpha": json_number(report.alpha),
        "lag_months": report.lag_months,
        "nominal_growth": json_number(report.nominal_growth),
        "adjusted_growth": json_number(report.adjusted_growth),
        "impact": json_number(report.impact),
    })
}

pub fn impact_csv(reports: &[ImpactReport]) -> String {
    let mut out = String::from(
        "window_start,window_end,alpha,lag_months,nominal_growth,adjusted_growth,impact\n",
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.window_start, r.window_end, r.alpha, r.lag_months, r.nominal_growth, r.adjusted_growth, r.impact
        );
    }
    out
}

pub fn impact_table(reports: &[ImpactReport]) -> String {
    let mut out = format!(
        "{:<17} {:>5} {:>4} {:>9} {:>9} {:>8}\n",
        "window", "alpha", "lag", "nominal", "adjusted", "impact"
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{:<17} {:>5.2} {:>4} {:>8.1}% {:>8.1}% {:>7.1}%",
            format!("{}..{}", r.window_start, r.window_end),
            r.alpha,
            r.lag_months,
            r.nominal_growth * 100.0,
            r.adjusted_growth * 100.0,
            r.impact * 100.0
        );
    }
    out
}
