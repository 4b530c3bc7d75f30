use chrono::NaiveDate;
use effprice::ingest::{parse_fred_csv, to_monthly, write_fred_csv, Aggregation, FredCsv, RawObservation, ValueUnit};
use effprice::{
    classify, discount_factor, down_payment, effective_growth, gamma, impact, monthly_payment,
    neutral_growth, neutralize, LoanTerms, MonthlySeries, PeriodicRate, PurchaseQuote,
    RateConvention, RateScenario, Region, SeriesKind, YearMonth, DEFAULT_TOLERANCE,
};
use proptest::prelude::*;

fn terms_strategy() -> impl Strategy<Value = LoanTerms> {
    (1u32..=480, 0.0f64..0.99)
        .prop_map(|(t, a)| LoanTerms::new(t, a, RateConvention::AnnualNominal).unwrap())
}

fn annuity_sum(r: f64, t: u32) -> f64 {
    (1..=t).map(|k| (1.0 + r).powi(-(k as i32))).sum()
}

fn start() -> YearMonth {
    "2000-01".parse().unwrap()
}

/// Index levels and annual rates of equal length.
fn paths(max_len: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1..=max_len).prop_flat_map(|n| {
        (
            100.0f64..300.0,
            prop::collection::vec(-0.03f64..0.03, n),
            0.02f64..0.10,
            prop::collection::vec(-0.004f64..0.004, n),
        )
            .prop_map(|(h0, dh, r0, dr)| {
                let h = dh
                    .iter()
                    .scan(h0, |h, d| {
                        let out = *h;
                        *h *= 1.0 + d;
                        Some(out)
                    })
                    .collect();
                let r = dr
                    .iter()
                    .scan(r0, |r: &mut f64, d| {
                        let out = *r;
                        *r = (*r + d).clamp(0.0, 0.2);
                        Some(out)
                    })
                    .collect();
                (h, r)
            })
    })
}

proptest! {
    #[test]
    fn discount_factor_matches_annuity_sum(r in 0.0f64..0.03, t in 1u32..=480) {
        let closed = discount_factor(PeriodicRate::new(r).unwrap(), t);
        let brute = annuity_sum(r, t);
        prop_assert!(((closed - brute) / brute).abs() < 1e-9);
    }

    #[test]
    fn price_decomposes_into_payments_and_down_payment(
        price in 1e3f64..1e7,
        rate in 0.0f64..0.2,
        terms in terms_strategy(),
    ) {
        let q = PurchaseQuote::new(price, rate, terms).unwrap();
        let beta = discount_factor(q.periodic_rate(), terms.term_months());
        let rebuilt = beta * monthly_payment(&q) + down_payment(&q);
        prop_assert!(((rebuilt - price) / price).abs() < 1e-9);
    }

    #[test]
    fn gamma_is_one_on_equal_rates(r in 0.0f64..0.2, terms in terms_strategy()) {
        let s = RateScenario::new(r, r, 0.0, terms).unwrap();
        prop_assert!((gamma(&s) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn gamma_positive_and_increasing_in_alternative(
        ra in 0.0f64..0.2,
        rb in 0.0f64..0.2,
        bump in 1e-4f64..0.05,
        terms in terms_strategy(),
    ) {
        prop_assume!(terms.down_payment_rate() < 0.98);
        let lo = RateScenario::new(ra, rb, 0.0, terms).unwrap();
        let hi = RateScenario::new(ra, rb + bump, 0.0, terms).unwrap();
        prop_assert!(gamma(&lo) > 0.0);
        prop_assert!(gamma(&hi) > gamma(&lo));
    }

    #[test]
    fn effective_growth_sign_follows_rate_change(
        ra in 0.0f64..0.2,
        rb in 0.0f64..0.2,
        terms in terms_strategy(),
    ) {
        prop_assume!((ra - rb).abs() > 1e-6);
        let s = RateScenario::new(ra, rb, 0.0, terms).unwrap();
        let g_star = effective_growth(&s);
        prop_assert_eq!(g_star > 0.0, rb > ra);
    }

    #[test]
    fn unit_adjuster_passes_growth_through(r in 0.0f64..0.2, g in -0.99f64..2.0, terms in terms_strategy()) {
        let s = RateScenario::new(r, r, g, terms).unwrap();
        prop_assert_eq!(effective_growth(&s), g);
    }

    #[test]
    fn neutral_growth_matches_bisection(ra in 0.0f64..0.15, rb in 0.0f64..0.15, terms in terms_strategy()) {
        let closed = neutral_growth(ra, rb, &terms).unwrap().neutral_growth;
        let f = |g: f64| effective_growth(&RateScenario::new(ra, rb, g, terms).unwrap());
        let (mut lo, mut hi) = (-0.999, 20.0);
        prop_assume!(f(lo) < 0.0 && f(hi) > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 { hi = mid } else { lo = mid }
        }
        prop_assert!((closed - 0.5 * (lo + hi)).abs() < 1e-10);
    }

    #[test]
    fn off_boundary_scenarios_get_exactly_one_region(
        ra in 0.0f64..0.15,
        rb in 0.0f64..0.15,
        g in -0.5f64..0.5,
        terms in terms_strategy(),
    ) {
        let s = RateScenario::new(ra, rb, g, terms).unwrap();
        prop_assume!(g.abs() > 1e-6 && (ra - rb).abs() > 1e-6 && effective_growth(&s).abs() > 1e-6);
        let region = classify(&s, DEFAULT_TOLERANCE).unwrap();
        prop_assert!(region != Region::OnBoundary);
        let (p, r, e) = region.signs().unwrap();
        use effprice::scenario::Sign;
        prop_assert_eq!(p, Sign::of(g, 0.0));
        prop_assert_eq!(r, Sign::of(rb - ra, 0.0));
        prop_assert_eq!(e, Sign::of(effective_growth(&s), 0.0));
    }

    #[test]
    fn cumulative_and_closed_form_agree((h, r) in paths(600), terms in terms_strategy()) {
        let hpi = MonthlySeries::new(start(), h, SeriesKind::IndexLevel).unwrap();
        let rates = MonthlySeries::new(start(), r, SeriesKind::QuotedRate).unwrap();
        let idx = neutralize(&hpi, &rates, &terms, 0).unwrap();
        for (a, b) in idx.adjusted.iter().zip(idx.closed_form_adjusted()) {
            prop_assert!(((a - b) / b).abs() < 1e-9);
        }
    }

    #[test]
    fn raising_last_rate_raises_only_last_level(
        (h, r) in paths(60),
        bump in 1e-4f64..0.02,
        terms in terms_strategy(),
    ) {
        prop_assume!(h.len() >= 2 && terms.down_payment_rate() < 0.98);
        let hpi = MonthlySeries::new(start(), h, SeriesKind::IndexLevel).unwrap();
        let base = MonthlySeries::new(start(), r.clone(), SeriesKind::QuotedRate).unwrap();
        let mut r2 = r;
        *r2.last_mut().unwrap() += bump;
        let bumped = MonthlySeries::new(start(), r2, SeriesKind::QuotedRate).unwrap();
        let a = neutralize(&hpi, &base, &terms, 0).unwrap();
        let b = neutralize(&hpi, &bumped, &terms, 0).unwrap();
        let n = a.len() - 1;
        prop_assert_eq!(&a.adjusted[..n], &b.adjusted[..n]);
        prop_assert!(b.adjusted[n] > a.adjusted[n]);
    }

    #[test]
    fn impact_sign_matches_growth_gap((h, r) in paths(120), terms in terms_strategy()) {
        prop_assume!(h.len() >= 2);
        let hpi = MonthlySeries::new(start(), h, SeriesKind::IndexLevel).unwrap();
        let rates = MonthlySeries::new(start(), r, SeriesKind::QuotedRate).unwrap();
        let idx = neutralize(&hpi, &rates, &terms, 0).unwrap();
        let rep = impact(&idx, idx.start, idx.end()).unwrap();
        let gap = rep.nominal_growth - rep.adjusted_growth;
        prop_assert_eq!(rep.impact > 0.0, gap > 0.0);
        prop_assert_eq!(rep.impact < 0.0, gap < 0.0);
        prop_assert!((rep.impact - gap / (1.0 + rep.nominal_growth)).abs() < 1e-12);
    }

    #[test]
    fn lag_shifts_compose(l in 0i64..24, m in 0i64..24, (_, r) in paths(30)) {
        let s = MonthlySeries::new(start(), r, SeriesKind::QuotedRate).unwrap();
        prop_assert_eq!(s.shifted(l).shifted(m), s.shifted(l + m));
    }

    #[test]
    fn neutralize_lag_equals_prealigned(lag in 0u32..6, (h, r) in paths(40), terms in terms_strategy()) {
        let rates = MonthlySeries::new(start(), r.clone(), SeriesKind::QuotedRate).unwrap();
        prop_assume!(h.len() > lag as usize);
        let hpi_start = start().offset(i64::from(lag));
        let n = h.len() - lag as usize;
        let hpi = MonthlySeries::new(hpi_start, h[..n].to_vec(), SeriesKind::IndexLevel).unwrap();
        let lagged = neutralize(&hpi, &rates, &terms, lag).unwrap();
        let aligned = MonthlySeries::new(hpi_start, r[..n].to_vec(), SeriesKind::QuotedRate).unwrap();
        let direct = neutralize(&hpi, &aligned, &terms, 0).unwrap();
        prop_assert_eq!(lagged.adjusted, direct.adjusted);
    }

    #[test]
    fn fred_round_trip(
        values in prop::collection::vec(prop::option::weighted(0.9, 0u32..200_000), 1..80),
        percent in any::<bool>(),
    ) {
        let unit = if percent { ValueUnit::Percent } else { ValueUnit::Fraction };
        let first = NaiveDate::from_ymd_opt(1990, 1, 4).unwrap();
        let mut text = String::from("DATE,TEST\n");
        for (i, v) in values.iter().enumerate() {
            let d = first + chrono::Duration::days(7 * i as i64);
            match v {
                Some(v) => text.push_str(&format!("{},{}.{:03}\n", d.format("%Y-%m-%d"), v / 1000, v % 1000)),
                None => text.push_str(&format!("{},.\n", d.format("%Y-%m-%d"))),
            }
        }
        let parsed = parse_fred_csv(&text, unit).unwrap();
        let again = parse_fred_csv(&write_fred_csv(&parsed, unit), unit).unwrap();
        prop_assert_eq!(parsed, again);
    }

    #[test]
    fn monthly_mean_is_permutation_invariant_and_bounded(
        mut week_values in prop::collection::vec(0.0f64..0.2, 1..6),
        seed in any::<u64>(),
    ) {
        let dates: Vec<NaiveDate> = (0..week_values.len())
            .map(|i| NaiveDate::from_ymd_opt(2020, 3, 1 + 5 * i as u32).unwrap())
            .collect();
        let obs = |vals: &[f64]| -> Vec<RawObservation> {
            dates.iter().zip(vals).map(|(d, v)| RawObservation { date: *d, value: Some(*v) }).collect()
        };
        let a = to_monthly(&obs(&week_values), SeriesKind::QuotedRate, Aggregation::Mean).unwrap();
        let lo = week_values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = week_values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(a.values()[0] >= lo - 1e-15 && a.values()[0] <= hi + 1e-15);

        // reorder the rows (dates travel with their values)
        let mut rows: Vec<RawObservation> = obs(&week_values);
        let k = (seed as usize) % rows.len();
        rows.rotate_left(k);
        if seed % 2 == 0 { rows.reverse(); }
        let b = to_monthly(&rows, SeriesKind::QuotedRate, Aggregation::Mean).unwrap();
        prop_assert!((a.values()[0] - b.values()[0]).abs() < 1e-15);
        let last = to_monthly(&rows, SeriesKind::QuotedRate, Aggregation::Last).unwrap();
        week_values.reverse();
        prop_assert_eq!(last.values()[0], week_values[0]);
    }
}

#[test]
fn round_trip_keeps_missing_markers() {
    let csv = FredCsv {
        series_id: "MORTGAGE30US".into(),
        observations: vec![
            RawObservation { date: NaiveDate::from_ymd_opt(2020, 3, 5).unwrap(), value: Some(0.0329) },
            RawObservation { date: NaiveDate::from_ymd_opt(2020, 3, 12).unwrap(), value: None },
        ],
    };
    let text = write_fred_csv(&csv, ValueUnit::Percent);
    assert_eq!(text, "DATE,MORTGAGE30US\n2020-03-05,3.29\n2020-03-12,.\n");
}

#[test]
fn monthly_order_preserved_across_months() {
    let obs: Vec<RawObservation> = [(2020, 1, 0.03), (2020, 2, 0.04), (2020, 3, 0.05)]
        .iter()
        .map(|&(y, m, v)| RawObservation { date: NaiveDate::from_ymd_opt(y, m, 9).unwrap(), value: Some(v) })
        .collect();
    let mut shuffled = obs.clone();
    shuffled.swap(0, 2);
    let a = to_monthly(&obs, SeriesKind::QuotedRate, Aggregation::Mean).unwrap();
    let b = to_monthly(&shuffled, SeriesKind::QuotedRate, Aggregation::Mean).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.values(), [0.03, 0.04, 0.05]);
}
