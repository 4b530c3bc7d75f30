use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_effprice"));
    cmd.env_remove("EFFPRICE_DATA_DIR");
    cmd
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/fred")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key))
        .map(str::trim)
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn effective_reports_table_value() {
    let out = run(&["effective", "--baseline-rate", "4.5", "--rate", "7.0", "--growth", "0", "--alpha", "0.20", "--term", "360"]);
    assert!(out.status.success());
    assert_eq!(field(&stdout(&out), "effective_growth"), "0.250");

    let out = run(&["effective", "--baseline-rate", "4.5", "--rate", "4.5", "--growth", "2.0"]);
    assert_eq!(field(&stdout(&out), "effective_growth"), "0.020");
    assert_eq!(field(&stdout(&out), "gamma"), "1.000");
}

#[test]
fn effective_json_matches_library() {
    let out = run(&["--output", "json", "effective", "--baseline-rate", "4.5", "--rate", "3.5", "--growth", "10", "--price", "100000"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let terms = effprice::LoanTerms::default();
    let s = effprice::RateScenario::new(0.045, 0.035, 0.10, terms).unwrap();
    assert_eq!(v["gamma"].as_f64().unwrap(), effprice::report::sig6(effprice::gamma(&s)));
    assert_eq!(
        v["effective_growth"].as_f64().unwrap(),
        effprice::report::sig6(effprice::effective_growth(&s))
    );
    assert!((v["effective_price"].as_f64().unwrap() - 90_899.2).abs() < 1.0);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["effective", "--baseline-rate", "4.5", "--rate", "5", "--alpha", "1.2"][..],
        &["grid", "--rate-step", "0"][..],
        &["effective", "--baseline-rate", "-1", "--rate", "5"][..],
        &["effective", "--baseline-rate", "4.5"][..],
        &["frobnicate"][..],
        &["grid", "--term", "0"][..],
        &["impact"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn domain_errors_exit_1() {
    let out = run(&["grid", "--rate-min", "7", "--rate-max", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rate_min"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "DATE,X\n2020-01-01,abc\n").unwrap();
    let out = run(&["impact", "--hpi", bad.to_str().unwrap(), "--rates", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn default_grid_is_29_by_13() {
    let out = run(&["grid"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap().split(',').count(), 14);
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 29);
    let last: Vec<f64> = rows[28].split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(last[0], 0.07);
    assert!((last[13] - 0.375).abs() < 5e-4);
}

#[test]
fn single_row_grid_is_nominal() {
    let out = run(&["grid", "--rate-min", "4.5", "--rate-max", "4.5"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[1], "0.045,-0.1,-0.08,-0.06,-0.04,-0.02,-0.01,0,0.01,0.02,0.04,0.06,0.08,0.1");
}

#[test]
fn grid_table_flags_baseline() {
    let out = run(&["--output", "table", "grid"]);
    let text = stdout(&out);
    let flagged: Vec<&str> = text.lines().filter(|l| l.starts_with('*')).collect();
    assert_eq!(flagged.len(), 1);
    assert!(flagged[0].contains("4.500%"));
}

#[test]
fn classify_prints_region_and_advice() {
    let out = run(&["classify", "--baseline-rate", "4.5", "--rate", "7.0", "--growth", "2"]);
    assert!(stdout(&out).starts_with("B: Should buy now; double whamming"));
    let out = run(&["classify", "--baseline-rate", "4.5", "--rate", "4.5", "--growth", "0"]);
    assert!(stdout(&out).starts_with("OnBoundary"));
    let out = run(&["--output", "json", "classify", "--baseline-rate", "4.5", "--rate", "3.5", "--growth", "-2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["region"], "E");
    assert_eq!(v["buy_now"], false);
}

#[test]
fn neutrality_line_through_baseline() {
    let out = run(&["neutrality", "--baseline-rate", "4.5", "--rate-min", "3.5", "--rate-max", "7", "--rate-step", "0.5"]);
    let text = stdout(&out);
    let points: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let (r, g) = l.split_once(',').unwrap();
            (r.parse().unwrap(), g.parse().unwrap())
        })
        .collect();
    assert_eq!(points.len(), 8);
    assert!(points.contains(&(0.045, 0.0)));
    let terms = effprice::LoanTerms::default();
    for (r, g) in points {
        let s = effprice::RateScenario::new(0.045, r, g, terms).unwrap();
        assert!(effprice::effective_growth(&s).abs() < 1e-10);
    }
}

#[test]
fn impact_reports_json_fields() {
    let out = bin()
        .env("EFFPRICE_DATA_DIR", data_dir())
        .args(["impact", "--from", "1987-01", "--to", "2021-12", "--alpha", "0.20"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["window_start", "window_end", "alpha", "lag_months", "nominal_growth", "adjusted_growth", "impact"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["window_start"], "1987-01");
    assert_eq!(v["lag_months"], 2);
    assert!((v["impact"].as_f64().unwrap() - 0.226).abs() < 0.015);

    let out = bin()
        .env("EFFPRICE_DATA_DIR", data_dir())
        .args(["impact", "--from", "2021-01", "--to", "2021-12"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["impact"].as_f64().unwrap() + 0.030).abs() < 0.01);
}

#[test]
fn impact_accepts_several_alphas() {
    let dir = data_dir();
    let out = run(&[
        "impact",
        "--hpi",
        dir.join("CSUSHPINSA.csv").to_str().unwrap(),
        "--rates",
        dir.join("MORTGAGE30US.csv").to_str().unwrap(),
        "--alpha",
        "0.10,0.15,0.20",
        "--from",
        "2019-01",
        "--to",
        "2021-12",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let c: Vec<f64> = v.as_array().unwrap().iter().map(|r| r["impact"].as_f64().unwrap()).collect();
    assert_eq!(c.len(), 3);
    assert!(c[0] > c[1] && c[1] > c[2]);
}

#[test]
fn constant_rates_leave_adjusted_column_nominal() {
    let dir = tempfile::tempdir().unwrap();
    let hpi = dir.path().join("hpi.csv");
    let rates = dir.path().join("rates.csv");
    std::fs::write(
        &hpi,
        "DATE,HPI\n2020-01-01,100.0\n2020-02-01,101.5\n2020-03-01,99.8\n2020-04-01,104.2\n2020-05-01,108.9\n",
    )
    .unwrap();
    let mut weekly = String::from("DATE,MORTGAGE30US\r\n");
    for d in ["2019-11-07", "2019-11-21", "2019-12-05", "2019-12-19", "2020-01-09", "2020-01-23", "2020-02-06", "2020-02-20", "2020-03-05", "2020-03-19"] {
        weekly.push_str(&format!("{d},3.75\r\n"));
    }
    weekly.push_str("2020-03-26,.\r\n");
    std::fs::write(&rates, weekly).unwrap();

    let out_path = dir.path().join("adjusted.csv");
    let out = run(&[
        "adjust",
        "--hpi",
        hpi.to_str().unwrap(),
        "--rates",
        rates.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(out_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("month,nominal,growth,gamma,eff_growth,adjustment,adjusted"));
    let mut n = 0;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        let nominal: f64 = cols[1].parse().unwrap();
        let adjusted: f64 = cols[6].parse().unwrap();
        assert_eq!(cols[3], "1");
        assert!(((adjusted - nominal) / nominal).abs() < 1e-12);
        n += 1;
    }
    assert_eq!(n, 5);
}

#[test]
fn adjust_reports_missing_lagged_rates() {
    let dir = data_dir();
    let out = run(&[
        "adjust",
        "--hpi",
        dir.join("CSUSHPINSA.csv").to_str().unwrap(),
        "--rates",
        dir.join("MORTGAGE30US.csv").to_str().unwrap(),
        "--lag",
        "14",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1985-11"), "{err}");
}
