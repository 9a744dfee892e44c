use std::process::{Command, Output};

use sha2::{Digest, Sha256};

fn plfit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plfit"))
        .args(args)
        .env_remove("PLFIT_QUAD_RTOL")
        .output()
        .expect("spawn plfit")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn series(csv_text: &str) -> Vec<(String, f64, f64)> {
    let mut r = csv::Reader::from_reader(csv_text.as_bytes());
    assert_eq!(r.headers().unwrap(), vec!["series", "x", "y"]);
    r.deserialize().map(|row| row.unwrap()).collect()
}

#[test]
fn analyze_reports_class_and_verdict() {
    let o = plfit(&["analyze", "--alpha", "2", "--beta", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("entire, order 2, type 0.25, moment-determinate"));

    let o = plfit(&["analyze", "--alpha", "0.3", "--beta", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().next().unwrap().ends_with("moment-indeterminate"));

    let o = plfit(&["analyze", "--alpha", "1", "--beta", "3"]);
    assert!(stdout(&o).starts_with("analytic on (-3, 3), moment-determinate"));
}

#[test]
fn non_positive_parameters_are_usage_errors() {
    for args in [
        ["analyze", "--alpha", "0", "--beta", "1"],
        ["analyze", "--alpha", "1", "--beta", "-1"],
        ["analyze", "--alpha", "x", "--beta", "1"],
    ] {
        assert_eq!(code(&plfit(&args)), 2, "{args:?}");
    }
}

#[test]
fn fit_both_prints_two_rows_and_a_verdict() {
    let o = plfit(&["fit", "--data", "dit-system", "--model", "both", "--objective", "binned"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("frequencies as percentages"));
    assert!(text.contains("sample mean: 0.780800"));
    assert_eq!(text.lines().filter(|l| l.starts_with("power-lindley")).count(), 1);
    assert_eq!(text.lines().filter(|l| l.starts_with("weibull")).count(), 1);
    assert!(text.lines().last().unwrap().starts_with("verdict: "));
}

#[test]
fn unknown_objective_is_a_usage_error() {
    let o = plfit(&["fit", "--data", "dit-system", "--objective", "mle"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn unreadable_table_is_a_usage_error() {
    let o = plfit(&["fit", "--data", "/nonexistent/t.csv"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("dit-system"));
}

#[derive(Debug, serde::Deserialize)]
struct CsvRow {
    table: String,
    model: String,
    shape: f64,
    rate_or_scale: f64,
    objective: String,
    error: f64,
    mean: f64,
    median: f64,
    sample_mean: f64,
    mean_gap: f64,
    annotation: String,
}

#[test]
fn csv_output_round_trips() {
    let o = plfit(&["fit", "--data", "noc-system", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let rows: Vec<CsvRow> = csv::Reader::from_reader(o.stdout.as_slice())
        .deserialize()
        .map(|r| r.unwrap())
        .collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].model, "power-lindley");
    assert_eq!(rows[1].model, "weibull");
    for r in &rows {
        assert_eq!(r.table, "noc-system");
        assert_eq!(r.objective, "binned");
        assert!(r.shape > 0.0 && r.rate_or_scale > 0.0 && r.error > 0.0);
        assert!(r.median < r.mean);
        assert!((r.mean_gap - (r.sample_mean - r.mean).abs()).abs() <= 1e-12);
    }
    assert_eq!(rows[0].annotation, "moment-indeterminate (α<1/2)");
    assert!(rows[1].annotation.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("verdict: "));
}

#[test]
fn json_output_parses() {
    let o = plfit(&["fit", "--data", "dit-system", "--objective", "pdf-shifted", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["reports"].as_array().unwrap().len(), 2);
    assert_eq!(v["reports"][0]["objective"]["kind"], "pdf-at-shifted");
    assert!(v["verdict"].as_str().unwrap().starts_with("verdict: "));
}

#[test]
fn noc_pl_fit_carries_annotation() {
    let o = plfit(&["fit", "--data", "noc-system", "--model", "pl"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("moment-indeterminate (α<1/2)"));
    assert!(!text.contains("verdict"));
}

#[test]
fn proportions_override_changes_label_only() {
    let base = stdout(&plfit(&["fit", "--data", "dit-system", "--format", "csv"]));
    let o = plfit(&["fit", "--data", "dit-system", "--weights-are-proportions"]);
    assert!(stdout(&o).contains("frequencies as proportions"));
    let again = stdout(&plfit(&["fit", "--data", "dit-system", "--format", "csv", "--weights-are-proportions"]));
    assert_eq!(base, again);
}

#[test]
fn stieltjes_residuals_vanish() {
    let o = plfit(&["stieltjes", "--alpha", "0.3", "--beta", "1", "--which", "1", "--kmax", "10"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let rows: Vec<f64> = text
        .lines()
        .filter_map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            (f.len() >= 4 && f[0].parse::<u32>().is_ok()).then(|| f[1].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|&r| r <= 1e-8), "{rows:?}");
}

#[test]
fn stieltjes_refuses_determinate_laws() {
    let o = plfit(&["stieltjes", "--alpha", "0.6", "--beta", "1", "--which", "1"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("1/2"));
    let o = plfit(&["stieltjes", "--alpha", "0.5", "--beta", "1", "--which", "3"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn stieltjes_rejects_bad_h2_parameters() {
    let o = plfit(&["stieltjes", "--alpha", "0.3", "--beta", "1", "--which", "2", "--gamma", "0.2"]);
    assert_eq!(code(&o), 2);
    let o = plfit(&["stieltjes", "--alpha", "0.3", "--beta", "1", "--which", "1", "--b", "2"]);
    assert_eq!(code(&o), 2);
    let o = plfit(&["stieltjes", "--alpha", "0.3", "--beta", "1", "--which", "1", "--epsilon", "1.5"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn stieltjes_tolerance_from_environment() {
    let bad = Command::new(env!("CARGO_BIN_EXE_plfit"))
        .args(["stieltjes", "--alpha", "0.3", "--beta", "1", "--which", "1", "--kmax", "2"])
        .env("PLFIT_QUAD_RTOL", "nope")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
    let ok = Command::new(env!("CARGO_BIN_EXE_plfit"))
        .args(["stieltjes", "--alpha", "0.3", "--beta", "1", "--which", "1", "--kmax", "2"])
        .env("PLFIT_QUAD_RTOL", "1e-10")
        .output()
        .unwrap();
    assert_eq!(code(&ok), 0);
}

#[test]
fn zero_epsilon_density_is_the_base_density() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eps0.csv");
    let o = plfit(&[
        "stieltjes", "--alpha", "0.25", "--beta", "2", "--which", "3", "--kmax", "1",
        "--epsilon", "0", "--emit-density", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let rows = series(&std::fs::read_to_string(&path).unwrap());
    let pl: Vec<_> = rows.iter().filter(|r| r.0 == "pl").collect();
    let st: Vec<_> = rows.iter().filter(|r| r.0 == "stieltjes").collect();
    assert!(pl.len() >= 2);
    assert_eq!(pl.len(), st.len());
    for (a, b) in pl.iter().zip(&st) {
        assert_eq!(a.1, b.1);
        assert_eq!(a.2, b.2);
    }
    assert!(pl.windows(2).all(|w| w[0].1 < w[1].1));
}

#[test]
fn member_density_differs_from_base() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eps1.csv");
    let o = plfit(&[
        "stieltjes", "--alpha", "0.3", "--beta", "1", "--which", "1", "--kmax", "1",
        "--epsilon", "-1", "--emit-density", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let rows = series(&std::fs::read_to_string(&path).unwrap());
    let pl: Vec<_> = rows.iter().filter(|r| r.0 == "pl").collect();
    let st: Vec<_> = rows.iter().filter(|r| r.0 == "stieltjes").collect();
    assert!(st.iter().all(|r| r.2 >= 0.0));
    assert!(pl.iter().zip(&st).any(|(a, b)| (a.2 - b.2).abs() > 1e-6 * a.2));
}

#[test]
fn plot_data_sub_range() {
    let o = plfit(&["plot-data", "--data", "dit-system", "--range", "0:2", "--points", "100"]);
    assert_eq!(code(&o), 0);
    let rows = series(&stdout(&o));
    for label in ["fitted-pl", "fitted-weibull"] {
        let curve: Vec<_> = rows.iter().filter(|r| r.0 == label).collect();
        assert_eq!(curve.len(), 100, "{label}");
        assert!(curve.iter().all(|r| (0.0..=2.0).contains(&r.1)));
        assert!(curve.windows(2).all(|w| w[0].1 < w[1].1));
        assert_eq!(curve[0].1, 0.0);
        assert_eq!(curve[99].1, 2.0);
    }
    let data: Vec<_> = rows.iter().filter(|r| r.0 == "data").collect();
    assert_eq!(data.len(), 3);
}

#[test]
fn plot_data_overlay_selection() {
    let o = plfit(&["plot-data", "--data", "dit-system", "--overlay", "fitted-weibull", "--points", "10"]);
    let rows = series(&stdout(&o));
    assert!(rows.iter().all(|r| r.0 != "fitted-pl"));
    assert_eq!(rows.iter().filter(|r| r.0 == "fitted-weibull").count(), 10);
}

#[test]
fn plot_data_bad_range_is_usage_error() {
    for range in ["2:0", "1:1", "0-2", "a:b"] {
        let o = plfit(&["plot-data", "--data", "dit-system", "--range", range]);
        assert_eq!(code(&o), 2, "{range}");
    }
    let o = plfit(&["plot-data", "--data", "dit-system", "--points", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn noc_is_strongly_right_skewed() {
    let o = plfit(&["plot-data", "--data", "noc-system"]);
    let rows = series(&stdout(&o));
    let data: Vec<_> = rows.iter().filter(|r| r.0 == "data").collect();
    assert_eq!(data.len(), 20);
    assert_eq!(data[0].1, 0.0);
    assert!(data[1..].iter().all(|r| r.2 < data[0].2));
}

#[test]
fn dit_overlays_integrate_to_one() {
    let o = plfit(&["plot-data", "--data", "dit-system", "--range", "0:20", "--points", "20000"]);
    let rows = series(&stdout(&o));
    for label in ["fitted-pl", "fitted-weibull"] {
        let c: Vec<_> = rows.iter().filter(|r| r.0 == label).collect();
        let area: f64 = c.windows(2).map(|w| 0.5 * (w[1].1 - w[0].1) * (w[0].2 + w[1].2)).sum();
        assert!((area - 1.0).abs() <= 0.02, "{label}: {area}");
    }
}

#[test]
fn sampling_is_seeded() {
    let a = plfit(&["sample", "--alpha", "1.1913", "--beta", "1.6979", "--n", "500", "--seed", "7"]);
    let b = plfit(&["sample", "--alpha", "1.1913", "--beta", "1.6979", "--n", "500", "--seed", "7"]);
    let c = plfit(&["sample", "--alpha", "1.1913", "--beta", "1.6979", "--n", "500", "--seed", "8"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let xs: Vec<f64> = stdout(&a).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(xs.len(), 500);
    assert!(xs.iter().all(|&x| x > 0.0));
}

#[test]
fn sample_mean_matches_theory() {
    let o = plfit(&["sample", "--alpha", "1", "--beta", "1", "--n", "100000", "--seed", "3"]);
    let xs: Vec<f64> = stdout(&o).lines().map(|l| l.parse().unwrap()).collect();
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    assert!((mean - 1.5).abs() <= 0.02, "{mean}");
}

#[test]
fn zero_draws_is_a_usage_error() {
    assert_eq!(code(&plfit(&["sample", "--alpha", "1", "--beta", "1", "--n", "0"])), 2);
}

#[test]
fn fixtures_match_the_published_tables() {
    let digest = |bytes: &[u8]| format!("{:x}", Sha256::digest(bytes));
    assert_eq!(
        digest(include_bytes!("../data/dit-system.csv")),
        "117a98522b6a39e26e3aa22db9c4116309b11b90620831a1aa9d5a77deebf2d6"
    );
    assert_eq!(
        digest(include_bytes!("../data/noc-system.csv")),
        "d36451e72e196c8614c728fe948ba6d77373b2fdf79f14b76ec367189f25a79d"
    );
    let dit = plfit::table::read_table("dit-system").unwrap();
    let expected = [(0.0, 35.45), (1.0, 54.27), (2.0, 7.94), (3.0, 1.50), (4.0, 0.77), (5.0, 0.07)];
    assert_eq!(dit.rows(), expected.as_slice());
}

#[test]
fn custom_table_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mine.csv");
    std::fs::write(&path, "# counts\nvalue,frequency\n0,48\n1,42\n2,18\n3,12\n").unwrap();
    let o = plfit(&["fit", "--data", path.to_str().unwrap(), "--model", "pl"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("data: mine"));
    assert!(text.contains("frequencies as counts"));

    std::fs::write(&path, "value,frequency\n0,40\n1,abc\n").unwrap();
    let o = plfit(&["fit", "--data", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}
