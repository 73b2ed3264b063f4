use std::fs;
use std::process::{Command, Output};

fn rdeman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdeman"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn analyze_json() {
    let o = rdeman(&["analyze", "--alpha", "0.2", "--beta", "0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!((v["theta"].as_f64().unwrap() - 2.4083189158).abs() < 1e-10);
    assert_eq!(v["fixed_point"].as_f64().unwrap(), 1.2);
    assert_eq!(v["saddle"], true);
}

#[test]
fn coeffs_stable_printed_form() {
    let o = rdeman(&[
        "coeffs", "--kind", "stable", "--alpha", "0.2", "--beta", "0", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let p = &v["printed"];
    assert!((p["y_coeff"].as_f64().unwrap() - 0.7076136995).abs() < 1e-9);
    assert!((p["quadratic"].as_f64().unwrap() - 0.1961061968).abs() < 1e-9);
    assert!((v["b2"].as_f64().unwrap() + 0.1961061968).abs() < 1e-9);
}

#[test]
fn coeffs_outside_saddle_regime_is_a_domain_error() {
    let o = rdeman(&[
        "coeffs", "--kind", "unstable", "--alpha", "1.5", "--beta", "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn center_swap() {
    let o = rdeman(&["center", "--phi", "2.94", "--beta", "0", "--swap", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!((v["phi"].as_f64().unwrap() - 1.515463918).abs() < 1e-9);
    assert!((v["c2"].as_f64().unwrap() + 0.1559585827).abs() < 1e-9);
    assert!((v["c3"].as_f64().unwrap() - 0.05514400545).abs() < 1e-10);
}

#[test]
fn center_below_threshold_exits_2() {
    let o = rdeman(&["center", "--phi", "1.5", "--beta", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn curve_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u1.csv");
    let args = [
        "curve",
        "--kind",
        "unstable",
        "--alpha",
        "0.2",
        "--beta",
        "0",
        "--xmin",
        "0.9",
        "--xmax",
        "1.5",
        "--samples",
        "121",
        "--out",
        path.to_str().unwrap(),
    ];
    let o = rdeman(&args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let first = fs::read(&path).unwrap();
    let text = String::from_utf8(first.clone()).unwrap();
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,y");
    assert_eq!(lines.len(), 122);
    assert_eq!(lines[1].split(',').next(), Some("0.9"));
    assert_eq!(lines[121].split(',').next(), Some("1.5"));
    for line in &lines[1..] {
        let y: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!(y.is_finite());
    }
    rdeman(&args);
    assert_eq!(fs::read(&path).unwrap(), first);
}

#[test]
fn curve_defaults_around_base() {
    let o = rdeman(&[
        "curve",
        "--kind",
        "center",
        "--phi",
        "2.94",
        "--beta",
        "0",
        "--samples",
        "11",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let xs: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(xs.len(), 11);
    assert!((xs[0] - 2.44).abs() < 1e-12 && (xs[10] - 3.44).abs() < 1e-12);
}

#[test]
fn curve_requires_matching_parameters() {
    let o = rdeman(&["curve", "--kind", "center", "--beta", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn trajectory_csv() {
    let o = rdeman(&[
        "trajectory",
        "--alpha",
        "1",
        "--beta",
        "0",
        "--y0",
        "2",
        "--z0",
        "3",
        "-n",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        [
            "n,x",
            "-1,2",
            "0,3",
            "1,1.66666666667",
            "2,2.8",
            "3,1.59523809524",
            "4,2.7552238806"
        ]
    );
}

#[test]
fn trajectory_rejects_nonpositive_start() {
    let o = rdeman(&[
        "trajectory",
        "--alpha",
        "1",
        "--beta",
        "0",
        "--y0",
        "-1",
        "--z0",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn zero_alpha_warns() {
    let o = rdeman(&["analyze", "--alpha", "0", "--beta", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(rdeman(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        rdeman(&["analyze", "--alpha", "0.2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        rdeman(&["analyze", "--alpha", "x", "--beta", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        rdeman(&["analyze", "--alpha", "0.2", "--beta", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(rdeman(&["--help"]).status.code(), Some(0));
}

#[test]
fn reproduce_paper_table() {
    let o = rdeman(&["reproduce-paper"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("case"));
    assert_eq!(text.lines().last(), Some("PASS: 52, ERRATUM: 16, FAIL: 0"));

    let o = rdeman(&["reproduce-paper", "--json"]);
    let raw = stdout(&o);
    assert!(!raw.contains("null") && !raw.contains("NaN"));
    let v: serde_json::Value = serde_json::from_str(&raw).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 68);
    assert_eq!(rows[0]["case"], "U1 (alpha=0.2, beta=0)");
    assert_eq!(v["summary"]["erratum"], 16);
    let erratum: Vec<_> = rows.iter().filter(|r| r["status"] == "ERRATUM").collect();
    assert!(erratum
        .iter()
        .all(|r| r["case"].as_str().unwrap().contains("beta=0.5")));
}

#[test]
fn verify_is_deterministic_and_reports_failures_through_exit_code() {
    let a = rdeman(&["verify", "--seed", "7"]);
    let b = rdeman(&["verify", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let any_fail = text.lines().any(|l| l.starts_with("FAIL"));
    assert_eq!(a.status.code(), Some(if any_fail { 1 } else { 0 }));
    assert!(text.lines().last().unwrap().starts_with("PASS: "));
    assert!(text.lines().filter(|l| l.starts_with("ERRATUM")).count() == 16);
    assert_eq!(
        rdeman(&["verify", "--grid", "medium"]).status.code(),
        Some(2)
    );
}
