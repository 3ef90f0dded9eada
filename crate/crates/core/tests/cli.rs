use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn antifourier(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_antifourier"))
        .args(args)
        .env_remove("ANTIFOURIER_QUAD_TOL")
        .output()
        .unwrap()
}

fn stdout_ok(args: &[&str]) -> String {
    let out = antifourier(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn rows(csv: &str) -> (Vec<&str>, Vec<Vec<f64>>) {
    let mut lines = csv.lines();
    let header = lines.next().unwrap().split(',').collect();
    let body = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, body)
}

fn alt(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

#[test]
fn coeffs_identity_example() {
    let text = stdout_ok(&[
        "coeffs",
        "--function",
        "named:identity",
        "--interval",
        "pi",
        "--kind",
        "anti",
        "--n",
        "16",
        "--format",
        "json",
    ]);
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["kind"], "antiperiodic");
    assert_eq!(doc["N"], 16);
    assert_eq!(doc["L"].as_f64().unwrap(), PI);
    assert!(doc["gamma"].as_f64().unwrap().abs() <= 1e-12);
    let beta = doc["beta"].as_array().unwrap();
    assert_eq!(beta.len(), 17);
    for (n, b) in beta.iter().enumerate() {
        let k = 2.0 * n as f64 + 1.0;
        assert!((b.as_f64().unwrap() - 8.0 * alt(n) / (PI * k * k)).abs() <= 1e-8);
    }
}

#[test]
fn eval_quadratic_example() {
    let text = stdout_ok(&[
        "eval",
        "--function",
        "poly:1,2,1",
        "--interval",
        "1",
        "--kind",
        "both",
        "--n",
        "64",
        "--grid",
        "101",
        "--format",
        "csv",
    ]);
    let (header, body) = rows(&text);
    assert_eq!(header, ["x", "f", "classical", "antiperiodic"]);
    assert_eq!(body.len(), 101);
    for row in [&body[0], &body[100]] {
        assert_eq!(row[0].abs(), 1.0);
        assert!((row[3] - row[1]).abs() <= 1e-2, "antiperiodic {row:?}");
        assert!((row[2] - row[1]).abs() > 1e-2, "classical {row:?}");
    }
}

#[test]
fn heat_example_grid() {
    let text = stdout_ok(&[
        "heat",
        "--function",
        "named:scaled-square",
        "--interval",
        "pi",
        "--k",
        "1",
        "--c",
        "1",
        "--n",
        "10",
        "--times",
        "0,0.5,1",
        "--grid",
        "101",
    ]);
    let (header, body) = rows(&text);
    assert_eq!(header, ["x", "t", "u"]);
    assert_eq!(body.len(), 303);
    for row in &body {
        let (x, t) = (row[0], row[1]);
        let exact: f64 = 1.0
            + (0..=10)
                .map(|n| {
                    let k = 2.0 * n as f64 + 1.0;
                    let a = -32.0 * alt(n) / (PI.powi(3) * k.powi(3));
                    a * (-(k / 2.0).powi(2) * t).exp() * (k * x / 2.0).cos()
                })
                .sum::<f64>();
        assert!((row[2] - exact).abs() <= 1e-8, "{row:?} vs {exact}");
    }
    // Boundary mean: u(-π) + u(π) = 2 at every time.
    for t in 0..3 {
        let (first, last) = (&body[101 * t], &body[101 * t + 100]);
        assert!((first[2] + last[2] - 2.0).abs() <= 1e-12);
    }
}

#[test]
fn csv_numbers_round_trip() {
    let text = stdout_ok(&["eval", "--function", "named:x-plus-sign", "--n", "12", "--grid", "21"]);
    for field in text.lines().skip(1).flat_map(|l| l.split(',')) {
        let v: f64 = field.parse().unwrap();
        assert_eq!(format!("{v:.16e}"), field);
        let mantissa = field.split('e').next().unwrap().trim_start_matches('-');
        assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17);
    }
}

#[test]
fn heat_json_is_a_tagged_document() {
    let text = stdout_ok(&[
        "heat",
        "--function",
        "named:scaled-square",
        "--n",
        "3",
        "--format",
        "json",
    ]);
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["kind"], "heat");
    assert_eq!(doc["A"].as_array().unwrap().len(), 4);
    assert_eq!(doc["c"].as_f64(), Some(1.0));
}

#[test]
fn incompatible_heat_data_exits_1_with_json_error() {
    let out = antifourier(&["heat", "--function", "named:identity", "--c", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(doc["error"]["kind"], "numerical");
}

#[test]
fn bad_function_spec_exits_2() {
    let out = antifourier(&["coeffs", "--function", "poly:1,,2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = antifourier(&["coeffs", "--function", "named:identity", "--interval", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = antifourier(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_writes_file_and_failures_leave_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("basis.csv");
    let p = path.to_str().unwrap();
    let out = antifourier(&["basis", "--n", "2", "--grid", "11", "--out", p]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout_ok(&["basis", "--n", "2", "--grid", "11"]));

    let failed = dir.path().join("failed.csv");
    let out = antifourier(&[
        "heat",
        "--function",
        "named:identity",
        "--out",
        failed.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!failed.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn quadrature_tolerance_from_env_and_flag() {
    let bin = env!("CARGO_BIN_EXE_antifourier");
    let args = ["coeffs", "--function", "named:identity", "--n", "2"];
    let bad_env = Command::new(bin)
        .args(args)
        .env("ANTIFOURIER_QUAD_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
    let flag_wins = Command::new(bin)
        .args(args)
        .args(["--quad-tol", "1e-10"])
        .env("ANTIFOURIER_QUAD_TOL", "-1")
        .output()
        .unwrap();
    assert!(flag_wins.status.success());
    assert_eq!(String::from_utf8(flag_wins.stdout).unwrap(), stdout_ok(&args));
}

#[test]
fn compare_and_gibbs_reports() {
    let text = stdout_ok(&["compare", "--function", "named:identity", "--n", "50"]);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("series_kind,M,"));
    let orders: Vec<&str> = lines.map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(orders, ["10", "25", "50", "10", "25", "50"]);

    let text = stdout_ok(&[
        "gibbs",
        "--function",
        "named:identity",
        "--n",
        "100",
        "--format",
        "json",
    ]);
    let doc: Value = serde_json::from_str(&text).unwrap();
    let overshoot = |i: usize| doc[i]["overshoot"].as_f64().unwrap();
    assert_eq!(doc[0]["series_kind"], "classical");
    assert!(overshoot(0) > 0.4);
    assert!(overshoot(1) <= 0.04);
}

#[test]
fn sampled_functions_load_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    let mut text = String::from("x,y\n");
    for i in 0..=20 {
        let x = -1.0 + 0.1 * i as f64;
        text.push_str(&format!("{x},{}\n", x * x));
    }
    std::fs::write(&path, text).unwrap();
    let spec = format!("csv:{}", path.display());
    let out = stdout_ok(&[
        "coeffs",
        "--function",
        &spec,
        "--interval",
        "1",
        "--kind",
        "anti",
        "--n",
        "4",
    ]);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert!((doc["gamma"].as_f64().unwrap() - 1.0).abs() <= 1e-12);
}
