//! End-to-end tests of the `polyan` binary: exit codes, output formats,
//! solve/verify round trips, and byte-for-byte determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn polyan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("polyan-test-{}-{name}", std::process::id()));
    std::fs::write(&path, content).expect("temp file written");
    path
}

#[test]
fn hermite_subcommand_emits_expression_json() {
    let output = polyan(&["hermite", "--m", "1", "--n", "1"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("\"a\":1,\"b\":1"));
    assert!(text.contains("-1.0000000000000000e0"));
}

#[test]
fn solve_then_verify_round_trip() {
    let solve = polyan(&["solve", "--expr", "zb^2*z + H(2,1)", "--order", "3"]);
    assert!(solve.status.success());
    let bundle_path = write_temp("bundle.json", &stdout(&solve));
    let verify = polyan(&["verify", "--input", bundle_path.to_str().unwrap()]);
    assert!(verify.status.success());
    assert!(stdout(&verify).contains("\"passed\":true"));
    std::fs::remove_file(bundle_path).ok();
}

#[test]
fn solve_kernel_datum_matches_closed_form() {
    // datum F_2 → u = z̄F_2 + (z̄²/2)(z−w)e^{zw̄}
    let kernel = polyan(&["kernel", "--n", "2"]);
    let kernel_path = write_temp("f2.json", &stdout(&kernel));
    let solve = polyan(&[
        "solve",
        "--input",
        kernel_path.to_str().unwrap(),
        "--order",
        "2",
    ]);
    assert!(solve.status.success());
    let bundle: serde_json::Value = serde_json::from_str(&stdout(&solve)).unwrap();
    let particular = &bundle["particular"];
    assert_eq!(particular["m1"], 1);
    // z·z̄² carries −1 from z̄F_2 plus 1/2 from (z̄²/2)(z−w); w·z̄² carries
    // +1 − 1/2
    let terms = particular["terms"].as_array().unwrap();
    let coeff = |a: u64, b: u64, c: u64, d: u64| -> f64 {
        terms
            .iter()
            .find(|t| t["a"] == a && t["b"] == b && t["c"] == c && t["d"] == d)
            .map(|t| t["re"].as_f64().unwrap())
            .unwrap_or(0.0)
    };
    assert_eq!(coeff(1, 2, 0, 0), -0.5, "{particular}");
    assert_eq!(coeff(0, 2, 1, 0), 0.5, "{particular}");
    assert_eq!(coeff(0, 1, 0, 0), 2.0, "{particular}");
    std::fs::remove_file(kernel_path).ok();
}

#[test]
fn decompose_groups_by_conjugate_degree() {
    let output = polyan(&["decompose", "--expr", "zb^2*z + zb + 5"]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["order"], 3);
    assert_eq!(value["components"].as_array().unwrap().len(), 3);
}

#[test]
fn moments_table_has_bound_columns() {
    let output = polyan(&["moments", "--eta", "3"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.starts_with("n,eta,factorial,eta_le_factorial\n"));
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().skip(1).all(|line| line.ends_with("true")));
}

#[test]
fn estimate_reports_both_bounds() {
    let output = polyan(&["estimate", "--expr", "H(1,1)", "--order", "2"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("particular_bound"));
    assert!(text.contains("remainder_bound"));
    assert!(text.lines().skip(1).all(|line| line.ends_with("true")));
}

#[test]
fn report_includes_scope_note_in_every_format() {
    for format in ["json", "csv", "markdown"] {
        let output = polyan(&[
            "report",
            "--expr",
            "H(2,2)",
            "--order",
            "3",
            "--format",
            format,
        ]);
        assert!(output.status.success(), "{format}");
        let text = stdout(&output);
        assert!(text.contains("nonconstructive"), "{format}: {text}");
        assert!(text.contains("particular"), "{format}");
    }
}

#[test]
fn report_radial_power_datum_solution() {
    // |z|⁴ = z²z̄² has order 3 and particular solution z̄|z|⁴/3 = z²z̄³/3
    let output = polyan(&["report", "--expr", "z^2*zb^2", "--order", "3"]);
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let sections = report["sections"].as_array().unwrap();
    let particular = sections
        .iter()
        .find(|s| s["title"] == "particular solution")
        .expect("particular solution section");
    let terms = particular["expression"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["a"], 2);
    assert_eq!(terms[0]["b"], 3);
    let re = terms[0]["re"].as_f64().unwrap();
    assert!((re - 1.0 / 3.0).abs() < 1e-15);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["report", "--expr", "F(2)", "--order", "2", "--w", "0.5,0.5"];
    let first = polyan(&args);
    let second = polyan(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn infinite_order_datum_is_domain_error() {
    let output = polyan(&["solve", "--expr", "ezbw"]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("polyanalytic"), "{stderr}");
}

#[test]
fn divergent_norm_is_domain_error() {
    let output = polyan(&["norm", "--expr", "ezzb^-1"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn bad_expression_is_usage_error() {
    let output = polyan(&["solve", "--expr", "z +"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_usage_error() {
    let output = polyan(&["solve", "--nonsense"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn norm_csv_shape_and_kernel_value() {
    // ‖F_1‖² at w = 1 is e, through the quadrature path
    let output = polyan(&[
        "norm",
        "--expr",
        "ezwb",
        "--w",
        "1,0",
        "--denominator-order",
        "0",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.starts_with("name,value,abs_error_bound,method\n"));
    let row = text.lines().nth(1).unwrap();
    assert!(row.ends_with("quad2d"));
    let value: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((value - std::f64::consts::E).abs() < 1e-8);
}

#[test]
fn laguerre_table_lists_all_degrees() {
    let output = polyan(&["laguerre", "--m", "2", "--alpha", "1", "--table"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.starts_with("m,alpha,expression\n"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn quad_tol_env_is_respected() {
    let output = Command::new(env!("CARGO_BIN_EXE_polyan"))
        .args(["norm", "--expr", "ezwb", "--w", "1,0", "--denominator-order", "0"])
        .env("POLYAN_QUAD_TOL", "1e-6")
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = stdout(&output);
    let value: f64 = text.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((value - std::f64::consts::E).abs() < 1e-4);
}
