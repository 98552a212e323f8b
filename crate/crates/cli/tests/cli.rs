use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cardguess"))
        .args(args)
        .env_remove("CARDGUESS_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn first_line(args: &[&str]) -> String {
    stdout(args).lines().next().unwrap_or_default().to_string()
}

#[test]
fn gen_small_deck_polynomial() {
    assert_eq!(stdout(&["gen", "--n", "4"]), "4 + 4q + 3q^2 + 5q^4\n");
    for tier in ["slow", "fast", "fastest"] {
        assert_eq!(first_line(&["gen", "--n", "4", "--tier", tier]), "4 + 4q + 3q^2 + 5q^4");
    }
}

#[test]
fn gen_large_deck_sums_to_all_words() {
    let v = json(&["gen", "--n", "120", "--tier", "fastest", "--format", "json", "--no-timing"]);
    let sum: u128 = v["payload"]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().parse::<u128>().unwrap())
        .sum();
    assert_eq!(sum, 1u128 << 120);
    assert_eq!(v["payload"]["total"], (1u128 << 120).to_string());
    assert_eq!(v["metadata"]["tier_used"], "fastest");
}

#[test]
fn small_decks_route_below_fastest_threshold() {
    let v = json(&["gen", "--n", "3", "--format", "json", "--no-timing"]);
    assert_eq!(v["metadata"]["params"]["tier"], "fastest");
    assert_eq!(v["metadata"]["tier_used"], "fast");
}

#[test]
fn slow_tier_size_guard() {
    let out = run(&["gen", "--n", "16", "--tier", "slow"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "size_guard");
    assert!(run(&["gen", "--n", "15", "--tier", "slow"]).status.success());
}

#[test]
fn csv_distribution_is_reproducible() {
    let a = stdout(&["gen", "--n", "4", "--format", "csv"]);
    let b = stdout(&["gen", "--n", "4", "--format", "csv"]);
    assert_eq!(a, b);
    assert_eq!(a, "guesses,count,probability\n0,4,1/4\n1,4,1/4\n2,3,3/16\n3,0,0\n4,5,5/16\n");
}

#[test]
fn json_round_trips_byte_for_byte() {
    let cases: [&[&str]; 5] = [
        &["gen", "--n", "9", "--format", "json", "--no-timing"],
        &["moments", "--n", "10", "--r", "4", "--standardized", "--precision", "12", "--format", "json", "--no-timing"],
        &["closed-form", "--r", "2", "--alpha", "-1", "--format", "json", "--no-timing"],
        &["interpolate", "--r", "2", "--parity", "odd", "--format", "json", "--no-timing"],
        &["kshuffle", "--n", "6", "--c", "3", "--mode", "simulate", "--trials", "500", "--seed", "7", "--format", "json", "--no-timing"],
    ];
    for args in cases {
        let text = stdout(args);
        let value: Value = serde_json::from_str(&text).unwrap();
        let mut again = serde_json::to_string_pretty(&value).unwrap();
        again.push('\n');
        assert_eq!(again, text, "{args:?}");
        assert_eq!(stdout(args), text, "{args:?} is not deterministic");
    }
}

#[test]
fn moments_examples() {
    assert_eq!(first_line(&["moments", "--n", "4", "--r", "2"]), "raw: [1, 15/8, 6]");
    assert_eq!(first_line(&["moments", "--n", "1", "--r", "3"]), "raw: [1, 1, 1, 1]");
    let v = json(&["moments", "--n", "200", "--r", "5", "--central", "--format", "json", "--no-timing"]);
    assert_eq!(v["payload"]["central"][1], "0");
    assert_eq!(v["payload"]["central"].as_array().unwrap().len(), 6);
}

#[test]
fn moments_large_deck_uses_closed_forms() {
    let v = json(&["moments", "--n", "5000", "--r", "2", "--format", "json", "--no-timing"]);
    assert_eq!(v["metadata"]["tier_used"], "closed-form");
    let forced = json(&["moments", "--n", "500", "--r", "2", "--tier", "fastest", "--format", "json", "--no-timing"]);
    let auto = json(&["moments", "--n", "500", "--r", "2", "--format", "json", "--no-timing"]);
    assert_eq!(forced["payload"]["raw"], auto["payload"]["raw"]);
}

#[test]
fn standardized_precision_and_degenerate_variance() {
    let text = stdout(&["moments", "--n", "4", "--r", "3", "--standardized", "--precision", "6"]);
    assert!(text.contains("standardized (6 digits): [1.000000, 0.000000, 1.000000, "), "{text}");
    let undefined = stdout(&["moments", "--n", "1", "--r", "2", "--standardized"]);
    assert!(undefined.contains("undefined"));
    let bad = run(&["moments", "--n", "4", "--r", "1", "--standardized"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_cardguess"))
        .args(["kshuffle", "--n", "10000", "--c", "4", "--mode", "leading"])
        .env("CARDGUESS_PRECISION", "8")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "65.14700159\n");
}

#[test]
fn interpolate_prints_fitted_polynomials() {
    let text = stdout(&["interpolate", "--r", "3", "--parity", "odd"]);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "P(L) = 4L^2 + 9L + 3, Q(L) = -9/2 L - 13/4");
    assert!(lines.next().unwrap().ends_with("passed"));
}

#[test]
fn closed_form_examples() {
    assert_eq!(first_line(&["closed-form", "--r", "1", "--alpha", "0"]), "(4L+1)B - 1 + 6/2^n");
    assert_eq!(first_line(&["closed-form", "--r", "0"]), "1");
    let v = json(&["closed-form", "--r", "3", "--alpha", "1", "--format", "json", "--no-timing"]);
    let fits = v["payload"]["validation"].as_array().unwrap();
    assert!(!fits.is_empty());
    assert!(fits.iter().all(|f| f["validated"] == true));
    assert_eq!(run(&["closed-form", "--r", "1", "--alpha", "3"]).status.code(), Some(2));
}

#[test]
fn kshuffle_modes() {
    assert_eq!(stdout(&["kshuffle", "--n", "4", "--c", "2", "--mode", "exact"]), "15/8\n");
    assert_eq!(stdout(&["kshuffle", "--n", "4", "--k", "1"]), "15/8\n");
    let leading = stdout(&["kshuffle", "--n", "10000", "--c", "4", "--mode", "leading", "--precision", "10"]);
    assert_eq!(leading, "65.1470015871\n");
    let sim = stdout(&["kshuffle", "--n", "4", "--k", "1", "--mode", "simulate", "--trials", "2000", "--seed", "11"]);
    assert!(sim.starts_with("mean: "));
    assert_eq!(sim, stdout(&["kshuffle", "--n", "4", "--k", "1", "--mode", "simulate", "--trials", "2000", "--seed", "11"]));
    assert!(!run(&["kshuffle", "--n", "4", "--k", "1", "--c", "2"]).status.success());
    assert_eq!(run(&["kshuffle", "--n", "0", "--c", "2"]).status.code(), Some(2));
}

#[test]
fn output_file_is_written() {
    let dir = std::env::temp_dir().join(format!("cardguess-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f4.csv");
    let out = run(&["gen", "--n", "4", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&["gen", "--n", "4", "--format", "csv"]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_tiers_passes() {
    let out = run(&["verify", "--suite", "tiers"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("[FAIL]"));
    assert!(text.lines().last().unwrap().ends_with(", 0 failed"));
}
