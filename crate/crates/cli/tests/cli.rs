use std::io::Write;
use std::process::{Command, Output, Stdio};

fn explab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_explab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn real_at_kummer_prints_json() {
    let o = explab(&["dmod", "real", "--op", "t*d - 1/2", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ker"], 0);
    assert_eq!(v["coker"], 1);
    assert_eq!(v["certificate"], "exact-triangular");
}

#[test]
fn kloosterman_p7() {
    let o = explab(&["sum", "--prime", "7", "--kloosterman", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-2 - z^2 - 2*z^3 - 2*z^4 - z^5");
}

#[test]
fn gb_of_exponential_pair() {
    let o = explab(&["dmod", "gb", "--n", "2", "--gens", "d1 - 1; d2 - 1"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines, ["d2 - 1", "d1 - 1"]);
}

#[test]
fn unknown_suite_is_usage_error() {
    let o = explab(&["suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
}

#[test]
fn bad_prime_and_syntax_are_usage_errors() {
    assert_eq!(explab(&["--prime", "9", "suite", "realization"]).status.code(), Some(2));
    let o = explab(&["dmod", "real", "--op", "x +* d", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 4"));
    assert_eq!(explab(&["dmod", "real", "--op", "d"]).status.code(), Some(2));
}

#[test]
fn exhausted_bound_exits_3() {
    let o = explab(&["--bound", "6", "dmod", "real", "--op", "t^2*d - t*d - 1/3", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn suite_json_is_deterministic() {
    let args = ["--suite", "realization", "--prime", "3,5", "--seed", "7", "--json"];
    let a = explab(&args);
    let b = explab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "explab/1");
    let ids: Vec<&str> = v["cases"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(v["cases"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn small_finite_suite_has_anchored_cases() {
    let o = explab(&["suite", "finite-identities", "--prime", "3", "--rank", "1", "--cases", "10", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let cases = v["cases"].as_array().unwrap();
    assert!(cases.len() >= 6);
    assert!(cases.iter().all(|c| !c["anchor"].as_str().unwrap().is_empty()));
}

#[test]
fn dmod_suite_lists_duality_case() {
    let o = explab(&["suite", "dmod-core", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let dual = v["cases"].as_array().unwrap().iter().find(|c| c["id"] == "dual-L-lambda").unwrap();
    assert_eq!(dual["anchor"], r"\DD\mathcal{L}_{\lambda}\simeq\mathcal{L}_{-\lambda}[2]");
}

#[test]
fn ft_and_real_round_trip_json() {
    // delta at (x = 0, t = 1) on F_3
    let zero = r#"{"prime":3,"coeffs":["0","0"]}"#;
    let one = r#"{"prime":3,"coeffs":["1","0"]}"#;
    let row = |hot: usize| {
        let cells: Vec<&str> = (0..3).map(|t| if t == hot { one } else { zero }).collect();
        format!("[{}]", cells.join(","))
    };
    let input = format!(r#"{{"base":3,"prime":3,"values":[{},{},{}]}}"#, row(1), row(9), row(9));

    let mut child = Command::new(env!("CARGO_BIN_EXE_explab"))
        .args(["ft", "--canonical"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["base"], 3);

    let mut child = Command::new(env!("CARGO_BIN_EXE_explab"))
        .args(["real", "--lambda", "1", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // psi(1) = z at x = 0, nothing elsewhere
    assert_eq!(v[0]["coeffs"], serde_json::json!(["0/1", "1/1"]));
    assert_eq!(v[1]["coeffs"], serde_json::json!(["0/1", "0/1"]));
}
