use std::process::{Command, Output};

use serde_json::Value;

fn twistlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistlab"))
        .args(args)
        .env_remove("TWISTLAB_ORDER_BUDGET")
        .env_remove("TWISTLAB_GRADE_BUDGET")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn tower_command() {
    let out = twistlab(&["tower", "--p", "2", "--q", "2", "--kmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["levels"].as_array().unwrap().len(), 3);
    assert_eq!(
        v["result"]["levels"][1]["defining_polynomial"],
        serde_json::json!([1, 1, 1])
    );
    assert_eq!(v["config"]["seed"], 1);
    assert!(v["version"].as_str().unwrap().starts_with("twistlab "));
}

#[test]
fn center_command() {
    let out = twistlab(&["center", "--p", "2", "--q", "2", "--n", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["index"], 4);
    assert_eq!(v["result"]["basis"], serde_json::json!([[4, 0], [0, 1]]));
}

#[test]
fn pi_test_command() {
    let args = [
        "pi-test", "--p", "2", "--q", "2", "--n", "2", "--k", "1", "--degree", "4", "--trials",
        "1000", "--seed", "7",
    ];
    let out = twistlab(&args);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["vanish_count"], 1000);
    assert_eq!(v["config"]["seed"], 7);
    assert!(String::from_utf8_lossy(&out.stderr).contains("vanished on 1000/1000"));
    assert_eq!(twistlab(&args).stdout, out.stdout);
    let witness = twistlab(&["pi-test", "--k", "2", "--degree", "6", "--trials", "20"]);
    assert!(json(&witness)["result"]["witness"].is_object());
}

#[test]
fn growth_command_emits_csv() {
    let out = twistlab(&["growth", "--n", "1", "--k", "1", "--Nmax", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("# gk_estimate slope=")));
    let rows = twistlab::formats::parse_growth_csv(&text).unwrap();
    assert_eq!(
        rows,
        (0..=12)
            .map(|n| if n == 0 { 1 } else { 4 * n })
            .collect::<Vec<u64>>()
    );
    let as_json = twistlab(&[
        "growth", "--n", "1", "--k", "1", "--nmax", "12", "--format", "json",
    ]);
    assert_eq!(
        json(&as_json)["result"]["rows"].as_array().unwrap().len(),
        13
    );
}

#[test]
fn simplicity_and_invert_commands() {
    let out = twistlab(&["simplicity", "--n", "1", "--k", "1", "--element", "1 + x1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["steps"].as_array().unwrap().len(), 1);
    assert_eq!(v["result"]["steps"][0]["k"], 1);

    let out = twistlab(&["invert", "--n", "1", "--k", "1", "--element", "1 + x1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["product_is_one"], true);
    let out = twistlab(&[
        "invert",
        "--n",
        "2",
        "--k",
        "1",
        "--element",
        "t*x1 + x2",
        "--denominator",
        "1 + x1^2",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["tower", "--kmax", "5"],
        vec!["center", "--k", "3", "--kmax", "1"],
        vec!["simplicity", "--element", "1 + y"],
        vec!["simplicity"],
        vec!["pi-test", "--degree", "9"],
        vec!["invert", "--n", "3", "--element", "1 + x1"],
        vec!["invert", "--element", "1", "--denominator", "t"],
        vec!["simplicity", "--n", "2", "--element", "1 + x2"],
        vec!["tower", "--p", "4"],
    ] {
        let out = twistlab(&args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(out.stdout.is_empty());
    }
    assert_eq!(twistlab(&["bogus"]).status.code(), Some(2));
}

#[test]
fn size_guard_can_be_lifted() {
    let out = twistlab(&[
        "invert",
        "--n",
        "3",
        "--k",
        "1",
        "--element",
        "1 + x1",
        "--allow-large",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn env_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_twistlab"))
        .args(["tower", "--kmax", "3"])
        .env("TWISTLAB_ORDER_BUDGET", "64")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_twistlab"))
        .args(["tower", "--kmax", "3", "--order-budget", "256"])
        .env("TWISTLAB_ORDER_BUDGET", "64")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let cfg = dir.path().join("dependent.json");
    std::fs::write(&cfg, r#"{"exponents": [[0], [0]]}"#).unwrap();
    let out = twistlab(&["verify-all", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not certified"));

    let cfg = dir.path().join("small.json");
    let report = dir.path().join("report.json");
    std::fs::write(
        &cfg,
        r#"{"n": 1, "k": 1, "degree": 4, "trials": 30, "seed": 99}"#,
    )
    .unwrap();
    let out = twistlab(&[
        "pi-test",
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["config"]["seed"], 99);
    assert_eq!(v["config"]["n"], 1);
    assert_eq!(v["result"]["trials"], 30);

    std::fs::write(&cfg, r#"{"nn": 1}"#).unwrap();
    assert_eq!(
        twistlab(&["tower", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_all_is_deterministic() {
    let a = twistlab(&["verify-all", "--trials", "40"]);
    let b = twistlab(&["verify-all", "--trials", "40"]);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["result"]["passed"], true);
    assert_eq!(v["config"]["trials"], 40);
    let other = twistlab(&["verify-all", "--trials", "40", "--seed", "2"]);
    assert_ne!(other.stdout, a.stdout);
}
