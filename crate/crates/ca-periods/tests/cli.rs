use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ca-periods"))
}

#[test]
fn construct_then_period_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let rule_path = dir.path().join("rule.json");
    let out = bin()
        .args([
            "construct",
            "--kind",
            "prime-partition",
            "--sigma",
            "2",
            "--n",
            "6",
        ])
        .arg("--out")
        .arg(&rule_path)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(dir.path().join("rule.sidecar.json").exists());

    let out = bin()
        .args(["period", "--sigma", "2", "--rule"])
        .arg(&rule_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["X"], 6);
    assert_eq!(v["Y"], 6);
}

#[test]
fn pi_both_agrees_and_exits_zero() {
    let out = bin()
        .args(["pi", "--sigma", "3", "--n", "11", "--method", "both"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "formula 120 brute 120"
    );
}

#[test]
fn infeasible_prime_selection_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "construct",
            "--kind",
            "prime-partition",
            "--sigma",
            "5",
            "--n",
            "7",
        ])
        .arg("--out")
        .arg(dir.path().join("rule.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn over_budget_scan_exits_3() {
    let out = bin()
        .args(["mcl", "--sigma", "3", "--n", "4"])
        .env("CA_PERIODS_BUDGET", "1000000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_construction_exits_1() {
    let out = bin()
        .args([
            "construct",
            "--kind",
            "nope",
            "--sigma",
            "2",
            "--out",
            "/tmp/x.json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn additive_example_output() {
    let out = bin()
        .args([
            "additive", "--n", "3", "--sigma", "4", "--a", "1", "--b", "1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        r#"{"period":8,"preperiod":1}"#
    );
}

#[test]
fn table_output_is_thread_count_independent() {
    let run = |threads: &str| {
        let out = bin()
            .args(["table", "--which", "3", "--threads", threads])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run("1"), run("4"));
}
