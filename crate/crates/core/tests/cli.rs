use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symplectic-vo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn identities_all_pass() {
    let o = run(&["identities", "--which", "all"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn identity3_json_has_one_passing_record() {
    let o = run(&["identities", "--which", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
    assert_eq!(v["checks"][0]["status"], "pass");
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn unknown_identity_is_a_usage_error() {
    assert_eq!(code(&run(&["identities", "--which", "9"])), 2);
    assert_eq!(code(&run(&["identities", "--bogus"])), 2);
}

#[test]
fn rank_validation() {
    assert_eq!(code(&run(&["relations", "--rank", "1"])), 2);
    assert_eq!(code(&run(&["hwv", "--rank", "0"])), 2);
    assert_eq!(code(&run(&["cocycle", "--rank", "1"])), 2);
    assert_eq!(code(&run(&["relations", "--relation", "r9"])), 2);
    assert_eq!(code(&run(&["relations", "--mode-min", "2", "--mode-max", "1"])), 2);
}

#[test]
fn cocycle_rank_four() {
    assert_eq!(code(&run(&["cocycle", "--rank", "4"])), 0);
}

#[test]
fn hwv_rank_two_has_three_records() {
    let o = run(&["hwv", "--rank", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let hwv = v["checks"].as_array().unwrap().iter().filter(|c| c["name"] == "hwv").count();
    assert_eq!(hwv, 3);
}

#[test]
fn act_examples() {
    let o = run(&["act", "--rank", "2", "--op", "x+_2[-1]", "--vector", "e[0,0] t[]"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "e[0,2] t[]");
    let o = run(&["act", "--op", "x-_1[0]", "--vector", "e[1,0] t[1]"]);
    assert_eq!(code(&o), 0);
    // -eps(alpha_1, lambda_1) e^(lambda_1 - alpha_1) e^(lambda~_1 - alpha~_1) with eps = 1
    assert_eq!(stdout(&o).trim(), "(-1) e[0,1] t[-1]");
}

#[test]
fn malformed_literals_report_a_position() {
    let o = run(&["act", "--rank", "2", "--op", "x+_2[-1", "--vector", "e[0,0] t[]"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("position"), "{err}");
    assert!(err.contains('^'));
    let o = run(&["act", "--rank", "2", "--op", "e_1", "--vector", "e[1,1] t[1]"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn relations_with_a_user_vector() {
    let o = run(&[
        "relations", "--rank", "2", "--relation", "r8", "--mode-min", "0", "--mode-max", "0", "--vector", "e[1,0] t[1]",
        "--format", "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["total"], 4);
}

#[test]
fn reports_are_deterministic() {
    let args = ["relations", "--rank", "2", "--relation", "r5", "--format", "json", "--no-timing"];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["command"], "relations");
    assert_eq!(v["rank"], 2);
}

#[test]
fn report_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("svo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = run(&["identities", "--which", "1", "--format", "json", "--no-timing", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}
