//! End-to-end tests of the command-line interface: output shapes, the
//! JSON schema, and the exit-code contract (0 holds/success, 2 hypothesis
//! violated, 3 parse/usage, 4 internal check failed).

use std::process::Command;

fn hrank() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hrank"))
}

#[test]
fn rank_json_output() {
    let out = hrank()
        .args(["rank", "-n", "2", "--format", "json", "w + ~w + z1*~z1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], 3);
    assert_eq!(v["bidegree"], serde_json::json!([1, 1]));
    assert_eq!(v["real_valued"], true);
}

#[test]
fn rank_with_radical_field() {
    let out = hrank()
        .args([
            "rank",
            "-n",
            "3",
            "--field",
            "qi-sqrt2",
            "--format",
            "json",
            "z1^2*~z1^2 - r2*z1*~z1*z2*~z2 + z2^2*~z2^2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], 3);
}

#[test]
fn radical_token_without_field_is_usage_error() {
    let out = hrank()
        .args(["rank", "-n", "2", "r2*z1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("qi-sqrt2"), "{err}");
}

#[test]
fn verify_holds_exit_zero() {
    let out = hrank()
        .args([
            "verify", "-n", "2", "-d", "3", "--p", "w + ~w + z1*~z1", "--q", "2 + z1",
            "--format", "json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["rank_p"], 3);
    assert_eq!(v["rank_p_pow_d"], 10);
    assert_eq!(v["target"], "10");
}

#[test]
fn verify_hypothesis_violation_exit_two() {
    let out = hrank()
        .args([
            "verify", "-n", "2", "-d", "2", "--p", "1 + z1*~z1 + w*~w", "--q", "1",
            "--format", "json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "hypothesis-violated");
    assert_eq!(v["violation"], "no-zero-point-found");
}

#[test]
fn verify_with_point_and_reciprocal_q() {
    let out = hrank()
        .args([
            "verify", "-n", "2", "-d", "2", "--p", "w + ~w + z1*~z1",
            "--q", "1 + z1*~z1", "--q-kind", "reciprocal",
            "--point", "0,0", "--format", "json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "holds");
}

#[test]
fn parse_error_exit_three() {
    let out = hrank()
        .args(["rank", "-n", "2", "w + $"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}

#[test]
fn unknown_flag_exit_three() {
    let out = hrank().args(["rank", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn gallery_all_pass_exit_zero() {
    let out = hrank()
        .args(["gallery", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let cases = v.as_array().unwrap();
    assert!(cases.len() >= 6);
    for c in cases {
        assert_eq!(c["pass"], true, "case {} failed", c["id"]);
    }
}

#[test]
fn decompose_real_valued_signature() {
    let out = hrank()
        .args([
            "decompose", "-n", "2", "--format", "json", "w + ~w + z1*~z1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], 3);
    assert_eq!(v["signature"]["squares"], 3);
}

#[test]
fn normalize_reports_form() {
    let out = hrank()
        .args([
            "normalize", "-n", "2", "--format", "json", "z1*~z1 + w*~w",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["form"], "form3");
    assert_eq!(v["r"], 1);
    assert_eq!(v["full_rank_form"]["dimension"], 1);
}

#[test]
fn random_suite_small_run() {
    let out = hrank()
        .args([
            "random-suite", "-n", "2", "-d", "2", "--seed", "5", "--trials", "8",
            "--format", "json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_hold"], true);
    assert_eq!(v["results"].as_array().unwrap().len(), 8);
}

#[test]
fn expression_from_file() {
    let dir = std::env::temp_dir().join("hrank-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("poly.txt");
    std::fs::write(&path, "w + ~w + z1*~z1\n").unwrap();
    let arg = format!("@{}", path.display());
    let out = hrank()
        .args(["rank", "-n", "2", "--format", "json", &arg])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], 3);
    std::fs::remove_file(path).ok();
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("hrank-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rank.json");
    let out = hrank()
        .args([
            "rank", "-n", "2", "--format", "json", "--out",
            path.to_str().unwrap(), "z1*~z1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rank"], 1);
    std::fs::remove_file(path).ok();
}
