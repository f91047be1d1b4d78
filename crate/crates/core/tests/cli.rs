//! End-to-end runs of the cherednik-lab binary.

use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cherednik-lab")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}")))
}

#[test]
fn kleshchev_lists_single_rows() {
    let (code, v) = json(&["kleshchev", "--m", "4", "--p", "2", "--n", "3", "--relation", "main"]);
    assert_eq!(code, 0);
    assert_eq!(v["non_kleshchev"], serde_json::json!(["((), (3), (), ())", "((3), (), (), ())"]));
}

#[test]
fn hilbert_of_g312() {
    let (code, v) = json(&["hilbert", "--m", "3", "--p", "1", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["hilbert"]["shift"], -5);
    let coeffs: Vec<u64> = serde_json::from_value(v["hilbert"]["coeffs"].clone()).unwrap();
    assert_eq!(coeffs, vec![1, 2, 3, 4, 5, 6, 7, 6, 5, 4, 3, 2, 1]);
    assert_eq!(v["total_dimension"], 49);
}

#[test]
fn character_limits_of_g312() {
    let (code, v) = json(&["character", "--m", "3", "--p", "1", "--n", "2", "--seed", "7"]);
    assert_eq!(code, 0);
    for class in v["classes"].as_array().unwrap() {
        let fixed = class["fixed_space_dim"].as_u64().unwrap() as u32;
        assert_eq!(class["limit_predicted"].as_u64().unwrap(), 7u64.pow(fixed));
        assert_eq!(class["limit_passed"], true);
        assert!(class["s_w_character"]["coeffs"].is_array());
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["singular", "--m", "4", "--p", "2", "--n", "2", "--seed", "5"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["group-info", "--m", "4", "--p", "4", "--n", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("m > p required"));
    assert_eq!(run(&["group-info", "--m", "4", "--p", "3", "--n", "2"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["onedim-check", "--m", "4", "--p", "2", "--n", "2"]).0, 0);
    assert_eq!(run(&["onedim-check", "--m", "4", "--p", "2", "--n", "2", "--relation", "main"]).0, 1);
}

#[test]
fn size_cap_is_reported() {
    let out = Command::new(env!("CARGO_BIN_EXE_cherednik-lab"))
        .args(["group-info", "--m", "4", "--p", "2", "--n", "3"])
        .env("CHEREDNIK_LAB_MAX_DIM", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap is 100"));
}

#[test]
fn tsv_tables() {
    let (code, out, _) = run(&["bgg-check", "--m", "4", "--p", "2", "--n", "2", "--format", "tsv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "representative\tidentity_holds");
    assert_eq!(lines.len(), 11);
}

#[test]
fn verify_all_small_triple() {
    let (code, v) = json(&["verify-all", "--m", "3", "--p", "1", "--n", "2"]);
    assert_eq!(code, 0);
    let criteria = v["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 13);
    assert!(criteria.iter().all(|c| c["passed"] == true));
}

#[test]
fn verify_all_reports_character_mismatch_for_p_above_one() {
    let (code, v) = json(&["verify-all", "--m", "4", "--p", "2", "--n", "2"]);
    assert_eq!(code, 1);
    let failed: Vec<u64> = v["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["criterion"].as_u64().unwrap())
        .collect();
    assert_eq!(failed, vec![8, 10]);
}
