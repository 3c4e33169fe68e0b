//! Command-line behavior: exit codes, report shapes, flag handling.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_nilfree")
}

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .expect("workspace root")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(workspace_root())
        .output()
        .expect("binary runs")
}

fn json_stdout(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn lemma_check_passes_on_f2() {
    let out = run(&[
        "lemma-check",
        "--max-degree",
        "5",
        "--field",
        "F2",
        "--samples",
        "40",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json_stdout(&out);
    assert_eq!(v["schema"], "nilfree/1");
    let suites = v["lemma_results"].as_array().unwrap();
    assert!(!suites.is_empty());
    assert!(suites.iter().all(|s| s["ok"] == true));
}

#[test]
fn strict_toy_schedule_fails_with_exit_1() {
    let out = run(&["tower", "--schedule", "2,4", "--mode", "strict"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_stdout(&out);
    assert_eq!(v["tower"]["validation"]["valid"], false);
    let failed: Vec<&str> = v["tower"]["validation"]["constraints"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["ok"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"strict-m1-bound"));
}

#[test]
fn toy_schedule_validates_and_builds() {
    let out = run(&["tower", "--schedule", "2,4", "--mode", "toy"]);
    assert!(out.status.success());
    let v = json_stdout(&out);
    assert_eq!(v["tower"]["validation"]["valid"], true);
    assert_eq!(v["tower"]["built"], true);
}

#[test]
fn huge_strict_schedule_validates_without_materializing() {
    // Entries far beyond machine words validate fine.
    let m1 = "100000001";
    // m2 = 40 * 2^102 * m1 is a multiple of 40 m1 above the growth bound.
    let m2 = format!(
        "{}",
        num_bigint::BigUint::parse_bytes(m1.as_bytes(), 10).unwrap()
            * 40u32
            * (num_bigint::BigUint::from(1u32) << 102u32)
    );
    let out = run(&[
        "tower",
        "--schedule",
        &format!("{m1},{m2}"),
        "--mode",
        "strict",
    ]);
    assert!(
        out.status.success(),
        "stderr: {}\nstdout: {}",
        String::from_utf8_lossy(&out.stderr),
        String::from_utf8_lossy(&out.stdout)
    );
    let v = json_stdout(&out);
    assert_eq!(v["tower"]["validation"]["valid"], true);
    assert_eq!(v["tower"]["built"], false);
}

#[test]
fn vanishing_sweep_passes() {
    let out = run(&[
        "vanishing",
        "--schedule",
        "2,4",
        "--field",
        "F5",
        "--seed",
        "3",
        "--towers",
        "2",
    ]);
    assert!(out.status.success());
    let v = json_stdout(&out);
    assert_eq!(v["vanishing"]["all_zero"], true);
}

#[test]
fn construct_writes_deterministic_report() {
    let dir = std::env::temp_dir();
    let out1 = dir.join("nilfree-test-run1.json");
    let out2 = dir.join("nilfree-test-run2.json");
    for path in [&out1, &out2] {
        let out = run(&[
            "construct",
            "--config",
            "configs/toy.json",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert_eq!(a, b, "construct runs must be byte-identical");
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["schema"], "nilfree/1");
    assert_eq!(v["timings"], serde_json::Value::Null);
}

#[test]
fn expand_lists_substitution_terms() {
    let out = run(&["expand", "--word", "x", "--field", "Q"]);
    assert!(out.status.success());
    let v = json_stdout(&out);
    let terms = v["config_echo"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
}

#[test]
fn enumerate_scalars_reports_exhaustion() {
    let out = run(&["enumerate", "--scalars", "--count", "5", "--field", "F3"]);
    assert!(out.status.success());
    let v = json_stdout(&out);
    assert_eq!(v["config_echo"]["exhausted"], true);
    assert_eq!(
        v["config_echo"]["values"],
        serde_json::json!(["0", "1", "2"])
    );
}

#[test]
fn enumerate_elements_starts_with_the_generators() {
    let out = run(&["enumerate", "--count", "3", "--field", "F2"]);
    assert!(out.status.success());
    let v = json_stdout(&out);
    let values = v["config_echo"]["values"].as_array().unwrap();
    assert_eq!(values.len(), 3);
    assert_eq!(values[0][0]["word"], "x1");
    assert_eq!(values[1][0]["word"], "x2");
    assert_eq!(values[2][0]["word"], "x3");
}

#[test]
fn certify_accepts_an_explicit_ideal() {
    let dir = std::env::temp_dir();
    let path = dir.join("nilfree-test-ideal.json");
    std::fs::write(
        &path,
        r#"{"generators":[[{"word":"x1x1","coeff":"1"}]],"d_max":3}"#,
    )
    .unwrap();
    let out = run(&[
        "certify",
        "--schedule",
        "2,4",
        "--field",
        "F5",
        "--seed",
        "2",
        "--ideal",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_stdout(&out);
    let certs = v["certificates"].as_array().unwrap();
    assert!(certs.iter().all(|c| c["ok"] == true));
    // Tower-route entries carry a found/failure status.
    assert!(certs
        .iter()
        .filter_map(|c| c["tower"]["status"].as_str())
        .all(|s| s == "found"));
}

#[test]
fn certify_reports_swallowed_classes() {
    // An ideal containing the whole minimal degree-2 collapse class leaves
    // its word uncertified; exit code 1 flags the failed assertion.
    let dir = std::env::temp_dir();
    let path = dir.join("nilfree-test-adversarial.json");
    let gens: Vec<serde_json::Value> = ["x1", "x2", "x3"]
        .iter()
        .flat_map(|a| {
            ["x1", "x2", "x3"]
                .iter()
                .map(move |b| serde_json::json!([{ "word": format!("{a}{b}"), "coeff": "1" }]))
        })
        .collect();
    let ideal = serde_json::json!({ "generators": gens, "d_max": 2 });
    std::fs::write(&path, serde_json::to_vec(&ideal).unwrap()).unwrap();
    let out = run(&[
        "certify",
        "--schedule",
        "2",
        "--field",
        "F2",
        "--d-cert",
        "2",
        "--ideal",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_stdout(&out);
    let failed: Vec<&str> = v["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["ok"] == false)
        .map(|c| c["word"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"xx"));
    let ranks = v["ranks"].as_array().unwrap();
    assert_eq!(ranks[1]["free"], false);
}

#[test]
fn unknown_flag_exits_2() {
    let out = run(&["construct", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_field_exits_2() {
    let out = run(&["lemma-check", "--field", "F6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_config_exits_2() {
    let out = run(&["construct", "--config", "/nonexistent/nope.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flags_override_config_values() {
    // The toy config pins F2; the flag switches the run to F5.
    let out = run(&[
        "enumerate",
        "--scalars",
        "--count",
        "6",
        "--config",
        "configs/toy.json",
        "--field",
        "F5",
    ]);
    assert!(out.status.success());
    let v = json_stdout(&out);
    assert_eq!(v["config_echo"]["field"], "F5");
    assert_eq!(v["config_echo"]["exhausted"], true);
}
