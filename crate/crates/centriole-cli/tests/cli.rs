//! End-to-end tests of the `centriole` binary.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_centriole"))
}

#[test]
fn homotopy_suite_exits_zero_with_json_report() {
    let out = bin()
        .args(["--suite", "homotopy", "--format", "json", "--samples", "5"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let report: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["summary"]["fail"], 0);
    assert!(report["results"].as_array().unwrap().len() >= 8);
    // Byte-identical rerun modulo timing.
    let out2 = bin()
        .args(["--suite", "homotopy", "--format", "json", "--samples", "5"])
        .output()
        .unwrap();
    let mut a: serde_json::Value = serde_json::from_str(&text).unwrap();
    let mut b: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out2.stdout).unwrap()).unwrap();
    for v in [&mut a, &mut b] {
        for r in v["results"].as_array_mut().unwrap() {
            r["elapsed_ms"] = serde_json::json!(0);
        }
    }
    assert_eq!(a, b);
}

#[test]
fn corrupted_table_injection_fails_with_witness() {
    let out = bin()
        .args([
            "--suite",
            "homotopy",
            "--format",
            "json",
            "--samples",
            "5",
            "--inject",
            "table-f3-identity",
        ])
        .output()
        .unwrap();
    assert!(!out.status.success(), "injection must flip the exit code");
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let fails = report["summary"]["fail"].as_u64().unwrap();
    assert!(fails >= 1);
    for r in report["results"].as_array().unwrap() {
        if r["status"] == "fail" {
            assert!(
                !r["witness"].is_null(),
                "failing check without witness: {}",
                r["check_id"]
            );
        }
    }
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let dir = std::env::temp_dir().join("centriole-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg_path = dir.join("run.conf");
    std::fs::write(
        &cfg_path,
        "suite = homotopy\nseed = 9 # comment\nformat = json\nsamples = 5\n",
    )
    .unwrap();
    let out_path = dir.join("report.json");
    let out = bin()
        .args([
            "--config",
            cfg_path.to_str().unwrap(),
            "--seed",
            "11",
            "--out",
            out_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["config"]["seed"], 11, "flag must beat config file");
    assert_eq!(report["config"]["format"], "json");
}

#[test]
fn dimension_cap_is_enforced() {
    let out = bin().args(["--n", "9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cap"), "unexpected stderr: {err}");
}

#[test]
fn unknown_suite_is_rejected() {
    let out = bin().args(["--suite", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
