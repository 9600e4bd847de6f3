//! End-to-end checks of the command-line surface.

use std::path::PathBuf;
use std::process::Command;

fn udg() -> Command {
    Command::new(env!("CARGO_BIN_EXE_udg"))
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("udg_cli_{tag}_{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn embed_refutes_k4_and_reports_trace() {
    let out = udg()
        .args(["embed", "--graph", "C~", "--paranoid"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let record: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(record["result"]["outcome"], "refuted");
    assert_eq!(record["n"], 4);
    let trace = record["trace"].as_array().unwrap();
    assert_eq!(trace[0]["move"], "rhombus_system");
    assert!(record["paranoid_disagreement"].is_null());
}

#[test]
fn embed_writes_coordinates_for_the_diamond() {
    let dir = temp_dir("embed");
    let path = dir.join("result.json");
    let out = udg()
        .args(["embed", "--graph", "C^", "--seed", "5", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let record: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(record["result"]["outcome"], "embedded");
    assert_eq!(record["result"]["coordinates"].as_array().unwrap().len(), 4);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn enumerate_and_tuud_filter_roundtrip() {
    let dir = temp_dir("filter");
    let level = dir.join("level.g6");
    let survivors = dir.join("survivors.g6");
    let rejects = dir.join("rejects.jsonl");

    let out = udg()
        .args(["enumerate", "--n", "6", "--m", "9", "--out"])
        .arg(&level)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let level_text = std::fs::read_to_string(&level).unwrap();
    assert_eq!(level_text.lines().count(), 4);

    // appending a catalog witness to the level exercises the reject path
    let mut with_witness = level_text.clone();
    with_witness.push_str("Elcg\n");
    std::fs::write(&level, with_witness).unwrap();

    let out = udg()
        .args(["tuud-filter"])
        .arg("--in")
        .arg(&level)
        .arg("--out")
        .arg(&survivors)
        .arg("--report")
        .arg(&rejects)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        std::fs::read_to_string(&survivors).unwrap().lines().count(),
        4
    );
    let reject_lines: Vec<String> = std::fs::read_to_string(&rejects)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(reject_lines.len(), 1);
    let record: serde_json::Value = serde_json::from_str(&reject_lines[0]).unwrap();
    assert_eq!(record["code"], "Elcg");
    assert_eq!(record["entry_index"], 0);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn reproduce_exits_zero_on_match() {
    let out = udg()
        .args(["reproduce", "--max-n", "6", "--seed", "3"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("ok"));
    assert!(!text.contains("MISMATCH"));
}

#[test]
fn reproduce_flags_divergence_with_exit_two() {
    // an inadequate family (just the two smallest members) inflates counts
    let dir = temp_dir("diverge");
    let fam = dir.join("weak.g6");
    std::fs::write(&fam, "C~\nDFw\n").unwrap();
    let out = udg()
        .args(["reproduce", "--max-n", "6", "--forbidden"])
        .arg(&fam)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("MISMATCH"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn derive_forbidden_five_vertices() {
    let out = udg()
        .args(["derive-forbidden", "--max-vertices", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let codes: Vec<&str> = std::str::from_utf8(&out.stdout)
        .unwrap()
        .lines()
        .filter(|l| !l.is_empty())
        .collect();
    assert_eq!(codes, vec!["C~", "DFw"]);
}

#[test]
fn maxdensity_with_jobs_and_checkpoint() {
    let dir = temp_dir("maxd");
    let out = udg()
        .args(["maxdensity", "--n", "7", "--jobs", "2", "--checkpoint"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("u_bar(7) = 12"), "{text}");
    assert!(dir.join("U_7_12.g6").exists());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn missing_inputs_exit_one() {
    let out = udg()
        .args([
            "reproduce",
            "--max-n",
            "3",
            "--forbidden",
            "/nonexistent/family.g6",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn job_count_does_not_change_reports() {
    let run = |jobs: &str| {
        let dir = temp_dir(&format!("jobs{jobs}"));
        let report = dir.join("r.jsonl");
        let out = udg()
            .args([
                "reproduce",
                "--max-n",
                "6",
                "--seed",
                "11",
                "--jobs",
                jobs,
                "--report",
            ])
            .arg(&report)
            .output()
            .unwrap();
        assert!(out.status.success());
        let text = std::fs::read_to_string(&report).unwrap();
        let _ = std::fs::remove_dir_all(&dir);
        // strip the timing field, everything else must be identical
        text.lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                if let Some(row) = v.get_mut("row") {
                    row["wall_ms"] = 0.into();
                }
                v.to_string()
            })
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(run("1"), run("2"));
}
