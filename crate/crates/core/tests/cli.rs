use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use rewind_lab::metrics::{gold_outcomes, rewind_outcomes};
use rewind_lab::report;

fn sample_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/sample")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rewind-lab"))
        .env_remove("REWIND_LAB_DATA_DIR")
        .arg("--data-dir")
        .arg(sample_dir())
        .args(args)
        .output()
        .unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).unwrap()
}

#[test]
fn every_subcommand_runs_on_the_sample() {
    for args in [
        vec!["ingest"],
        vec!["standings"],
        vec!["standings", "--as-of", "2024-11-05"],
        vec!["rewind"],
        vec!["rewind", "--reference-seed", "5"],
        vec!["rewind", "--seed-candidates", "5,6,7"],
        vec!["gold"],
        vec!["compare", "--team", "T06"],
        vec!["simulate", "--as-of", "2024-11-20", "--team", "T06", "--replicas", "300"],
        vec!["lottery"],
        vec!["lottery", "--draws", "500", "--seed", "3"],
    ] {
        for format in ["text", "csv", "json"] {
            let mut full = vec!["--format", format];
            full.extend_from_slice(&args);
            let out = run(&full);
            assert!(out.status.success(), "{full:?}: {}", String::from_utf8_lossy(&out.stderr));
            assert!(!out.stdout.is_empty());
            assert!(out.stderr.is_empty(), "{full:?} wrote to stderr");
        }
    }
}

#[test]
fn rewind_output_matches_the_library() {
    let dir = sample_dir();
    let (doc, log) = report::load_inputs(&dir.join("league.toml"), &dir.join("games.csv")).unwrap();
    let outcomes = rewind_outcomes(&log).unwrap();
    let v = json(&["rewind"]);
    let rows = v[0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), report::eligibility(&doc, &log).len());
    for row in rows {
        let o = outcomes.iter().find(|o| o.team.as_str() == row["Team"]).unwrap();
        assert_eq!(row["REWIND Score"], o.score);
        assert_eq!(row["REWIND Wins"], o.rewind_wins);
        let date = o.rewind_date.map(|e| e.date.to_string());
        assert_eq!(row["REWIND Date"].as_str().map(str::to_string), date);
    }
}

#[test]
fn gold_output_matches_the_library() {
    let dir = sample_dir();
    let (_, log) = report::load_inputs(&dir.join("league.toml"), &dir.join("games.csv")).unwrap();
    let gold = gold_outcomes(&log).unwrap();
    for row in json(&["gold"])[0]["rows"].as_array().unwrap() {
        let g = gold.iter().find(|g| g.team.as_str() == row["Team"]).unwrap();
        assert_eq!(row["Gold Score"], g.score);
    }
}

#[test]
fn csv_output_has_a_header_and_iso_dates() {
    let out = ok(&["--format", "csv", "rewind"]);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("Actual Rank,Team,Record,REWIND Date"));
    assert!(lines.next().unwrap().contains(",2024-"));
}

#[test]
fn same_seed_same_lottery() {
    let a = ok(&["lottery", "--seed", "11"]);
    assert_eq!(a, ok(&["lottery", "--seed", "11"]));
    let sim = ["simulate", "--as-of", "2024-11-15", "--team", "T15", "--replicas", "500", "--seed", "4"];
    assert_eq!(ok(&sim), ok(&sim));
}

#[test]
fn errors_go_to_stderr_with_a_failing_exit_code() {
    for args in [
        vec!["compare", "--team", "NOPE"],
        vec!["simulate", "--as-of", "2030-01-01", "--team", "T06"],
        vec!["rewind", "--reference-seed", "40"],
        vec!["lottery", "--odds", "1,2"],
        vec!["--log", "/definitely/not/here.csv", "gold"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn paths_are_required_without_a_data_dir() {
    let out =
        Command::new(env!("CARGO_BIN_EXE_rewind-lab")).env_remove("REWIND_LAB_DATA_DIR").arg("gold").output().unwrap();
    assert!(!out.status.success());
    let with_env = Command::new(env!("CARGO_BIN_EXE_rewind-lab"))
        .env("REWIND_LAB_DATA_DIR", sample_dir())
        .arg("gold")
        .output()
        .unwrap();
    assert!(with_env.status.success());
}

#[test]
fn ingest_snapshot_feeds_later_commands() {
    let tmp = tempfile::tempdir().unwrap();
    let snap = tmp.path().join("season.snap");
    let out = run(&["ingest", "--out", snap.to_str().unwrap()]);
    assert!(out.status.success());
    let from_csv = ok(&["rewind"]);
    let from_snap = ok(&["--log", snap.to_str().unwrap(), "rewind"]);
    assert_eq!(from_csv, from_snap);
}
