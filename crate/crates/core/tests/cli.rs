use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use recouple::exactnum::SqrtRational;
use serde_json::Value;

fn recouple(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recouple")).args(args).output().expect("spawn recouple")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn json_lines(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn wigner_examples() {
    for (args, want) in [
        (&["wigner", "6j", "0", "1", "1", "0", "1", "1"][..], "1/3"),
        (&["wigner", "sq9j", "1", "1", "0", "1", "1", "0", "0", "0", "0"][..], "1/3"),
        (&["wigner", "cg", "1/2", "1/2", "1/2", "-1/2", "0", "0"][..], "+(1/1)·sqrt(1/2)"),
        (&["wigner", "--twice", "6j", "0", "2", "2", "0", "2", "2"][..], "1/3"),
    ] {
        let o = recouple(args);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o).lines().next(), Some(want), "{args:?}");
    }
}

#[test]
fn wigner_bad_arguments_exit_2() {
    for args in [&["wigner", "6j", "0", "1", "1"][..], &["wigner", "6j", "0", "1", "1", "0", "1", "x"], &["wigner", "12j", "0"]] {
        assert_eq!(recouple(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unknown_suite_exit_2() {
    let o = recouple(&["verify", "beryllium"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("beryllium"));
}

#[test]
fn verify_radial_reports_pass() {
    let o = recouple(&["verify", "radial"]);
    assert!(o.status.success());
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["passed"], true);
}

#[test]
fn two_electron_ground_state_is_five_eighths_z() {
    let o = recouple(&["matel", config("two_electron_1s2.json").to_str().unwrap()]);
    assert!(o.status.success());
    let rows = json_lines(&stdout(&o));
    assert_eq!(rows.len(), 1);
    let total = rows[0]["total"].as_f64().unwrap();
    assert!((total - 1.25).abs() < 1e-8, "{total}");
}

#[test]
fn e_li_job_runs_end_to_end() {
    let o = recouple(&["matel", config("e_li.json").to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = json_lines(&stdout(&o));
    // 3 channels squared times 9 terms
    assert_eq!(rows.len(), 81);
    assert!(rows.iter().all(|r| r["total"].as_f64().is_some_and(f64::is_finite)));
    let labels: Vec<(String, String)> = rows.iter().map(|r| (r["bra"].as_str().unwrap().into(), r["ket"].as_str().unwrap().into())).collect();
    let mut sorted = labels.clone();
    sorted.sort();
    assert_eq!(labels, sorted);
}

#[test]
fn exact_strings_reparse_to_the_printed_floats() {
    let o = recouple(&["matel", config("e_he.json").to_str().unwrap()]);
    assert!(o.status.success());
    let mut seen = 0;
    for row in json_lines(&stdout(&o)) {
        for t in row["terms"].as_array().unwrap() {
            let text = t["exact"].as_str().expect("exact mode");
            let v: SqrtRational = text.parse().unwrap();
            assert_eq!(v.to_string(), text);
            assert!((v.to_f64().unwrap() - t["angular"].as_f64().unwrap()).abs() < 1e-14);
            seen += 1;
        }
    }
    assert!(seen > 0);
}

fn write_job(dir: &Path, body: &str) -> PathBuf {
    let p = dir.join("job.json");
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn empty_channel_list_gives_empty_table() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_job(dir.path(), r#"{"system": "e_he", "channels": []}"#);
    let o = recouple(&["matel", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn invalid_channel_names_the_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_job(
        dir.path(),
        r#"{"system": "e_he", "channels": [
            {"id": "bad", "k": 1.0, "l0": 0, "target": [{"n": 2, "l": 2}, {"n": 2, "l": 2}], "l": 6, "L": 6, "s": 0, "S": 1}
        ]}"#,
    );
    let o = recouple(&["matel", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad") && err.contains("(l1 l2) l"), "{err}");
}

#[test]
fn unknown_config_key_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_job(dir.path(), r#"{"system": "e_he", "channels": [], "colour": "blue"}"#);
    assert_eq!(recouple(&["matel", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn csv_output_has_header() {
    let dir = tempfile::tempdir().unwrap();
    let body = std::fs::read_to_string(config("two_electron_1s2.json")).unwrap().replacen('{', r#"{"output": "csv","#, 1);
    let p = write_job(dir.path(), &body);
    let o = recouple(&["matel", p.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("bra,ket,term,total,breakdown"));
    assert!(lines.next().unwrap().starts_with("1s2,1s2,v01_direct,1.25"));
}

#[test]
fn table_orbital_matches_hydrogenic() {
    let dir = tempfile::tempdir().unwrap();
    let mut table = String::from("# r P(r)\n");
    for i in 0..=20000 {
        let r = 1e-6 + f64::from(i) * 0.002;
        table += &format!("{r} {}\n", recouple::radial::hydrogenic_value(1, 0, 2.0, r));
    }
    std::fs::write(dir.path().join("1s.dat"), table).unwrap();
    let p = write_job(
        dir.path(),
        r#"{"Z": 2.0, "orbitals": [{"family": "table", "n": 1, "l": 0, "file": "1s.dat"}],
            "requests": [{"kind": "slater", "lambda": 0, "functions": [{"n": 1, "l": 0}, {"n": 1, "l": 0}, {"n": 1, "l": 0}, {"n": 1, "l": 0}]}]}"#,
    );
    let o = recouple(&["radial", p.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_lines(&stdout(&o))[0]["value"].as_f64().unwrap();
    assert!((v - 1.25).abs() < 1e-4, "{v}");
}

#[test]
fn graph_list_and_eval() {
    let o = recouple(&["graph", "list"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("two_electron_direct"));
    let o = recouple(&["graph", "eval", "two_electron_direct", "--set", "la'=0", "--set", "lb'=0", "--set", "la=0", "--set", "lb=0", "--set", "l=0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // exact value, then float
    assert_eq!(stdout(&o).lines().next(), Some("1\t1"));
}
