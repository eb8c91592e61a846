use cliffzeta::record::{Kind, OutputRecord};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliffzeta")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn records(args: &[&str]) -> Vec<OutputRecord> {
    stdout(args).lines().map(|l| OutputRecord::from_json(l).unwrap()).collect()
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("cliffzeta-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn group_list_covers_the_catalogue() {
    let text = stdout(&["group", "list"]);
    for id in ["C2", "C4", "C3xC3", "H3", "H2", "M27", "Q8", "D4", "S3", "Dic3", "C3xS3", "H9"] {
        assert!(text.lines().any(|l| l.split_whitespace().next() == Some(id)), "missing {id}");
    }
}

#[test]
fn group_show_h3() {
    let text = stdout(&["group", "show", "H3"]);
    assert!(text.contains("order 27, p = 3"));
    assert!(text.contains("normal Z: |N| = 3, |G:N| = 9"));
}

#[test]
fn malformed_file_reports_its_line() {
    let path = temp_file("bad.grp", "3 1 2\ngamma 1 : 1 2\ngamma 2 : 2 1\nphi 2 1 : 7\n");
    let out = run(&["group", "load", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn text_format_round_trip_through_the_cli() {
    let text = stdout(&["group", "show", "Dic3", "--text"]);
    let path = temp_file("dic3.grp", &text);
    let from_file = records(&["compute", "zeta", "--file", path.to_str().unwrap(), "--json"]);
    let from_corpus = records(&["compute", "zeta", "--group", "Dic3", "--json"]);
    assert_eq!(from_file[0].series, from_corpus[0].series);
    assert!(stdout(&["group", "load", path.to_str().unwrap()]).contains("order 12, p = 3"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn compute_zeta_and_twist_zeta() {
    assert_eq!(stdout(&["compute", "zeta", "--group", "S3", "--normal", "C3"]), "zeta S3 over C3\n  2*1^-s + 2^-s\n");
    let rec = &records(&["compute", "twist-zeta", "--group", "H3", "--json"])[0];
    assert_eq!(rec.kind, Kind::TwistZeta);
    assert_eq!(rec.series, vec![(1, 1), (3, 2)]);
}

#[test]
fn invariants_list_classes_per_character() {
    let rec = &records(&["compute", "invariants", "--group", "H3", "--normal", "Z", "--json"])[0];
    assert_eq!(rec.invariants.len(), 3);
    let mut c: Vec<usize> = rec.invariants.iter().map(|r| r.c_id).collect();
    c.sort();
    assert_eq!(c, vec![0, 1, 2]);
}

#[test]
fn partial_series_sum_to_the_character_count() {
    let total: u64 = (0..2)
        .flat_map(|k| records(&["compute", "partial", "--group", "S3", "--K", &k.to_string(), "--json"]))
        .flat_map(|r| r.series.into_iter().map(|(_, c)| c))
        .sum();
    assert_eq!(total, 3);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["compute", "zeta", "--group", "S3", "--K", "0"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "zeta", "--group", "S3", "--normal", "G"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "partial", "--group", "S3"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "zeta"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "nothing"]).status.code(), Some(2));
}

#[test]
fn tower_fit() {
    let text = stdout(&["tower", "--family", "heisenberg", "--p", "3", "--levels", "3", "--fit", "--twist"]);
    assert!(text.contains("fit: (1 - t)/(1 - 3t)"), "{text}");
    let rec = &records(&["tower", "--family", "heisenberg", "--p", "2", "--levels", "3", "--fit", "--twist", "--json"])[0];
    let fit = rec.fit.as_ref().unwrap();
    assert_eq!(fit.numerator, vec!["1", "-1"]);
    assert_eq!(fit.denominator, vec![(1, 1)]);
}

#[test]
fn verify_reports_through_the_exit_code() {
    let out = run(&["verify", "schur"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS schur"));
    let rec = &records(&["verify", "completeness", "--json"])[0];
    assert!(rec.checks.iter().all(|c| c.passed));
}

#[test]
fn output_is_deterministic_with_workers() {
    let args = ["compute", "invariants", "--group", "C3^2:C4", "--json"];
    let one = Command::new(env!("CARGO_BIN_EXE_cliffzeta")).args(args).env("CLIFFZETA_THREADS", "1").output().unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_cliffzeta")).args(args).env("CLIFFZETA_THREADS", "4").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}
