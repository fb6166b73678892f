use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn rpog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rpog")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn ex3_reports_groupoid_but_not_schreier() {
    let o = rpog(&["example", "Ex3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("schreier: NO (witness (5,1/2)-(1,1/2)=(5,1) is not positive)"), "{text}");
    assert!(text.contains("groupoid: YES"), "{text}");
}

#[test]
fn s4_counterexample_shows_conjugation_witness() {
    let o = rpog(&["example", "S4_counterexample"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("preordered: NO (witness (13)(12)(34)(13)=(32)(14))"));
}

#[test]
fn every_example_matches_its_expectation() {
    let o = rpog(&["example", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("MISMATCH"));
    for id in ["Ex1", "Ex2", "Ex4", "Z_N", "S4_A4", "ideal_determined"] {
        assert!(stdout(&o).contains(&format!("{id}: ")), "{id}");
    }
}

#[test]
fn modular_from_file() {
    let o = rpog(&["check", "modular", &data("S4_A4.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("modular: YES (4-element lattice)"), "{}", stdout(&o));
}

#[test]
fn mutated_table_fails_associativity() {
    let o = rpog(&["validate", &data("S4_mutated.json")]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("is an rpo group: NO (witness ("), "{text}");
    assert!(text.contains(" but "), "{text}");
}

#[test]
fn parse_errors_carry_position_or_field() {
    let o = rpog(&["validate", &data("truncated.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 5"), "{}", stderr(&o));

    let o = rpog(&["validate", &data("wrong_field.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("field `cone`"), "{}", stderr(&o));

    let o = rpog(&["validate", "no/such/file.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = rpog(&["example", "Ex9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn guard_has_its_own_exit_code() {
    let o = rpog(&["check", "modular", "S4_A4", "--max-order", "12"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("limit 12"));
    assert_eq!(rpog(&["census", "25"]).status.code(), Some(3));
}

#[test]
fn wrong_kind_is_an_error() {
    let o = rpog(&["check", "groupoid", "S3"]);
    assert_eq!(o.status.code(), Some(4));
    let o = rpog(&["check", "smith", "S3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn expect_flag_sets_the_exit_code() {
    assert_eq!(rpog(&["check", "groupoid", "Ex2", "--expect", "no"]).status.code(), Some(0));
    let o = rpog(&["check", "groupoid", "Ex2", "--expect", "yes"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("σ(1,0)=(-1,1)"));
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn finite_checks() {
    let o = rpog(&["check", "schreier", &data("klein_point.json")]);
    assert!(stdout(&o).contains("schreier: YES"), "{}", stdout(&o));
    let o = rpog(&["check", "s-center", "S3"]);
    assert!(stdout(&o).contains("center {Id}"), "{}", stdout(&o));
    let o = rpog(&["check", "s-center", "Z_N"]);
    assert!(stdout(&o).contains("s-center: NO (witness 1 is positive but -1=-1 is not)"), "{}", stdout(&o));
    let o = rpog(&["check", "axioms", &data("C4_half.json")]);
    assert_eq!(stdout(&o).matches(": YES").count(), 6, "{}", stdout(&o));
    let o = rpog(&["check", "action-rep", "C3", "C2_full"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("action-rep: YES"), "{}", stdout(&o));
    let o = rpog(&["check", "huq", &data("s3_center.json"), &data("s3_center.json")]);
    assert!(stdout(&o).contains("huq: YES"), "{}", stdout(&o));
}

#[test]
fn json_mirrors_the_verdict() {
    let o = rpog(&["--format", "json", "check", "preordered", "S4_P"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let line = &v["sections"][0]["lines"][0];
    assert_eq!(line["check"], "preordered");
    assert_eq!(line["verdict"]["holds"], false);
    assert_eq!(line["verdict"]["witness"]["law"], "conjugation-closure");
}

#[test]
fn census_small() {
    let o = rpog(&["census", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().next().unwrap().contains("schreier"));
}

#[test]
fn output_is_deterministic() {
    let runs: [&[&str]; 2] = [&["--seed", "7", "example", "Ex4"], &["--seed", "7", "check", "groupoid", "Ex1"]];
    for args in runs {
        let (a, b) = (rpog(args), rpog(args));
        assert_eq!(a.stdout, b.stdout);
    }
    let a = rpog(&["--samples", "50", "example", "Ex1"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
}
