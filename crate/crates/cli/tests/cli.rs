//! End-to-end runs of the `dqp` binary: outputs, exit codes, dump round
//! trips and byte-stable output.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn dqp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dqp"))
        .args(args)
        .output()
        .expect("dqp runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn bracket_of_a_loop_arrow_and_an_arrow_on_the_triangle() {
    let o = dqp(&["bracket", "--table", "builtin:triangle", "w13", "v21"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1/2 v21*w13 (x) e1 - w23 (x) e1\n");
}

#[test]
fn bracket_expectations_decide_the_exit_code() {
    let want = "-e2 (x) e1 - 1/2 e2 (x) v12*v21 - 1/2 v21*v12 (x) e1";
    let ok = dqp(&[
        "bracket",
        "--table",
        "builtin:interval",
        "v12",
        "v21",
        "--expect",
        want,
    ]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).contains(": EQUAL"));
    let bad = dqp(&[
        "bracket",
        "--table",
        "builtin:interval",
        "v12",
        "v21",
        "--expect",
        "e2 (x) e1",
    ]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("NOT_EQUAL"));
    assert!(stdout(&bad).contains("witness:"));
}

#[test]
fn the_built_in_family_satisfies_its_conditions() {
    let o = dqp(&["check-conditions", "--family", "builtin:table1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("174/174 conditions hold, 0 fail\n"));
}

#[test]
fn the_triangle_is_quasi_poisson_on_every_arrow_triple() {
    let o = dqp(&["check-qp", "--table", "builtin:triangle"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("216/216 EQUAL, 0 NOT_EQUAL, 0 UNDECIDED\n"));
}

#[test]
fn moment_map_checks_report_undecided_without_the_expanded_strategy() {
    let full = dqp(&["check-moment", "--table", "builtin:triangle"]);
    assert_eq!(code(&full), 0);
    let weak = dqp(&[
        "check-moment",
        "--table",
        "builtin:triangle",
        "--strategy",
        "structural",
    ]);
    assert_eq!(code(&weak), 2);
    assert!(stdout(&weak).contains("UNDECIDED"));
}

fn round_trip(dir: &Path, name: &str) {
    let first = dqp(&[
        "build-boalch",
        "--table",
        &format!("builtin:{name}"),
        "--family",
        "builtin:table1",
        "--dump",
    ]);
    assert_eq!(code(&first), 0);
    let path = dir.join(format!("{name}.json"));
    fs::write(&path, &first.stdout).unwrap();
    let p = path.to_str().unwrap();
    let second = dqp(&[
        "build-boalch",
        "--quiver",
        p,
        "--table",
        p,
        "--family",
        p,
        "--dump",
    ]);
    assert_eq!(
        code(&second),
        0,
        "{}",
        String::from_utf8_lossy(&second.stderr)
    );
    assert_eq!(stdout(&first), stdout(&second), "{name}");
}

#[test]
fn dumps_read_back_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["interval", "triangle", "table1"] {
        round_trip(dir.path(), name);
    }
}

#[test]
fn dumped_tables_drive_the_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let d = dqp(&["build-boalch", "--table", "builtin:interval", "--dump"]);
    fs::write(&path, &d.stdout).unwrap();
    let p = path.to_str().unwrap();
    let a = dqp(&["bracket", "--table", p, "v12", "v21"]);
    let b = dqp(&["bracket", "--table", "builtin:interval", "v12", "v21"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn invalid_quivers_exit_with_one_and_bad_input_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"colors":[{"id":"c","part_order":[0,1],"partition":[[1],[1,2]],"vertices":[1,2]}],"n":3}"#,
    )
    .unwrap();
    let o = dqp(&["validate-quiver", "--quiver", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("overlapping-parts") || stdout(&o).contains("overlapping parts"));

    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(
        code(&dqp(&[
            "validate-quiver",
            "--quiver",
            garbage.to_str().unwrap()
        ])),
        3
    );
    assert_eq!(
        code(&dqp(&["bracket", "--table", "builtin:nope", "v12", "v21"])),
        3
    );
    assert_eq!(
        code(&dqp(&[
            "bracket",
            "--table",
            "builtin:interval",
            "v12",
            "x99"
        ])),
        3
    );
    assert_eq!(code(&dqp(&["no-such-command"])), 3);
    assert_eq!(code(&dqp(&["--help"])), 0);
}

#[test]
fn representations_satisfy_their_relations() {
    let cases: [&[&str]; 3] = [
        &["--dims", "1,2,3", "--seed", "2"],
        &["--dims", "2,2,2", "--seed", "1"],
        &["--dims", "1,1,1", "--trivial"],
    ];
    for args in cases {
        let mut all = vec!["rep-verify", "--table", "builtin:triangle"];
        all.extend_from_slice(args);
        let o = dqp(&all);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
        assert!(!stdout(&o).contains("NOT_EQUAL"));
    }
}

#[test]
fn representation_dumps_reload() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rep.json");
    let d = dqp(&[
        "rep-verify",
        "--table",
        "builtin:triangle",
        "--dims",
        "1,2,1",
        "--seed",
        "4",
        "--dump",
    ]);
    assert_eq!(code(&d), 0);
    fs::write(&path, &d.stdout).unwrap();
    let from_file = dqp(&[
        "rep-verify",
        "--table",
        "builtin:triangle",
        "--rep",
        path.to_str().unwrap(),
    ]);
    let direct = dqp(&[
        "rep-verify",
        "--table",
        "builtin:triangle",
        "--dims",
        "1,2,1",
        "--seed",
        "4",
    ]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(stdout(&from_file), stdout(&direct));
}

#[test]
fn search_finds_the_built_in_family() {
    let o = dqp(&["--format", "json", "search", "--n", "3"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["brute_force_rejections"], 0);
    assert_eq!(v["families"].as_array().unwrap().len(), 15);
}

#[test]
fn output_is_byte_stable_across_runs() {
    for args in [
        vec!["build-boalch", "--table", "builtin:triangle"],
        vec!["check-qp", "--table", "builtin:triangle", "--jobs", "4"],
        vec![
            "--format",
            "json",
            "check-moment",
            "--table",
            "builtin:triangle",
        ],
        vec!["verify-fixtures"],
        vec!["search", "--n", "3", "--limit", "3"],
    ] {
        let a = dqp(&args);
        let b = dqp(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
