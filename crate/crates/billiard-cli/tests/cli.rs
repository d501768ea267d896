//! End-to-end tests of the `billiard` binary: output bytes, exit codes,
//! and determinism, driven through real process invocations.

use std::path::Path;
use std::process::{Command, Output};

fn billiard() -> Command {
    Command::new(env!("CARGO_BIN_EXE_billiard"))
}

fn run(args: &[&str]) -> Output {
    billiard().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("utf-8 output")
}

fn stderr_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).expect("utf-8 diagnostics")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn complexity_square_emits_exact_rows() {
    let out = run(&["complexity", "--polygon", "square", "--max-n", "3"]);
    assert_eq!(code_of(&out), 0, "{}", stderr_of(&out));
    assert_eq!(stdout_of(&out), "n,p,s\n1,4,8\n2,12,16\n3,28,\n");
}

#[test]
fn complexity_triangle_single_row_has_blank_growth() {
    let out = run(&["complexity", "--polygon", "equilateral", "--max-n", "1"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "n,p,s\n1,3,\n");
}

#[test]
fn complexity_json_carries_the_same_numbers() {
    let out = run(&[
        "complexity",
        "--polygon",
        "square",
        "--max-n",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code_of(&out), 0);
    let rows: serde_json::Value = serde_json::from_str(stdout_of(&out)).expect("valid json");
    assert_eq!(rows.as_array().map(Vec::len), Some(2));
    assert_eq!(rows[0]["n"], 1);
    assert_eq!(rows[0]["p"], 4);
    assert_eq!(rows[0]["s"], 8);
    assert_eq!(rows[1]["p"], 12);
    assert!(rows[1]["s"].is_null(), "last row has no growth value");
}

#[test]
fn verify_square_reports_every_identity_as_holding() {
    let out = run(&["verify", "--polygon", "square", "--max-n", "6"]);
    assert_eq!(code_of(&out), 0, "{}", stderr_of(&out));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("check,n,lhs,rhs,ok"));
    let mut kinds = [0usize; 3];
    for line in lines {
        assert!(line.ends_with(",true"), "failing row: {line}");
        match line.split(',').next().unwrap() {
            "census" => kinds[0] += 1,
            "difference" => kinds[1] += 1,
            "cell" => kinds[2] += 1,
            other => panic!("unexpected check kind {other}"),
        }
    }
    assert_eq!(kinds, [6, 6, 7], "census 1..=6, difference 1..=6, cell 0..=6");
}

#[test]
fn verify_random_quad_is_seeded_and_clean() {
    let args = [
        "verify",
        "--polygon",
        "random-quad",
        "--seed",
        "11",
        "--max-n",
        "5",
    ];
    let first = run(&args);
    assert_eq!(code_of(&first), 0, "{}", stderr_of(&first));
    let second = run(&args);
    assert_eq!(stdout_of(&first), stdout_of(&second), "same seed, same bytes");
}

#[test]
fn diagonals_square_census_table() {
    let out = run(&["diagonals", "--polygon", "square", "--max-links", "2"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        stdout_of(&out),
        "links,count,cumulative\n0,4,4\n1,4,8\n2,8,16\n"
    );
}

#[test]
fn bispecial_square_length_one_rows() {
    let out = run(&["bispecial", "--polygon", "square", "--n", "1"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        stdout_of(&out),
        "n,word,m_l,m_r,m_b,gd,ok\n\
         1,0,3,3,7,2,true\n\
         1,1,3,3,7,2,true\n\
         1,2,3,3,7,2,true\n\
         1,3,3,3,7,2,true\n"
    );
}

#[test]
fn bispecial_empty_word_row_is_blank_in_the_word_column() {
    let out = run(&["bispecial", "--polygon", "square", "--n", "0"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "n,word,m_l,m_r,m_b,gd,ok\n0,,4,4,12,4,true\n");
}

#[test]
fn asymptotics_walks_a_geometric_grid() {
    let out = run(&[
        "asymptotics",
        "--case",
        "square",
        "--max-n",
        "2000",
        "--tol",
        "0.05",
    ]);
    assert_eq!(code_of(&out), 0, "{}", stderr_of(&out));
    let text = stdout_of(&out);
    let ns: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(ns, ["250", "500", "1000", "2000"]);
    let final_dev: f64 = text
        .lines()
        .last()
        .unwrap()
        .rsplit(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(final_dev < 0.05, "final deviation {final_dev}");
}

#[test]
fn asymptotics_tolerance_failure_still_emits_the_table() {
    let out = run(&[
        "asymptotics",
        "--case",
        "square",
        "--max-n",
        "800",
        "--tol",
        "0.00001",
    ]);
    assert_eq!(code_of(&out), 1);
    assert!(stdout_of(&out).lines().count() > 1, "table must still print");
    assert!(stderr_of(&out).contains("tolerance"));
}

#[test]
fn asymptotics_rejects_cases_without_a_constant() {
    let out = run(&["asymptotics", "--case", "hexagon", "--max-n", "100"]);
    assert_eq!(code_of(&out), 2);
}

#[test]
fn unknown_polygon_is_an_input_error() {
    let out = run(&["complexity", "--polygon", "heptagon", "--max-n", "2"]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("unknown polygon"));
}

#[test]
fn polygon_source_is_required_and_exclusive() {
    let missing = run(&["complexity", "--max-n", "2"]);
    assert_eq!(code_of(&missing), 2);
    let both = run(&[
        "complexity",
        "--polygon",
        "square",
        "--polygon-file",
        "x.poly",
        "--max-n",
        "2",
    ]);
    assert_eq!(code_of(&both), 2);
}

#[test]
fn polygon_file_matches_the_catalog_square() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("unit-square.poly");
    std::fs::write(&path, "V 0 0\nV 1 0\nV 1 1\nV 0 1\n").unwrap();
    let from_file = run(&[
        "complexity",
        "--polygon-file",
        path.to_str().unwrap(),
        "--max-n",
        "4",
    ]);
    assert_eq!(code_of(&from_file), 0, "{}", stderr_of(&from_file));
    let from_catalog = run(&["complexity", "--polygon", "square", "--max-n", "4"]);
    assert_eq!(stdout_of(&from_file), stdout_of(&from_catalog));
}

#[test]
fn degenerate_polygon_file_is_rejected_with_the_violation() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("flat.poly");
    std::fs::write(&path, "V 0 0\nV 1 0\nV 2 0\nV 0 1\n").unwrap();
    let out = run(&[
        "complexity",
        "--polygon-file",
        path.to_str().unwrap(),
        "--max-n",
        "2",
    ]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("collinear"), "{}", stderr_of(&out));
}

#[test]
fn word_cap_env_var_stops_with_resource_code() {
    let out = billiard()
        .args(["complexity", "--polygon", "square", "--max-n", "6"])
        .env("BILLIARD_MAX_WORDS", "3")
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 3);
    assert!(stderr_of(&out).contains("cap"));
}

#[test]
fn malformed_word_cap_is_an_input_error() {
    let out = billiard()
        .args(["complexity", "--polygon", "square", "--max-n", "2"])
        .env("BILLIARD_MAX_WORDS", "plenty")
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 2);
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("table.csv");
    let to_file = run(&[
        "diagonals",
        "--polygon",
        "equilateral",
        "--max-links",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&to_file), 0);
    assert!(stdout_of(&to_file).is_empty(), "quiet when writing a file");
    let direct = run(&["diagonals", "--polygon", "equilateral", "--max-links", "4"]);
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        stdout_of(&direct)
    );
}

#[test]
fn thread_count_never_changes_the_output() {
    let single = run(&["complexity", "--polygon", "half-equilateral", "--max-n", "5"]);
    let multi = run(&[
        "complexity",
        "--polygon",
        "half-equilateral",
        "--max-n",
        "5",
        "--threads",
        "3",
    ]);
    assert_eq!(code_of(&single), 0);
    assert_eq!(code_of(&multi), 0);
    assert_eq!(stdout_of(&single), stdout_of(&multi));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for format in ["csv", "json"] {
        let args = [
            "verify",
            "--polygon",
            "right-isosceles",
            "--max-n",
            "4",
            "--format",
            format,
        ];
        let a = run(&args);
        let b = run(&args);
        assert_eq!(code_of(&a), 0);
        assert_eq!(stdout_of(&a), stdout_of(&b), "{format} output drifted");
    }
}

#[test]
fn help_lists_every_subcommand() {
    let out = run(&["--help"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    for sub in ["complexity", "verify", "diagonals", "bispecial", "asymptotics"] {
        assert!(text.contains(sub), "help omits {sub}");
    }
}

/// Guards against accidentally resolving relative --out paths somewhere
/// surprising: the write must land exactly where the caller said.
#[test]
fn out_flag_respects_exact_path() {
    let dir = tempfile::tempdir().expect("temp dir");
    let nested = dir.path().join("missing-dir").join("table.csv");
    let out = run(&[
        "complexity",
        "--polygon",
        "square",
        "--max-n",
        "2",
        "--out",
        nested.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 2, "missing parent directory is an input error");
    assert!(!Path::new(&nested).exists());
}
