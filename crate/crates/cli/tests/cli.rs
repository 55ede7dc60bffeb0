use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn instances() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../instances")
}

fn holocount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holocount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn example(name: &str) -> String {
    instances().join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("holocount-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn counts_first_example() {
    let o = holocount(&["count", &example("example1.holo")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("count = 26\n"), "{out}");
    assert!(out.contains("alpha = 64\n"));
    assert!(out.contains("beta = 81/256\n"));
}

#[test]
fn counts_second_example() {
    let o = holocount(&["count", &example("example2.holo")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("count = 14\n"));
}

#[test]
fn oracles_agree_on_first_example() {
    let o = holocount(&[
        "count",
        "--oracle",
        "both",
        "--parallel",
        &example("example1.holo"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("contraction = 26\n"));
    assert!(out.contains("sat = 26\n"));
    assert!(out.contains("agree = yes\n"));
}

#[test]
fn json_report() {
    let o = holocount(&[
        "count",
        "--json",
        "--emit-matrix",
        "--order-source",
        "file",
        &example("example1.holo"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["count"], "26");
    assert_eq!(v["alpha"], "64");
    assert_eq!(v["matrix"][0][10], "-1/3");
    assert_eq!(v["order"][11], "12");
}

#[test]
fn matrix_in_file_order() {
    let o = holocount(&[
        "matrix",
        "--order-source",
        "file",
        &example("example2.holo"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let first = out.lines().next().unwrap();
    assert_eq!(first, "0\t1\t-1\t1\t0\t0\t0\t0\t0\t0\t-1/3\t-1/3");
    assert_eq!(out.lines().filter(|l| !l.is_empty()).count(), 12);
}

#[test]
fn curve_and_start_edge() {
    let o = holocount(&["curve", &example("example1.holo")]);
    assert!(stdout(&o).contains("order = 1 2 3 4 5 6 7 8 9 10 11 12\n"));
    let o = holocount(&[
        "count",
        "--start-edge",
        "5",
        "--reverse",
        &example("example1.holo"),
    ]);
    let out = stdout(&o);
    assert!(out.starts_with("count = 26\n"));
    assert!(
        out.contains("order = 5 4 3 2 1 12 11 10 9 8 7 6\n"),
        "{out}"
    );
}

#[test]
fn validate_file_order() {
    let o = holocount(&[
        "validate",
        "--order-source",
        "file",
        &example("example1.holo"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid: "));
}

#[test]
fn invalid_file_order_is_reported() {
    let text = std::fs::read_to_string(instances().join("example1.holo"))
        .unwrap()
        .replace(
            "order 1 2 3 4 5 6 7 8 9 10 11 12",
            "order 1 3 2 4 5 6 7 8 9 10 11 12",
        );
    let path = temp_file("swapped.holo", &text);
    let o = holocount(&["validate", "--order-source", "file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid: "));
    let o = holocount(&["count", "--order-source", "file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_two() {
    let path = temp_file(
        "dangling.holo",
        "var x\nclause c\nedge 1 x d\nrot x 1\nrot c 1\n",
    );
    let o = holocount(&["count", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    let o = holocount(&["count", "/nonexistent/file.holo"]);
    assert_eq!(o.status.code(), Some(2));
    let o = holocount(&[
        "count",
        "--order-source",
        "file",
        "--reverse",
        &example("example1.holo"),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unrealizable_exits_three() {
    let text = std::fs::read_to_string(instances().join("example1.holo"))
        .unwrap()
        .replace("basis b2", "basis identity");
    let path = temp_file("raw.holo", &text);
    let o = holocount(&["count", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not realizable"));
    let odd = temp_file(
        "odd.holo",
        "var a\nvar b\nvar c\nclause s\nedge 1 a s\nedge 2 b s\nedge 3 c s\nrot a 1\nrot b 2\nrot c 3\nrot s 1 2 3\n",
    );
    let o = holocount(&["count", odd.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let o = holocount(&["oracle", odd.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sat = 6\n"));
}

#[test]
fn forests_command() {
    let o = holocount(&["forests", "--check", &example("triangle.graph")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "forests = 16\nenumerated = 16\n");
    let o = holocount(&["forests", &example("example1.holo")]);
    assert_eq!(o.status.code(), Some(2));
}
