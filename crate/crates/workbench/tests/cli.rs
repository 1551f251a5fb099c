use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extcohom")).args(args).output().expect("binary runs")
}

#[test]
fn seven_term_exits_zero_and_prints_json() {
    let out = run(&["seven-term", "--preset", "cyclic(2,2)", "--module", "Z_2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "seven-term");
    assert_eq!(v["exact"], true);
}

#[test]
fn text_report() {
    let out =
        run(&["cohomology", "--preset", "heisenberg_mod(2)", "--module", "Z_2", "--degree", "2", "--report", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "H2(G,M) = Z_2 + Z_2 + Z_2\n");
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["seven-term", "--preset", "icosahedral", "--module", "Z"]).status.code(), Some(2));
    assert_eq!(run(&["seven-term", "--preset", "cyclic(2,2)", "--module", "Q"]).status.code(), Some(2));
    assert_eq!(run(&["seven-term", "--preset", "dihedral(4)", "--module", "Z_7:r=[[2]]"]).status.code(), Some(2));
    assert_eq!(
        run(&["cohomology", "--preset", "cyclic(2,2)", "--module", "Z", "--degree", "4"]).status.code(),
        Some(2)
    );
    let err = run(&["inspect", "--input", "/nonexistent/doc.json"]);
    assert_eq!(err.status.code(), Some(2));
}

#[test]
fn budget_overrun_exits_three() {
    let out = run(&["--budget", "1000", "seven-term", "--preset", "heisenberg_mod(3)", "--module", "Z_3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("size_budget_exceeded"));
}

#[test]
fn inspect_accepts_own_output_and_rejects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["seven-term", "--preset", "symmetric3", "--module", "sign"]);
    assert_eq!(out.status.code(), Some(0));
    let path = dir.path().join("report.json");
    std::fs::write(&path, &out.stdout).unwrap();
    assert_eq!(run(&["inspect", "--input", path.to_str().unwrap()]).status.code(), Some(0));

    let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let flipped = !v["joints"][0]["image_equals_kernel"].as_bool().unwrap();
    v["joints"][0]["image_equals_kernel"] = flipped.into();
    std::fs::write(&path, serde_json::to_vec(&v).unwrap()).unwrap();
    assert_eq!(run(&["inspect", "--input", path.to_str().unwrap()]).status.code(), Some(1));
}
