use std::process::{Command, Output};

fn run(args: &[&str], env: Option<(&str, &str)>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_foldedchar"));
    cmd.args(args).env_remove("FOLDEDCHAR_MAX_DIM");
    if let Some((k, v)) = env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_single_case_passes() {
    let o = run(&["verify", "--case", "A3,\"(1 3)\",\"1,0,1\""], None);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(
        v["cases"][0]["case"]["lambda"],
        serde_json::json!([1, 0, 1])
    );
    assert_eq!(v["cases"][0]["orbits"], serde_json::json!([[1, 3], [2]]));
}

#[test]
fn verify_rejects_non_invariant_weight() {
    let o = run(&["verify", "--case", "A3,\"(1 3)\",\"1,0,0\""], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn verify_reports_failure_with_exit_1() {
    // a zero tolerance cannot be met, so the corollary check fails
    let o = run(&["verify", "--case", "A2,(1 2),1,1", "--tol", "0"], None);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ok"], false);
    assert_eq!(v["cases"][0]["corollary"]["ok"], false);
    assert!(v["cases"][0]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["ok"] == true));
}

#[test]
fn max_dim_from_environment() {
    let args = ["char", "--type", "A2", "--weight", "1,1"];
    assert_eq!(
        run(&args, Some(("FOLDEDCHAR_MAX_DIM", "5"))).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&args, Some(("FOLDEDCHAR_MAX_DIM", "8"))).status.code(),
        Some(0)
    );
    let o = run(
        &[
            "char",
            "--type",
            "A2",
            "--weight",
            "1,1",
            "--max-dim",
            "100",
        ],
        Some(("FOLDEDCHAR_MAX_DIM", "5")),
    );
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["verify"], None).status.code(), Some(2));
    assert_eq!(run(&["fold", "--type", "A3"], None).status.code(), Some(2));
    assert_eq!(
        run(&["char", "--type", "A2", "--weight", "1,x"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--catalog", "extended"], None)
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn table_output_for_verify() {
    let o = run(
        &[
            "verify",
            "--case",
            "D4,(1 3 4),0,1,0,0",
            "--format",
            "table",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.starts_with("PASS\tD4\t(1 3 4)\t(0,1,0,0) -> G2\tdim 28\tfolded 7\t"),
        "{out}"
    );
}

#[test]
fn non_dominant_weight_is_rejected() {
    let o = run(&["char", "--type", "A1", "--weight", "-1"], None);
    assert_eq!(o.status.code(), Some(2));
}
