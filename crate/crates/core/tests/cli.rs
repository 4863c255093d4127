use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_excedance"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn seq_altsum() {
    let o = run(&["seq", "altsum", "--count", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1, 1, 0, -2, 0\n");
}

#[test]
fn seq_json() {
    let o = run(&["seq", "bernoulli", "--count", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["values"],
        serde_json::json!(["1", "-1/2", "1/6", "0", "-1/30"])
    );
}

#[test]
fn dist_rows() {
    let o = run(&["dist", "2"]);
    assert_eq!(
        stdout(&o),
        "  k  count\n  0      1\n  1      1\nsum 2 = 2! = 2\n"
    );
    let o = run(&["dist", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("guard"));
}

#[test]
fn series_phi_at_two() {
    let o = run(&[
        "series", "phi", "--t", "2", "--order", "3", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["egf"], serde_json::json!(["1", "1", "3", "13"]));
}

#[test]
fn verify_text_table() {
    let o = run(&[
        "verify",
        "--claims",
        "C8-genocchi-relation,C5-parity",
        "--max-n",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("ID"));
    assert!(text.contains("n=3: lhs=-2 rhs=1"));
}

#[test]
fn verify_meta_toggle() {
    let with = run(&["verify", "--max-n", "2", "--format", "json"]);
    let without = run(&["verify", "--max-n", "2", "--format", "json", "--no-meta"]);
    assert!(stdout(&with).contains("\"meta\""));
    assert!(!stdout(&without).contains("\"meta\""));
}

#[test]
fn unknown_inputs_are_usage_errors() {
    for args in [
        &["nope"][..],
        &["verify", "--claims", "C0"],
        &["seq", "tangent", "--wat"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}
