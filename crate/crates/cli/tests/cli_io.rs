//! Command-line behavior: exit codes, formats, determinism, env overrides.

use std::io::Write;
use std::process::{Command, Stdio};

fn supvar() -> Command {
    Command::new(env!("CARGO_BIN_EXE_supvar"))
}

fn run_with_stdin(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = supvar()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn supvar");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

const P5: &str = r#"{"n":5,"types":[[1],[5],[1,2],[2,3],[3,4],[4,5]]}"#;

#[test]
fn classify_reports_the_running_example() {
    let (code, stdout, _) =
        run_with_stdin(&["--samples", "16", "--format", "text", "classify"], P5);
    assert_eq!(code, 0);
    assert!(stdout.contains("verdict: exact"));
    assert!(stdout.contains("variety: V(x1*x5)"));
}

#[test]
fn classify_json_is_deterministic() {
    let (c1, out1, _) = run_with_stdin(&["--samples", "8", "classify"], P5);
    let (c2, out2, _) = run_with_stdin(&["--samples", "8", "classify"], P5);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(out1, out2, "same seed and config must give identical bytes");
    let v: serde_json::Value = serde_json::from_str(out1.trim()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verdict"], "exact");
    assert_eq!(v["variety"], "V(x1*x5)");
    assert_eq!(v["seed"], 42);
}

#[test]
fn bad_input_exits_2() {
    let (code, _, stderr) = run_with_stdin(&["classify"], "not json");
    assert_eq!(code, 2);
    assert!(stderr.contains("error"));
    // A non-minimal type set is also rejected as bad input.
    let (code, _, _) = run_with_stdin(&["classify"], r#"{"n":2,"types":[[1,2]]}"#);
    assert_eq!(code, 2);
    // Wrong point dimension.
    let (code, _, _) = run_with_stdin(
        &["membership", "--point", "1,2", "--prime", "101"],
        P5,
    );
    assert_eq!(code, 2);
}

#[test]
fn cap_exceeded_exits_3() {
    let (code, _, stderr) =
        run_with_stdin(&["--rank-cap", "3", "--samples", "4", "classify"], P5);
    assert_eq!(code, 3, "stderr: {stderr}");
}

#[test]
fn membership_prints_boolean() {
    let ci = r#"{"n":2,"types":[[1],[2]]}"#;
    let (code, stdout, _) = run_with_stdin(
        &["membership", "--point", "1,1", "--prime", "101"],
        ci,
    );
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "false");
    let (_, stdout, _) = run_with_stdin(
        &["membership", "--point", "0,0", "--prime", "101"],
        ci,
    );
    assert_eq!(stdout.trim(), "true");
}

#[test]
fn enumerate_streams_ndjson() {
    let c6 = r#"{"n":6,"edges":[[1,2],[2,3],[3,4],[4,5],[5,6],[6,1]]}"#;
    let (code, stdout, _) = run_with_stdin(&["enumerate"], c6);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.trim().lines().collect();
    assert_eq!(lines.len(), 64);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["n"], 6);
    }
}

#[test]
fn taylor_dot_and_json() {
    let ci = r#"{"n":2,"types":[[1],[2]]}"#;
    let (code, stdout, _) = run_with_stdin(&["--format", "dot", "taylor"], ci);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("digraph taylor {"));
    assert!(stdout.contains("h1"));
    let (code, stdout, _) = run_with_stdin(&["taylor"], ci);
    assert_eq!(code, 0);
    assert!(stdout.contains(r#""kind":"h""#));
}

#[test]
fn family_emits_ideal_and_expectation() {
    let out = supvar()
        .args(["family", "cycle", "--n", "6"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(
        String::from_utf8_lossy(&out.stdout).trim(),
    )
    .unwrap();
    assert_eq!(v["expected"], "V(x1*x3*x5+x2*x4*x6)");
    assert_eq!(v["ideal"]["n"], 6);

    let out = supvar()
        .args(["family", "wt", "--a", "2", "--b", "3"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(
        String::from_utf8_lossy(&out.stdout).trim(),
    )
    .unwrap();
    assert_eq!(v["expected"], "V(x4,x5) union V(x6,x7,x8)");
}

#[test]
fn env_overrides_are_honored() {
    let mut cmd = supvar();
    cmd.env("SUPVAR_SAMPLES", "4").env("SUPVAR_SEED", "7");
    cmd.args(["classify"]);
    cmd.stdin(Stdio::piped()).stdout(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    child.stdin.as_mut().unwrap().write_all(P5.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let v: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stdout).trim()).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["samples"][0]["on_tested"], 4);
}

#[test]
fn out_file_is_written() {
    let dir = std::env::temp_dir().join("supvar-test-out");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let _ = std::fs::remove_file(&path);
    let (code, stdout, _) = run_with_stdin(
        &["--samples", "4", "--out", path.to_str().unwrap(), "classify"],
        P5,
    );
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"verdict\""));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn verify_theorem_spot_suite_passes() {
    let out = supvar()
        .args(["--samples", "8", "verify-theorem", "a"])
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("graph 41 [C] dashed-free"));
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 66);
}

#[test]
fn verify_theorem_delta_passes() {
    let out = supvar()
        .args(["--samples", "24", "verify-theorem", "delta", "--n", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS stacked-simplex n=3"));
}
