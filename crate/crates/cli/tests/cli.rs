use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_galfw"))
}

fn manifest(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn galfw")
}

fn spec(name: &str) -> String {
    manifest("specs").join(name).display().to_string()
}

/// `(subcommand, spec, extra flags, golden file)`.
const GOLDEN: [(&str, &str, &[&str], &str); 5] = [
    ("frame", "line.toml", &[], "line_frame.csv"),
    ("frame", "cubic.toml", &[], "cubic_frame.csv"),
    ("frame", "helix.toml", &[], "helix_frame.csv"),
    (
        "transport",
        "cubic.toml",
        &["--step", "0.02"],
        "cubic_transport.csv",
    ),
    (
        "transport",
        "helix.toml",
        &["--step", "0.05"],
        "helix_transport.csv",
    ),
];

#[test]
fn golden_outputs_are_reproduced() {
    for (cmd, s, extra, golden) in GOLDEN {
        let path = spec(s);
        let mut args = vec![cmd, "--spec", path.as_str()];
        args.extend_from_slice(extra);
        let out = run(&args);
        assert!(
            out.status.success(),
            "{cmd} {s}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let expected = std::fs::read(manifest("tests/golden").join(golden)).unwrap();
        assert!(out.stdout == expected, "{golden} differs");
    }
}

#[test]
fn check_exit_codes() {
    assert_eq!(
        run(&["check", "--spec", &spec("line.toml")]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["check", "--spec", &spec("cubic.toml")]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["check", "--spec", "/nonexistent/spec.toml"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn input_errors_exit_2_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(
        &bad,
        "[curve]\nkind = \"polynomial\"\ny = [0]\nz = [0]\ndomain = [0, 1]\ncolour = 1\n",
    )
    .unwrap();
    let out = run(&["frame", "--spec", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));

    let out = run(&["frame", "--spec", &spec("line.toml"), "--samples", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("params.samples"));

    let out = run(&["transport", "--spec", &spec("line.toml")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_check_document() {
    let out = run(&["check", "--spec", &spec("cubic.toml")]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["command"], "check");
    assert_eq!(doc["passed"], false);
    let entries = doc["entries"].as_array().unwrap();
    let fr = entries
        .iter()
        .find(|e| e["name"] == "frenet non-rotating")
        .unwrap();
    assert_eq!(fr["pass"], false);
    assert!(fr["value"].as_f64().unwrap() >= 2.0);
}

#[test]
fn transport_summary_goes_to_stderr_or_json() {
    let out = run(&["transport", "--spec", &spec("helix.toml")]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("max_deviation = ") && err.contains("feasible = false"),
        "{err}"
    );

    let out = run(&[
        "transport",
        "--spec",
        &spec("helix.toml"),
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(out.stderr.is_empty());
    assert_eq!(doc["summary"]["feasible"], false);
    assert!(doc["summary"]["max_deviation"].as_f64().unwrap() < 1e-8);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 1049);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("frame.csv");
    let status = run(&[
        "frame",
        "--spec",
        &spec("cubic.toml"),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(status.status.success() && status.stdout.is_empty());
    let stdout = run(&["frame", "--spec", &spec("cubic.toml")]).stdout;
    assert_eq!(std::fs::read(target).unwrap(), stdout);
}

#[test]
fn check_csv_format() {
    let out = run(&["check", "--spec", &spec("line.toml"), "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("name,value,tolerance,pass\n"));
    assert!(
        text.contains("\"frenet non-rotating\",0.0,1e-9,1\n"),
        "{text}"
    );
}
