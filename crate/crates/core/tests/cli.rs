use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bootperc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bootperc")).args(args).env_remove("BOOTPERC_MAX_TUPLES").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

#[test]
fn build_then_run_and_verify() {
    let dir = TempDir::new().unwrap();
    let cert = path(&dir, "full32.json");
    let o = bootperc(&["build", "--r", "3", "--k", "2", "--stage", "full", "--out", &cert]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("predicted_T=40"));

    let o = bootperc(&["run", "--in", &cert]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("T=40"));

    let o = bootperc(&["verify", "--in", &cert]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    for p in ["(i): pass", "(ii): pass", "(iii): pass"] {
        assert!(out.contains(p), "{out}");
    }
}

#[test]
fn engines_write_identical_traces() {
    let dir = TempDir::new().unwrap();
    let cert = path(&dir, "base.json");
    assert!(bootperc(&["build", "--r", "3", "--k", "3", "--stage", "base", "--out", &cert]).status.success());
    let (fast, naive) = (path(&dir, "fast.jsonl"), path(&dir, "naive.jsonl"));
    let a = bootperc(&["run", "--in", &cert, "--engine", "fast", "--trace", &fast]);
    let b = bootperc(&["run", "--in", &cert, "--engine", "naive", "--trace", &naive]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let trace = fs::read_to_string(&fast).unwrap();
    assert_eq!(trace, fs::read_to_string(&naive).unwrap());
    assert_eq!(trace.lines().count(), 41);
    assert!(trace.starts_with("{\"format_version\":\"1\",\"r\":3,\"n\":19,\"running_time\":40}\n"));
}

#[test]
fn run_on_empty_graph() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "empty.json");
    fs::write(&g, "{\"format_version\": \"1\", \"r\": 3, \"n\": 6, \"edges\": []}").unwrap();
    let o = bootperc(&["run", "--in", &g]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("T=0"));
    assert_eq!(bootperc(&["run", "--in", &g, "--m", "3"]).status.code(), Some(2));
}

#[test]
fn parse_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "bad.json");
    fs::write(&g, "{\"format_version\": \"1\", \"r\": 3, \"n\": 6, \"edges\": [[0, 0, 1]]}").unwrap();
    let o = bootperc(&["run", "--in", &g]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("duplicate vertex in edge"));
    assert!(stdout(&o).is_empty());
    assert_eq!(bootperc(&["run", "--in", &path(&dir, "missing.json")]).status.code(), Some(2));
    assert_eq!(bootperc(&["verify", "--in", &g]).status.code(), Some(2));
}

#[test]
fn tuple_cap_exits_3() {
    let dir = TempDir::new().unwrap();
    let cert = path(&dir, "base.json");
    assert!(bootperc(&["build", "--r", "3", "--k", "2", "--stage", "base", "--out", &cert]).status.success());
    let o = bootperc(&["--max-tuples", "5", "run", "--in", &cert]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_bootperc"))
        .args(["run", "--in", &cert])
        .env("BOOTPERC_MAX_TUPLES", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn build_errors() {
    assert_eq!(bootperc(&["build", "--r", "4", "--k", "2", "--stage", "base"]).status.code(), Some(2));
    assert_eq!(bootperc(&["build", "--r", "4", "--k", "2", "--stage", "glued"]).status.code(), Some(2));
    assert_eq!(bootperc(&["build", "--r", "3", "--k", "1", "--stage", "full"]).status.code(), Some(2));
    assert!(stdout(&bootperc(&["build", "--r", "4", "--k", "2", "--stage", "full"])).contains("predicted_T=124"));
}

#[test]
fn bounds_command() {
    let o = bootperc(&["bounds", "--r", "3", "--n", "18"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("27/8") && out.contains("3.375") && out.contains("upper_exact=816") && out.contains("k=2"));
    let o = bootperc(&["bounds", "--r", "3", "--n", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("n < 2r^2"));
    assert_eq!(bootperc(&["bounds", "--r", "2", "--n", "10"]).status.code(), Some(2));
}

#[test]
fn brute_command_is_deterministic() {
    let one = bootperc(&["brute", "--r", "3", "--n", "5", "--jobs", "1"]);
    let eight = bootperc(&["brute", "--r", "3", "--n", "5", "--jobs", "8"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, eight.stdout);
    assert!(stdout(&one).contains("max_T=2"));
    assert!(stdout(&bootperc(&["brute", "--r", "3", "--n", "4"])).contains("max_T=1"));
    assert_eq!(bootperc(&["brute", "--r", "3", "--n", "7"]).status.code(), Some(3));
}

#[test]
fn check_base_command() {
    let o = bootperc(&["check-base", "--k", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("density: max 2"));
    assert_eq!(bootperc(&["check-base", "--k", "2"]).status.code(), Some(0));
}

#[test]
fn corrupted_fixture() {
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/base_k2_corrupted.json");
    let fixture = fixture.to_str().unwrap();
    let o = bootperc(&["verify", "--in", fixture]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("first divergence: property (i) diverges at step 5"), "{}", stdout(&o));
    let o = bootperc(&["check-base", "--k", "2", "--in", fixture]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("sequence vs closed form: FAIL"));
}

#[test]
fn help_exits_0() {
    for args in [&["--help"][..], &["build", "--help"], &["brute", "--help"]] {
        assert_eq!(bootperc(args).status.code(), Some(0));
    }
    assert_eq!(bootperc(&[]).status.code(), Some(2));
}
