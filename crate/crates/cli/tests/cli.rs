use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hybrid-ee"))
}

fn scenario(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "scenarios", name].iter().collect()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

const SMALL: &str = r#"
[scenario]
sweep = "ee_vs_capacity"

[params]
horizon = 4.0

[timeline]
arrivals = [[0.0, 500.0], [2.0, 300.0]]

[sweep]
start = 0
stop = 600
step = 300
"#;

#[test]
fn validate_accepts_shipped_scenarios() {
    for name in ["ee_vs_m.toml", "ee_vs_capacity.toml", "ee_se_tradeoff.toml", "single_poisson.toml", "oracle_two_epochs.toml"] {
        let out = run(&["validate", scenario(name).to_str().unwrap()]);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok:"));
    }
}

#[test]
fn sweep_writes_csv_meta_and_timeline() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "small.toml", SMALL);
    let out = dir.path().join("res.csv");
    let status = run(&["sweep", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--workers", "2"]);
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(dir.path().join("res.meta").exists());
    let tl = fs::read_to_string(dir.path().join("res_timeline.csv")).unwrap();
    assert!(tl.lines().count() >= 3);
}

#[test]
fn sweep_output_is_byte_identical_across_runs_and_workers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "small.toml", SMALL);
    let a = run(&["sweep", cfg.to_str().unwrap(), "--workers", "1"]);
    let b = run(&["sweep", cfg.to_str().unwrap(), "--workers", "3"]);
    let c = run(&["sweep", cfg.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn solve_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = run(&["solve", scenario("single_poisson.toml").to_str().unwrap(), "--seed", "4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&path).unwrap();
    assert!(dir.path().join("report_timeline.csv").exists());
    assert!(text.contains("converged = true"), "{text}");
    assert!(text.contains("[epochs]"));
}

#[test]
fn oracle_reports_relative_difference() {
    let out = run(&["oracle", scenario("oracle_two_epochs.toml").to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    let diff: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("relative_difference = "))
        .expect("difference line")
        .parse()
        .unwrap();
    assert!(diff >= -0.02, "{text}");
}

#[test]
fn config_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.toml", &SMALL.replace("horizon = 4.0", "horizon = 4.0\nbogus = 1"));
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("nope.toml");
    assert_eq!(run(&["sweep", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn unreachable_qos_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let text = SMALL.replace("horizon = 4.0", "horizon = 4.0\nqos_min = 1e6");
    let cfg = write(dir.path(), "qos.toml", &text);
    assert_eq!(run(&["solve", cfg.to_str().unwrap()]).status.code(), Some(3));
}
