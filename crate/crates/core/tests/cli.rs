use std::path::Path;
use std::process::{Command, Output};

fn kpell(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kpell"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn kpell")
}

#[test]
fn selftest_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = kpell(&["selftest"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn search_reads_config_file_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# small grid\nk_max = 5\nn_max = 9\nformat = csv\n").unwrap();
    let report = dir.path().join("hits.csv");
    let out = kpell(
        &["search", "--config", cfg.to_str().unwrap(), "--out", report.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(report).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "k,n,value,a,b,c,d");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("3,6,84,"));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "k_max = 50\nn_max = 9\n").unwrap();
    let out = kpell(&["pell", "--config", cfg.to_str().unwrap(), "--k-max", "2", "--n-max", "6"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let values: Vec<&str> = v["records"].as_array().unwrap().iter().map(|r| r["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["1", "2", "5", "12", "29", "70"]);
}

#[test]
fn invalid_parameters_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(kpell(&["search", "--k-min", "1"], dir.path()).status.code(), Some(1));
    assert_eq!(kpell(&["pell", "--set", "colour=blue"], dir.path()).status.code(), Some(1));
}

#[test]
fn unwritable_output_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("no").join("such").join("dir.json");
    let out = kpell(&["pell", "--k-max", "3", "--n-max", "3", "--out", bad.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_across_runs_and_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let a = kpell(&["verify-thm11", "--k-max", "8", "--n-max", "120", "--workers", "1"], dir.path());
    let b = kpell(&["verify-thm11", "--k-max", "8", "--n-max", "120", "--workers", "4"], dir.path());
    let c = kpell(&["verify-thm11", "--k-max", "8", "--n-max", "120", "--workers", "4"], dir.path());
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(b.stdout, c.stdout);
}
