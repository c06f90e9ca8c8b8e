use std::process::Command;

fn quinpi() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quinpi"))
}

#[test]
fn run_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = quinpi()
        .args(["run", "--problem", "adv-double-step", "--cells", "40", "--final-time", "0.5", "--prefix", "ds", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["ds_solution.csv", "ds_report.txt", "ds_events.csv", "ds_entropy.csv"] {
        assert!(dir.path().join(f).is_file(), "{f} missing");
    }
    let summary = std::fs::read_to_string(dir.path().join("ds_report.txt")).unwrap();
    assert!(summary.contains("blowup = false"));
    let solution = std::fs::read_to_string(dir.path().join("ds_solution.csv")).unwrap();
    assert_eq!(solution.lines().count(), 41);
}

#[test]
fn converge_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = quinpi()
        .args(["converge", "--problem", "euler-convergence", "--scheme", "qi1", "--levels", "20:40", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let table = std::fs::read_to_string(dir.path().join("euler-convergence_qi1_errors.csv")).unwrap();
    assert_eq!(table.lines().next(), Some("N,l1,rate_l1,linf,rate_linf"));
    assert_eq!(table.lines().count(), 3);
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "[problem]\nbogus = 1\n").unwrap();
    for args in [
        vec!["run".to_string(), "--config".into(), bad.display().to_string()],
        vec!["run".into(), "--problem".into(), "nope".into()],
        vec!["converge".into(), "--problem".into(), "burgers-shock-interaction".into(), "--levels".into(), "20:50".into()],
        vec!["run".into()],
    ] {
        let out = quinpi().args(&args).arg("--out").arg(dir.path()).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn blowup_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = quinpi()
        .args(["run", "--problem", "colliding-flows", "--scheme", "q3", "--cells", "2000", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let summary = std::fs::read_to_string(dir.path().join("colliding-flows_report.txt")).unwrap();
    assert!(summary.contains("blowup = true"));
}
