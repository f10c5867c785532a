use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn mills(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mills"))
        .args(args)
        .env("MILLS_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_table2_exits_zero() {
    let dir = TempDir::new().unwrap();
    let o = mills(&["--machine", "verify", "table2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.contains("table2.row") && l.contains("| pass")).count(), 20);
}

#[test]
fn digits_from_spec_file() {
    let dir = TempDir::new().unwrap();
    let spec = dir.path().join("mills.seq");
    fs::write(&spec, "family = geometric_floor\nb = 3\n").unwrap();
    let o = mills(&["digits", "--seq", spec.to_str().unwrap(), "--depth", "6", "--digits", "20"], &dir.path().join("c"));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1.30637788386308069046\n"));
}

#[test]
fn check_profile_c() {
    let dir = TempDir::new().unwrap();
    let o = mills(&["--machine", "check", "--profile", "C", "--seq", "shifted(1,3,-1)", "--horizon", "30"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for id in ["C1", "C2", "C3", "C4", "C5"] {
        let line = out.lines().find(|l| l.starts_with(&format!("{id} |"))).unwrap();
        assert!(line.contains("| pass"), "{line}");
    }
}

#[test]
fn failing_profile_exits_one() {
    let dir = TempDir::new().unwrap();
    let o = mills(&["check", "--profile", "A", "--seq", "geometric(1, 2)", "--horizon", "30"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn threshold_exact_decimal_is_reported_as_failure() {
    let dir = TempDir::new().unwrap();
    let o = mills(&["--machine", "verify", "threshold"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.starts_with("threshold.value.binary64 |") && l.contains("| pass")));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["frobnicate"][..],
        &["digits", "--seq", "nonsense(1)"],
        &["pisot", "floor", "--coeffs", "1,2", "--n", "3"],
        &["pisot", "floor", "--poly", "1,0,0,-2", "--n", "3"],
        &["chain", "show", "--seq", "mills"],
        &["--config", "/nonexistent/mills.conf", "verify", "table2"],
    ] {
        let o = mills(args, dir.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn exhausted_search_exits_three() {
    let dir = TempDir::new().unwrap();
    let o = mills(&["chain", "build", "--seq", "literal(10, 11, 12)", "--depth", "3"], dir.path());
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn chain_extend_appends_only() {
    let dir = TempDir::new().unwrap();
    let o = mills(&["chain", "build", "--seq", "mills", "--depth", "3"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let file = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let before = fs::read_to_string(&file).unwrap();

    let o = mills(&["chain", "extend", "--seq", "mills", "--depth", "5"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3 levels from cache, 2 appended"));
    let after = fs::read_to_string(&file).unwrap();
    assert!(after.starts_with(&before) && after.len() > before.len());

    let shown = mills(&["--machine", "chain", "show", "--seq", "mills"], dir.path());
    assert_eq!(stdout(&shown).lines().count(), 5);
    assert!(stdout(&shown).starts_with("1 | 2 | deterministic\n2 | 11 | deterministic\n3 | 1361 | deterministic\n"));
}

#[test]
fn extend_without_cache_is_usage_error() {
    let dir = TempDir::new().unwrap();
    let o = mills(&["chain", "extend", "--seq", "mills", "--depth", "4"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn identical_runs_give_identical_bytes() {
    let dir = TempDir::new().unwrap();
    let args = ["digits", "--seq", "mills", "--depth", "5", "--digits", "10"];
    let first = mills(&args, dir.path());
    let second = mills(&args, dir.path());
    let third = mills(&args, dir.path());
    // The first run builds the cache; afterwards the state is fixed.
    assert_eq!(second.stdout, third.stdout);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn cache_dir_precedence() {
    let dir = TempDir::new().unwrap();
    let (env_dir, flag_dir, file_dir) = (dir.path().join("env"), dir.path().join("flag"), dir.path().join("file"));
    let conf = dir.path().join("mills.conf");
    fs::write(&conf, format!("cache_dir = {}\n", file_dir.display())).unwrap();
    let conf = conf.to_str().unwrap();

    let run = |extra: &[&str], env: Option<&Path>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_mills"));
        c.args(["--config", conf]).args(extra).args(["chain", "build", "--seq", "mills", "--depth", "2"]);
        match env {
            Some(e) => c.env("MILLS_CACHE_DIR", e),
            None => c.env_remove("MILLS_CACHE_DIR"),
        };
        assert_eq!(c.output().unwrap().status.code(), Some(0));
    };
    run(&[], None);
    assert!(file_dir.is_dir());
    run(&[], Some(&env_dir));
    assert!(env_dir.is_dir());
    run(&["--cache-dir", flag_dir.to_str().unwrap()], Some(&env_dir));
    assert!(flag_dir.is_dir());
}

#[test]
fn config_values_apply_and_bad_config_fails() {
    let dir = TempDir::new().unwrap();
    let conf = dir.path().join("mills.conf");
    fs::write(&conf, "seq = mills\ndepth = 4\ndigits = 5\n").unwrap();
    let o = mills(&["--machine", "--config", conf.to_str().unwrap(), "digits"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("digits | 1.30637 | 5 | 4"), "{}", stdout(&o));

    fs::write(&conf, "digits = 0\n").unwrap();
    let o = mills(&["--config", conf.to_str().unwrap(), "verify", "table2"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pisot_subcommands() {
    let dir = TempDir::new().unwrap();
    let o = mills(&["--machine", "pisot", "enumerate", "--max", "3"], dir.path());
    assert_eq!(stdout(&o).lines().count(), 20);
    assert!(stdout(&o).starts_with("1, 1.32471795724474602596, 0, 1, 1\n"));

    let o = mills(&["--machine", "pisot", "floor", "--coeffs", "0,1,1", "--n", "40"], dir.path());
    assert_eq!(stdout(&o), "floor | 40 | 76725\n");
    let o = mills(&["--machine", "pisot", "trace", "--poly", "1,-1,-1", "--n", "10"], dir.path());
    assert_eq!(stdout(&o), "trace | 10 | 123\n");
    let o = mills(&["--machine", "pisot", "root", "--coeffs", "1,0,1", "--eps", "1e-12"], dir.path());
    assert!(stdout(&o).starts_with("root | 1.46557123187 |"), "{}", stdout(&o));
}

#[test]
fn sequence_tools() {
    let dir = TempDir::new().unwrap();
    let o = mills(&["--machine", "divisible-index", "--r", "2", "--m", "1"], dir.path());
    assert_eq!(stdout(&o), "divisible-index | 2 | 1 | 5\n");
    let o = mills(&["--machine", "period-mod", "--seq", "recurrence(1, 1; 1, 1)", "--modulus", "10"], dir.path());
    assert_eq!(stdout(&o), "period | 10 | 60\n");
    let o = mills(&["period-mod", "--seq", "mills", "--modulus", "10"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = mills(&["--machine", "agcd", "--seq", "shifted(2,3,-1)"], dir.path());
    assert!(stdout(&o).starts_with("agcd | 1 |"));
}

#[test]
fn diagnose_frac() {
    let dir = TempDir::new().unwrap();
    let o = mills(&["--machine", "diagnose", "frac", "--seq", "mills", "--depth", "4", "--k", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("frac | 1 | 0.229"), "{}", stdout(&o));
    let o = mills(&["diagnose", "frac", "--seq", "mills", "--depth", "4", "--k", "4"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}
