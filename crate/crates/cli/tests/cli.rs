use std::process::{Command, Output};

fn bmslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmslab")).env_remove("BMSLAB_CACHE").args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim().to_string()
}

#[test]
fn compute_examples() {
    let o = bmslab(&["compute", "--m", "2", "--g", "0", "--mu", "3", "--route", "brute"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "5/3");
    let o = bmslab(&["compute", "--m", "2", "--g", "1", "--mu", "3", "--route", "fock"]);
    assert_eq!(stdout(&o), "1/3");
    let o = bmslab(&["compute", "--m", "2", "--g", "0", "--mu", "1,1", "--route", "unstable"]);
    assert_eq!(stdout(&o), "1");
}

#[test]
fn usage_errors_exit_two() {
    let o = bmslab(&["compute", "--m", "2", "--g", "1", "--mu", "3", "--route", "genus0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bmslab(&["compute", "--m", "2", "--g", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bmslab(&["cache", "gc"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cross_check_json() {
    let o = bmslab(&["--json", "compute", "--m", "2", "--g", "0", "--mu", "2,1,1", "--cross-check"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "6");
    for r in ["brute", "fock", "genus0"] {
        assert_eq!(v["routes"][r], "6");
    }
}

#[test]
fn cache_round_trip_verify_and_gc() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let p = path.to_str().unwrap();
    for _ in 0..2 {
        let o = bmslab(&["--cache-path", p, "compute", "--m", "2", "--g", "1", "--mu", "3", "--verify-cache"]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), "1/3");
    }
    let o = bmslab(&["--cache-path", p, "cache", "verify"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = bmslab(&["--cache-path", p, "cache", "gc"]);
    assert!(o.status.success());
    // a corrupted value is caught on verified reads
    let text = std::fs::read_to_string(&path).unwrap().replace("1/3", "2/3");
    std::fs::write(&path, text).unwrap();
    let o = bmslab(&["--cache-path", p, "compute", "--m", "2", "--g", "1", "--mu", "3"]);
    assert_eq!(stdout(&o), "2/3");
    let o = bmslab(&["--cache-path", p, "compute", "--m", "2", "--g", "1", "--mu", "3", "--verify-cache"]);
    assert_eq!(o.status.code(), Some(1));
    let o = bmslab(&["--cache-path", p, "cache", "verify"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn fit_matches_genus_zero_three_point() {
    let o = bmslab(&["fit", "--m", "2", "--g", "0", "--n", "3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["m"], 2);
    assert_eq!(v["degree"], 1);
}

#[test]
fn tr_check_all_equal() {
    let o = bmslab(&["tr-check", "--g", "1", "--n", "1", "--mu-max", "6"]);
    assert!(o.status.success());
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["equal"] == true));
    assert_eq!(rows[2]["tr_value"], "1/3");
}

#[test]
fn table_and_xi_are_deterministic() {
    let a = bmslab(&["table", "--m", "2", "--g", "0", "--n", "2", "--mu-max", "3"]);
    let b = bmslab(&["table", "--m", "2", "--g", "0", "--n", "2", "--mu-max", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).lines().any(|l| l == "3 3,100/3"));
    let o = bmslab(&["--json", "xi", "--m", "2", "--order", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["xi"][0][3], "-4");
}

#[test]
fn w_check_passes() {
    let o = bmslab(&["w-check", "--m", "2", "--g", "1", "--n", "1", "--mu-max", "4"]);
    assert!(o.status.success(), "{}", stdout(&o));
}
