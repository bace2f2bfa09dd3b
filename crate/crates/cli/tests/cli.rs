use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run_in(cache: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_affine-paths"));
    cmd.args(args).env_remove("CRYSTAL_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("CRYSTAL_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_in(None, args)
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn pairs(v: &Value) -> Vec<(i64, i64)> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_i64().unwrap(), p[1].as_i64().unwrap()))
        .collect()
}

#[test]
fn kostka_classical_single_monomial() {
    let v = json(&run(&[
        "kostka", "--n", "2", "--shapes", "1x1,1x1", "--lambda", "2,0",
    ]));
    assert_eq!(v["schema"], "affine-paths/kostka/1");
    assert_eq!(pairs(&v["polynomial"]), vec![(0, 1)]);
    assert_eq!(v["path_count"], 1);
}

#[test]
fn kostka_classical_two_monomials() {
    let v = json(&run(&[
        "kostka",
        "--n",
        "2",
        "--shapes",
        "1x1,1x1,1x1",
        "--lambda",
        "2,1",
    ]));
    let p = pairs(&v["polynomial"]);
    assert_eq!(p.len(), 2);
    assert_eq!((p[1].0 - p[0].0).abs(), 1);
    assert!(p.iter().all(|&(_, c)| c == 1));
}

#[test]
fn kostka_level_reports_hypothesis_for_general_weights() {
    let v = json(&run(&[
        "kostka",
        "--n",
        "2",
        "--shapes",
        "1x1,1x1,1x1",
        "--Lambda",
        "L1",
        "--LambdaPrime",
        "L0",
    ]));
    assert_eq!(v["spec"]["level"], 1);
    assert_eq!(v["spec"]["b0"], "1x1");
    assert_eq!(v["e0_hypothesis"], true);
}

#[test]
fn invalid_shape_exits_two_and_names_invariant() {
    let out = run(&["kostka", "--n", "3", "--shapes", "3x1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1 <= k < n"));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_arguments_exit_two() {
    assert_eq!(
        run(&["kostka", "--n", "2", "--shapes", "1y1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["straighten", "n=2", "alpha=0,1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["straighten", "n=3", "l=1", "alpha=0,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["cache", "list"]).status.code(), Some(2));
}

#[test]
fn table_format_is_plain_text() {
    let out = run(&[
        "--format", "table", "kostka", "--n", "2", "--shapes", "1x1,1x1", "--lambda", "2,0",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(serde_json::from_str::<Value>(&text).is_err());
    let line = text.lines().find(|l| l.starts_with("polynomial")).unwrap();
    assert!(line.trim_end().ends_with('1'));
    assert!(text
        .lines()
        .any(|l| l.starts_with("paths") && l.ends_with('1')));
}

#[test]
fn verify_level_one_equal() {
    let v = json(&run(&[
        "verify",
        "--n",
        "2",
        "--level",
        "1",
        "--shapes",
        "1x1,1x1",
        "--Lambda",
        "L0",
        "--LambdaPrime",
        "L0",
    ]));
    assert_eq!(v["equal"], true);
    assert_eq!(v["lhs_polynomial"], v["rhs_polynomial"]);
    assert!(v["summand_count"].as_u64().unwrap() > 0);
}

#[test]
fn verify_widen_check_and_jobs() {
    let args = [
        "--jobs",
        "2",
        "verify",
        "--n",
        "3",
        "--level",
        "2",
        "--shapes",
        "1x1,1x1,1x1",
        "--widen-check",
    ];
    let v = json(&run(&args));
    assert_eq!(v["equal"], true);
    assert_eq!(v["widened"]["equal"], true);
    assert_eq!(
        v["widened"]["bound"],
        v["truncation_bound"].as_i64().unwrap() + 2
    );
    let serial = json(&run(&[
        "--jobs",
        "1",
        "verify",
        "--n",
        "3",
        "--level",
        "2",
        "--shapes",
        "1x1,1x1,1x1",
        "--widen-check",
    ]));
    assert_eq!(v, serial);
}

#[test]
fn verify_one_single_monomial() {
    let v = json(&run(&["verify-one", "--n", "2", "--shapes", "1x1,1x1"]));
    assert_eq!(v["schema"], "affine-paths/verify-one/1");
    assert_eq!(v["equal"], true);
    assert_eq!(v["applicable"], true);
    assert_eq!(v["restricted_paths"], 1);
    assert_eq!(pairs(&v["lhs_polynomial"]).len(), 1);
}

#[test]
fn verify_one_rejects_wide_factors() {
    assert_eq!(
        run(&["verify-one", "--n", "2", "--shapes", "1x2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_zero_nonempty_is_zero_with_certificate() {
    let v = json(&run(&[
        "verify-zero",
        "--n",
        "2",
        "--shapes",
        "1x1,1x1,1x1",
    ]));
    assert_eq!(v["lhs_polynomial"], serde_json::json!([]));
    assert_eq!(v["equal"], true);
    assert!(v.get("pairing_size").is_some());

    let v = json(&run(&[
        "verify-zero",
        "--n",
        "3",
        "--shapes",
        "1x1,2x1,1x1,2x1",
    ]));
    assert_eq!(v["lhs_polynomial"], serde_json::json!([]));
    let pairs = v["pairing_size"].as_u64().unwrap();
    assert!(pairs > 0);
    assert_eq!(v["summand_count"].as_u64().unwrap(), 2 * pairs);
}

#[test]
fn verify_zero_empty_is_one() {
    let v = json(&run(&["verify-zero", "--n", "2", "--shapes", ""]));
    assert_eq!(pairs(&v["lhs_polynomial"]), vec![(0, 1)]);
    assert!(v.get("pairing_size").is_none());
}

#[test]
fn straighten_tokens_and_flags_agree() {
    let a = json(&run(&["straighten", "n=3", "l=1", "alpha=0,-1,2"]));
    assert_eq!(a["result"], "zero");
    let b = json(&run(&[
        "straighten",
        "--n",
        "3",
        "--level",
        "1",
        "--alpha",
        "0,-1,2",
    ]));
    assert_eq!(a, b);
    let c = json(&run(&["straighten", "n=2", "l=1", "alpha=3,0"]));
    let r = &c["result"];
    assert!(r["sign"] == 1 || r["sign"] == -1);
    let beta: Vec<i64> = r["beta"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_i64().unwrap())
        .collect();
    assert!(beta.windows(2).all(|w| w[0] >= w[1]));
    assert!(beta[0] - beta[1] <= 1);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify",
        "--n",
        "3",
        "--level",
        "1",
        "--shapes",
        "1x1,2x1,1x1",
        "--Lambda",
        "L1",
        "--LambdaPrime",
        "L2",
    ];
    let first = run(&args);
    for _ in 0..3 {
        assert_eq!(run(&args).stdout, first.stdout);
    }
}

fn cache_files(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut v: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    v.sort();
    v
}

#[test]
fn cache_build_list_and_idempotence() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run_in(
        Some(dir.path()),
        &["cache", "build", "--n", "2", "--shapes", "1x1,1x2"],
    ));
    assert_eq!(v["action"], "build");
    assert_eq!(v["entries"].as_array().unwrap().len(), 4);
    let files = cache_files(dir.path());
    let before: Vec<Vec<u8>> = files.iter().map(|f| std::fs::read(f).unwrap()).collect();

    let again = json(&run_in(
        Some(dir.path()),
        &["cache", "build", "--n", "2", "--shapes", "1x1,1x2"],
    ));
    let after: Vec<Vec<u8>> = files.iter().map(|f| std::fs::read(f).unwrap()).collect();
    assert_eq!(before, after);
    assert_eq!(v["entries"], again["entries"]);

    let listed = json(&run_in(Some(dir.path()), &["cache", "list"]));
    assert!(listed["entries"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["status"] == "ok"));

    let cleared = json(&run_in(Some(dir.path()), &["cache", "clear"]));
    assert_eq!(cleared["removed"], 4);
    assert!(cache_files(dir.path()).is_empty());
}

#[test]
fn corrupted_cache_entry_is_rebuilt_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    json(&run_in(
        Some(dir.path()),
        &["cache", "build", "--n", "2", "--shapes", "1x2,1x1"],
    ));
    let target = cache_files(dir.path())
        .into_iter()
        .find(|f| f.file_name().unwrap().to_string_lossy().contains("1x2_1x1"))
        .expect("table for the mixed pair");
    let good = std::fs::read(&target).unwrap();
    let mut bad = good.clone();
    let pos = bad
        .iter()
        .position(|&b| b == b'-')
        .expect("a negative energy");
    bad[pos] = b' ';
    std::fs::write(&target, &bad).unwrap();

    let listed = json(&run_in(Some(dir.path()), &["cache", "list"]));
    assert!(listed["entries"]
        .as_array()
        .unwrap()
        .iter()
        .any(|e| e["status"] != "ok"));

    let out = run_in(
        Some(dir.path()),
        &["cache", "build", "--n", "2", "--shapes", "1x2,1x1"],
    );
    let v = json(&out);
    assert!(String::from_utf8_lossy(&out.stderr).contains("checksum mismatch"));
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
    assert!(v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["status"] == "ok"));
    assert_eq!(std::fs::read(&target).unwrap(), good);

    std::fs::write(&target, &bad).unwrap();
    let out = run_in(
        Some(dir.path()),
        &["verify", "--n", "2", "--level", "2", "--shapes", "1x2,1x1"],
    );
    let v = json(&out);
    assert_eq!(v["equal"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert!(!v["warnings"].as_array().unwrap().is_empty());
    assert_eq!(std::fs::read(&target).unwrap(), good);
}

#[test]
fn cached_and_uncached_results_match() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "kostka",
        "--n",
        "3",
        "--shapes",
        "1x2,2x1,1x1",
        "--level",
        "2",
    ];
    let plain = run(&args);
    let cold = run_in(Some(dir.path()), &args);
    let warm = run_in(Some(dir.path()), &args);
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(cold.stdout, warm.stdout);
    assert!(!cache_files(dir.path()).is_empty());
}
