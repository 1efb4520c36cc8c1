use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hylag(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hylag"))
        .args(args)
        .current_dir(dir)
        .env_remove("HYLAG_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str], dir: &Path) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = hylag(&full, dir);
    let code = out.status.code().expect("exit code");
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    std::fs::write(dir.join(name), text).unwrap();
    name.to_string()
}

#[test]
fn build_writes_graph_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = json(
        &[
            "build", "--family", "alpha", "--ell", "2", "--t", "3", "-o", "g.hyg",
        ],
        dir.path(),
    );
    assert_eq!(code, 0);
    assert_eq!(v["edges"], 6);
    assert_eq!(v["expected_edges"], "6");
    let side: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("g.json")).unwrap()).unwrap();
    assert_eq!(side["edges"], 6);
    assert_eq!(side["seed"], 0);
    let text = std::fs::read_to_string(dir.path().join("g.hyg")).unwrap();
    assert_eq!(text.lines().next(), Some("5 6"));
    assert_eq!(text.lines().count(), 1 + 6);

    // re-reading the file reproduces the count
    let (code, v) = json(&["lagrangian", "g.hyg"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(v["edges"], 6);
    assert_eq!(v["vertices"], 6);
}

#[test]
fn special_family_defaults_to_five_parts() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = json(
        &["build", "--family", "n12_125", "--t", "2", "-o", "n.hyg"],
        dir.path(),
    );
    assert_eq!(code, 0);
    // t⁵ + 3·C(t,2)·t³ at t = 2
    assert_eq!(v["edges"], 32 + 3 * 8);
    let (_, l) = json(&["lagrangian", "n.hyg"], dir.path());
    assert_eq!(l["edges"], 56);
    let lam = l["result"]["lambda_lower"].as_f64().unwrap();
    // the uniform point on 10 vertices already gives 56/10⁵
    assert!(lam >= 56e-5 - 1e-15, "{lam}");
}

#[test]
fn sparse_attachment_and_lift_keep_counts() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "build", "--family", "alpha", "--ell", "5", "--t", "2", "--r", "6", "-o", "lift.hyg",
    ];
    let (code, v) = json(&args, dir.path());
    assert_eq!(code, 0);
    // ℓ=5, t=2: 2⁵ + 5·C(4,3)·C(2,2)·2³ + C(5,2)·3·C(2,2)²·2 = 252, times t for V₆
    assert_eq!(v["edges"], 252 * 2);
    let args = [
        "build", "--family", "alpha", "--ell", "2", "--t", "6", "--sigma", "0.0015", "-o", "a.hyg",
    ];
    let (code, v) = json(&args, dir.path());
    assert_eq!(code, 0, "{v}");
    let extra = v["sparse"]["edges"].as_u64().unwrap();
    assert!(extra >= 2);
    assert_eq!(v["edges"].as_u64().unwrap(), 2 * 20 * 15 + extra);
}

#[test]
fn invalid_parameters_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = hylag(
        &["build", "--family", "alpha", "--ell", "1", "--t", "3"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ℓ"));
    let out = hylag(&["build", "--family", "beta", "--t", "3"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = hylag(&["lagrangian", "missing.hyg"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let bad = write(dir.path(), "bad.hyg", "5 6\n0 1 2 3 9\n");
    assert_eq!(
        hylag(&["lagrangian", &bad], dir.path()).status.code(),
        Some(2)
    );
}

#[test]
fn lagrangian_of_small_files() {
    let dir = tempfile::tempdir().unwrap();
    let edge = write(dir.path(), "edge.hyg", "# one edge\n5 5\n0 1 2 3 4\n");
    let (code, v) = json(&["lagrangian", &edge], dir.path());
    assert_eq!(code, 0);
    let lam = v["result"]["lambda_lower"].as_f64().unwrap();
    assert!((lam - 3.2e-4).abs() <= 1e-12);

    let k3 = write(dir.path(), "k3.hyg", "2 3\n0 1\n0 2\n1 2\n");
    let (_, v) = json(&["lagrangian", &k3], dir.path());
    let lam = v["result"]["lambda_lower"].as_f64().unwrap();
    assert!((lam - 1.0 / 3.0).abs() <= 1e-8);

    let empty = write(dir.path(), "empty.hyg", "3 4\n");
    let (code, v) = json(&["lagrangian", &empty], dir.path());
    assert_eq!(code, 0);
    assert_eq!(v["result"]["lambda_lower"].as_f64(), Some(0.0));
}

#[test]
fn seeds_are_recorded_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c4.hyg", "3 5\n0 1 2\n0 1 3\n1 2 4\n2 3 4\n");
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_hylag"))
            .args(["--format", "json", "lagrangian", &g])
            .current_dir(dir.path())
            .env("HYLAG_SEED", seed)
            .output()
            .unwrap()
            .stdout
    };
    let a = run("17");
    assert_eq!(a, run("17"));
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["seed"], 17);
    assert_eq!(v["config"]["seed"], 17);
    // the flag wins over the environment
    let (_, v) = json(&["--seed", "3", "lagrangian", &g], dir.path());
    assert_eq!(v["seed"], 3);
}

#[test]
fn verify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = json(&["verify", "--claim", "g_max", "--L", "2"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["claims"][0]["target"], "1/192");
    let best = v["claims"][0]["achieved_max"].as_f64().unwrap();
    assert!((best - 1.0 / 192.0).abs() <= 1e-12);
    assert_eq!(v["bound_tolerance"], 1e-9);
    assert!(v["version"].is_string());

    let (code, v) = json(&["verify", "--claim", "case_c", "--q", "2..50"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(v["claims"][0]["samples"], 49);

    let out = hylag(
        &["verify", "--claim", "F", "--family", "n252_625", "--q", "2"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("refused"));

    let out = hylag(&["verify", "--claim", "nope"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = hylag(
        &["verify", "--claim", "case_a", "--family", "n12_125"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_sorts_claims() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = json(
        &[
            "verify", "--claim", "f_a1", "--ell", "2..4", "--grid", "200",
        ],
        dir.path(),
    );
    assert_eq!(code, 0);
    let params: Vec<&str> = v["claims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["params"].as_str().unwrap())
        .collect();
    let mut sorted = params.clone();
    sorted.sort();
    assert_eq!(params, sorted);
    assert_eq!(params.len(), 3);
}

#[test]
fn failed_sparse_draw_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = hylag(
        &[
            "sparse",
            "--r",
            "3",
            "--t",
            "6",
            "--k",
            "6",
            "--sigma",
            "1",
            "--max-attempts",
            "2",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sparse_writes_a_valid_graph() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "sparse", "--t", "12", "--k", "7", "--sigma", "0.002", "-o", "a.hyg",
    ];
    let (code, v) = json(&args, dir.path());
    assert_eq!(code, 0);
    assert_eq!(v["sparsity"]["ok"], true);
    assert_eq!(v["edge_count_ok"], true);
    let text = std::fs::read_to_string(dir.path().join("a.hyg")).unwrap();
    let edges = text.lines().count() as u64 - 1;
    assert_eq!(Some(edges), v["build"]["edges"].as_u64());
    assert!(edges as f64 >= 0.002 * 12f64.powi(4));
}

fn column(v: &Value, i: usize) -> Vec<String> {
    v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[i].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn report_sweeps() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = json(&["report", "--ell", "2..6"], dir.path());
    assert_eq!(code, 0);
    let values: Vec<f64> = column(&v, 4).iter().map(|s| s.parse().unwrap()).collect();
    for (i, got) in values.iter().enumerate() {
        let l = (i + 2) as f64;
        assert!((got - (1.0 - 5.0 / l.powi(3) + 4.0 / l.powi(4))).abs() <= 1e-10);
    }

    let (_, v) = json(&["report", "--sweep", "jumps"], dir.path());
    let lam: Vec<f64> = column(&v, 4).iter().map(|s| s.parse().unwrap()).collect();
    for (i, got) in lam.iter().enumerate() {
        let r = (i + 5) as i32;
        let want = 151.0 / (6.0 * (r as f64).powi(r));
        assert!(
            (got - want).abs() <= 1e-10 * want.max(1e-10) + 5e-11,
            "r={r}"
        );
    }
    assert_eq!(column(&v, 3)[0], "151/18750");

    let (_, v) = json(
        &[
            "report", "--sweep", "density", "--family", "n12_125", "--t", "2..10",
        ],
        dir.path(),
    );
    let d: Vec<f64> = column(&v, 6).iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(d.len(), 9);
    assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
    assert!(d.iter().all(|&x| x > 12.0 / 125.0));
}

#[test]
fn report_matches_golden_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = hylag(
        &[
            "--format",
            "json",
            "report",
            "--family",
            "complement",
            "--ell",
            "2..3",
            "--q",
            "1..3",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let got: Value = serde_json::from_slice(&out.stdout).unwrap();
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/report_complement.json");
    let want: Value = serde_json::from_str(&std::fs::read_to_string(golden).unwrap()).unwrap();
    assert_eq!(got["rows"], want["rows"]);
    assert_eq!(got["columns"], want["columns"]);
}

#[test]
fn table_output_is_default() {
    let dir = tempfile::tempdir().unwrap();
    let out = hylag(
        &["verify", "--claim", "rho_block", "--grid", "100"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("claim"));
    assert!(text
        .lines()
        .any(|l| l.starts_with("rho_block") && l.ends_with("pass")));
}
