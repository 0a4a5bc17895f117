use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use clap::Parser;
use eqcurve_cli::{run, Cli};
use proptest::prelude::*;
use serde_json::{json, Value};

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("configs")
        .join(format!("{name}.json"))
}

fn eqcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqcurve"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: stdout={} stderr={}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn order_four() -> PathBuf {
    config("order_four")
}

#[test]
fn classify_order_four() {
    let out = eqcurve(&["classify", "--config", path_str(&order_four())]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(
        r["scenario"]["flags"]["general_case"],
        json!({"m": 2, "p": 1, "q": 2, "coprime": true})
    );
    let pair = &r["pairs"][0];
    assert_eq!(pair["pair"], json!([0, 1]));
    assert_eq!(pair["report"]["outcome"]["kind"], "case");
    assert_eq!(pair["report"]["outcome"]["case"], 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("scenario"));
}

#[test]
fn classify_trivial_fermat_matches_set_one_for_every_pair() {
    let out = eqcurve(&["classify", "--config", path_str(&config("trivial_fermat"))]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    // every coordinate point lies off the Fermat cubic; ask for each pair explicitly
    assert_eq!(r["pairs"], json!([]));
    for pair in ["0,1", "0,2", "1,3", "2,3"] {
        let out = eqcurve(&[
            "classify",
            "--config",
            path_str(&config("trivial_fermat")),
            "--pair",
            pair,
        ]);
        let r = json_of(&out);
        let matched = r["pairs"][0]["report"]["criteria"]["matched"]
            .as_array()
            .unwrap()
            .clone();
        assert!(matched.contains(&json!(1)), "{pair}: {matched:?}");
    }
}

#[test]
fn classify_flags_invertible_d_minus_one() {
    let out = eqcurve(&[
        "classify",
        "--config",
        path_str(&config("degree_five_order_seven")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["scenario"]["flags"]["d_minus_1_invertible"], true);
    assert_eq!(r["scenario"]["source"], "ambient-inferred");
}

#[test]
fn basis_lists_system_and_base_locus() {
    let out = eqcurve(&["basis", "--config", path_str(&order_four())]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["basis"]["system"]["basis"].as_array().unwrap().len(), 5);
    let names: Vec<&str> = r["basis"]["base_locus"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["x_1", "L_{0,3}"]);
}

#[test]
fn smooth_check_keys_by_prime() {
    let out = eqcurve(&[
        "smooth-check",
        "--config",
        path_str(&order_four()),
        "--prime",
        "5,7,3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["smoothness"]["5"]["claim"], "smooth_over_fp");
    assert_eq!(r["smoothness"]["7"]["claim"], "smooth_over_fp");
    // 3 divides the degree
    assert_eq!(r["smoothness"]["3"]["claim"], "unverified");
}

#[test]
fn find_curve_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = eqcurve(&[
        "find-curve",
        "--config",
        path_str(&order_four()),
        "--max-degree",
        "5",
        "--prime",
        "5",
        "--cert-dir",
        path_str(dir.path()),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = json_of(&out);
    assert_eq!(r["status"], "connected");
    assert_eq!(r["check"]["passed"], true);
    let cert = r["certificate_path"].as_str().unwrap();
    let v = eqcurve(&["verify", cert, "--config", path_str(&order_four())]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(json_of(&v)["passed"], true);
}

#[test]
fn find_curve_exhausted_exits_one() {
    let out = eqcurve(&[
        "find-curve",
        "--config",
        path_str(&order_four()),
        "--max-degree",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let r = json_of(&out);
    assert_eq!(r["status"], "unresolved");
    assert!(r["reason"].as_str().unwrap().contains("degree 1"));
}

#[test]
fn find_curve_without_f_exits_two() {
    let out = eqcurve(&[
        "find-curve",
        "--config",
        path_str(&config("degree_five_order_seven")),
        "--pair",
        "1,2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`F`"));
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

fn corrected_certificate() -> Value {
    json!({
        "kind": "explicit_curve",
        "endpoints": [1, 0],
        "field": {"prime": 5},
        "p1": {"a": 0, "b": 1},
        "twist": 1,
        "components": [[0, 3, 0, 0, 0, 1], [1, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 4, 0, 0]],
        "method": "external"
    })
}

#[test]
fn verify_published_and_corrected_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = order_four();
    // coefficients lambda = a = 1/2, b = -1, c = 1 as published: not on the cubic
    let published = json!({
        "kind": "explicit_curve",
        "endpoints": [1, 0],
        "field": "rational",
        "p1": {"a": 0, "b": 1},
        "twist": 1,
        "components": [["0", "1/2", "0", "0", "0", "1"], ["1/2", 0, 0, 0, 0, 0], [0, 0, -1, 0, 0, 0], [0, 0, 0, 1, 0, 0]]
    });
    let out = eqcurve(&[
        "verify",
        path_str(&write(dir.path(), "published.json", &published)),
        "--config",
        path_str(&cfg),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let checks = json_of(&out)["check"]["checks"].clone();
    let by_name = |n: &str| {
        checks
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == n)
            .unwrap()["passed"]
            .clone()
    };
    assert_eq!(by_name("membership"), false);
    assert_eq!(by_name("equivariance"), true);
    assert_eq!(by_name("endpoints"), true);

    let out = eqcurve(&[
        "verify",
        path_str(&write(
            dir.path(),
            "corrected.json",
            &corrected_certificate(),
        )),
        "--config",
        path_str(&cfg),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let mut bad = corrected_certificate();
    bad["components"][0][1] = json!(4);
    let out = eqcurve(&[
        "verify",
        path_str(&write(dir.path(), "bad.json", &bad)),
        "--config",
        path_str(&cfg),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("failed check: membership"));
}

#[test]
fn verify_rejects_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let text = serde_json::to_string(&corrected_certificate()).unwrap();
    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    let out = eqcurve(&[
        "verify",
        path_str(&truncated),
        "--config",
        path_str(&order_four()),
    ]);
    assert_eq!(out.status.code(), Some(2));

    let mut unknown = corrected_certificate();
    unknown["kind"] = json!("rumour");
    let out = eqcurve(&[
        "verify",
        path_str(&write(dir.path(), "u.json", &unknown)),
        "--config",
        path_str(&order_four()),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_is_complete_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &str| {
        vec![
            "report".to_string(),
            "--config".to_string(),
            order_four().display().to_string(),
            "--out".to_string(),
            dir.path().join(out).display().to_string(),
        ]
    };
    let a = Command::new(env!("CARGO_BIN_EXE_eqcurve"))
        .args(args("a.json"))
        .output()
        .unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_eqcurve"))
        .args(args("b.json"))
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    let ta = std::fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(ta, std::fs::read(dir.path().join("b.json")).unwrap());
    let r: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(r["connectivity"]["complete"], true);
    let mut reps: Vec<u64> = r["connectivity"]["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["coordinate"].as_u64().unwrap())
        .collect();
    reps.sort();
    assert_eq!(reps, [0, 1, 3]);
}

#[test]
fn report_binary_plus_powers_uses_solver() {
    let out = eqcurve(&[
        "report",
        "--config",
        path_str(&config("binary_plus_powers")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    let edges = r["connectivity"]["edges"].as_array().unwrap();
    let edge = edges
        .iter()
        .find(|e| {
            let mut ends: Vec<u64> = e["certificate"]["endpoints"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap())
                .collect();
            ends.sort();
            ends == [0, 1]
        })
        .expect("x_0 - x_1 edge");
    assert_eq!(edge["certificate"]["method"], "diagonal_solver");
}

#[test]
fn report_on_empty_system_warns() {
    let out = eqcurve(&["report", "--config", path_str(&config("empty_system"))]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["basis"]["base_locus"], "everything");
    assert!(r["connectivity"]["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .all(|p| p["status"] == "unresolved"));
    assert!(!r["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn connectivity_writes_reverifiable_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let out = eqcurve(&[
        "connectivity",
        "--config",
        path_str(&order_four()),
        "--cert-dir",
        path_str(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    let paths = r["connectivity"]["certificate_paths"].as_array().unwrap();
    assert_eq!(paths.len(), 3);
    for p in paths {
        let v = eqcurve(&[
            "verify",
            p.as_str().unwrap(),
            "--config",
            path_str(&order_four()),
        ]);
        assert_eq!(v.status.code(), Some(0), "{p}");
    }
}

#[test]
fn missing_config_and_bad_flags_exit_two() {
    assert_eq!(eqcurve(&["classify"]).status.code(), Some(2));
    assert_eq!(
        eqcurve(&["classify", "--config", "/nonexistent.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        eqcurve(&[
            "classify",
            "--config",
            path_str(&order_four()),
            "--pair",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(eqcurve(&["frobnicate"]).status.code(), Some(2));
}

fn base_config() -> Value {
    serde_json::from_str(&std::fs::read_to_string(order_four()).unwrap()).unwrap()
}

/// Exit code of an in-process run over a config value.
fn exit_for(cfg: &Value) -> i32 {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "c.json", cfg);
    let cli = Cli::try_parse_from(["eqcurve", "classify", "--config", path_str(&p)]).unwrap();
    match run(&cli) {
        Ok(o) => o.exit,
        Err(e) => e.exit_code(),
    }
}

#[derive(Debug, Clone)]
enum Breakage {
    DropField(&'static str),
    WrongType(&'static str),
    ShortWeights,
    BadPair(usize, usize),
    NonPrime(u64),
    ForeignTerm(Vec<u32>),
    UnknownField,
}

fn breakage() -> impl Strategy<Value = Breakage> {
    prop_oneof![
        prop::sample::select(vec!["n", "d", "l", "weights"]).prop_map(Breakage::DropField),
        prop::sample::select(vec!["n", "d", "l", "weights", "F", "pair"])
            .prop_map(Breakage::WrongType),
        Just(Breakage::ShortWeights),
        (0..6usize, 0..6usize)
            .prop_filter("invalid pair", |(i, j)| i == j || *i > 3 || *j > 3)
            .prop_map(|(i, j)| Breakage::BadPair(i, j)),
        prop::sample::select(vec![0u64, 1, 4, 9, 15, 21]).prop_map(Breakage::NonPrime),
        prop::collection::vec(0..4u32, 4)
            .prop_filter("breaks eigenvalue or degree", |e| {
                let w = [3u32, 2, 0, 1];
                e.iter().sum::<u32>() != 3
                    || e.iter().zip(w).map(|(a, b)| a * b).sum::<u32>() % 4 != 0
            })
            .prop_map(Breakage::ForeignTerm),
        Just(Breakage::UnknownField),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn malformed_configs_exit_two(b in breakage()) {
        let mut c = base_config();
        match &b {
            Breakage::DropField(k) => { c.as_object_mut().unwrap().remove(*k); }
            Breakage::WrongType(k) => c[*k] = json!("oops"),
            Breakage::ShortWeights => c["weights"] = json!([3, 2, 0]),
            Breakage::BadPair(i, j) => c["pair"] = json!([i, j]),
            Breakage::NonPrime(p) => c["primes"] = json!([p]),
            Breakage::ForeignTerm(e) => c["F"].as_array_mut().unwrap().push(json!({"coeff": 1, "exp": e})),
            Breakage::UnknownField => c["colour"] = json!("blue"),
        }
        prop_assert_eq!(exit_for(&c), 2, "{:?}", b);
    }
}

#[test]
fn untouched_config_exits_zero() {
    assert_eq!(exit_for(&base_config()), 0);
}
