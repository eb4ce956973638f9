use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use imw_core::corpus::{builtin_corpus, collapsing_action, cyclic_group, klein_four, m3, m7, Payload};
use imw_core::docs::{AlmostActionDoc, FactorSystemDoc};
use imw_core::mtab::{parse_mtab, parse_mtab_stream, write_mtab};
use imw_core::report::to_sorted_json;
use imw_core::FiniteMonoid;
use tempfile::TempDir;

fn imw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_imw"))
        .args(args)
        .env_remove("IMW_BUDGET")
        .output()
        .expect("run imw")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn mtab_file(dir: &TempDir, name: &str, m: &FiniteMonoid) -> PathBuf {
    write(dir, &format!("{name}.mtab"), &write_mtab(m))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_m3_passes() {
    let dir = TempDir::new().unwrap();
    let f = mtab_file(&dir, "m3", &m3());
    let out = imw(&["check", s(&f)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("f_inverse        yes"));
}

#[test]
fn check_json_matches_golden_file() {
    let dir = TempDir::new().unwrap();
    let f = mtab_file(&dir, "M3", &m3());
    let out = imw(&["--json", "check", s(&f)]);
    assert_eq!(code(&out), 0);
    let golden = include_str!("golden/m3_check.json");
    assert_eq!(stdout(&out), golden);
}

#[test]
fn exit_codes_on_builtin_corpus() {
    let dir = TempDir::new().unwrap();
    for inst in builtin_corpus() {
        let Payload::Monoid(m) = &inst.payload else { continue };
        let f = mtab_file(&dir, &inst.name, m);
        let out = imw(&["--json", "check", s(&f)]);
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        for (key, &expected) in &inst.expected {
            assert_eq!(report["verdicts"][key]["holds"], expected, "{} {key}", inst.name);
        }
        let all_true = ["inverse", "e_unitary", "f_inverse", "clifford", "weakly_schreier"]
            .iter()
            .all(|k| report["verdicts"][k]["holds"] == true);
        assert_eq!(code(&out), if all_true { 0 } else { 1 }, "{}", inst.name);
        if inst.expected.values().any(|&v| !v) {
            assert_eq!(code(&out), 1, "{}", inst.name);
        }
    }
}

#[test]
fn b21_human_report_has_witness() {
    let dir = TempDir::new().unwrap();
    let corpus = builtin_corpus();
    let b = corpus.iter().find(|i| i.name == "B2^1").unwrap();
    let f = mtab_file(&dir, "b21", b.as_monoid().unwrap());
    let out = imw(&["check", s(&f)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("is idempotent but a is not"), "{}", stdout(&out));
}

#[test]
fn extension_m7_reports_empty_fiber() {
    let dir = TempDir::new().unwrap();
    let f = mtab_file(&dir, "m7", &m7());
    let out = imw(&["extension", s(&f)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("EmptyCandidateFiber"));

    let out = imw(&["--json", "extension", s(&f)]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["weakly_schreier"]["witness"]["error"], "EmptyCandidateFiber");
}

#[test]
fn extension_m3_has_splitting() {
    let dir = TempDir::new().unwrap();
    let f = mtab_file(&dir, "m3", &m3());
    let out = imw(&["--json", "extension", s(&f)]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["weakly_schreier"]["splitting"], serde_json::json!([0, 2]));
    assert_eq!(v["cosplitting"]["ell"], serde_json::json!([0, 1, 1]));
}

#[test]
fn extension_without_kernel_condition() {
    let dir = TempDir::new().unwrap();
    let z20 = FiniteMonoid::new(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 0]], 0).unwrap();
    let f = mtab_file(&dir, "z20", &z20);
    let out = imw(&["extension", s(&f)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("KernelMismatch"));
}

#[test]
fn iso_identity_and_non_iso() {
    let dir = TempDir::new().unwrap();
    let a = mtab_file(&dir, "a", &m3());
    let out = imw(&["--json", "iso", s(&a), s(&a)]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["forward"], serde_json::json!([0, 1, 2]));

    let z4 = mtab_file(&dir, "z4", &cyclic_group(4));
    let v4 = mtab_file(&dir, "v4", &klein_four());
    let out = imw(&["iso", s(&z4), s(&v4)]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "NotIsomorphic\n");
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.mtab", "mtab v1\nn=2\nid=0\n0 1\n1\n");
    let out = imw(&["check", s(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 5"));

    let missing = dir.path().join("missing.mtab");
    assert_eq!(code(&imw(&["check", s(&missing)])), 2);
    assert_eq!(code(&imw(&["frobnicate"])), 2);
    assert_eq!(code(&imw(&["enumerate", "--kind", "semilattice"])), 2);

    // Extension and decompose need an inverse monoid.
    let not_inverse = FiniteMonoid::new(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 1]], 0).unwrap();
    let f = mtab_file(&dir, "ni", &not_inverse);
    assert_eq!(code(&imw(&["extension", s(&f)])), 2);
    assert_eq!(code(&imw(&["decompose", s(&f)])), 2);
    assert_eq!(code(&imw(&["check", s(&f)])), 1);
}

#[test]
fn construct_from_json_documents() {
    let dir = TempDir::new().unwrap();
    let aa = write(&dir, "aa.json", &to_sorted_json(&AlmostActionDoc::from_action(&collapsing_action())));
    let out = imw(&["construct", "fproduct", s(&aa)]);
    assert_eq!(code(&out), 0);
    assert_eq!(parse_mtab(&stdout(&out)).unwrap().rows(), m3().rows());

    let gl = write(&dir, "gl.json", r#"{"group": "Z2", "semilattice": "CH2", "f": [0, 1]}"#);
    let out = imw(&["construct", "gluing", s(&gl)]);
    assert_eq!(code(&out), 0);
    assert_eq!(parse_mtab(&stdout(&out)).unwrap().rows(), m3().rows());

    let corpus = builtin_corpus();
    let Payload::FactorSystem(fs) = &corpus.iter().find(|i| i.name == "Z2-on-CH2-collapse-fs").unwrap().payload
    else {
        panic!("factor system payload")
    };
    let fsf = write(&dir, "fs.json", &to_sorted_json(&FactorSystemDoc::from_system(fs)));
    let out = imw(&["construct", "crossed", s(&fsf)]);
    assert_eq!(code(&out), 0);
    assert_eq!(parse_mtab(&stdout(&out)).unwrap().len(), 3);

    let bad = write(&dir, "bad.json", r#"{"group": "Z2", "semilattice": "CH2", "f": [1, 0]}"#);
    assert_eq!(code(&imw(&["construct", "gluing", s(&bad)])), 2);
}

#[test]
fn decompose_outputs() {
    let dir = TempDir::new().unwrap();
    let f = mtab_file(&dir, "m3", &m3());
    let out = imw(&["--json", "decompose", s(&f)]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["almost_action"]["dot"], serde_json::json!([[0, 1], [1, 1]]));
    assert_eq!(v["gluing_map"]["f"], serde_json::json!([0, 1]));

    // The decomposition round-trips through construct.
    let doc = write(&dir, "aa.json", &to_sorted_json(&v["almost_action"]));
    let out = imw(&["construct", "fproduct", s(&doc)]);
    assert_eq!(parse_mtab(&stdout(&out)).unwrap().rows(), m3().rows());

    let d = mtab_file(&dir, "swap", builtin_corpus().iter().find(|i| i.name == "D4xZ2-swap").unwrap().as_monoid().unwrap());
    let out = imw(&["--json", "decompose", s(&d)]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["gluing_map"].is_null());

    let f7 = mtab_file(&dir, "m7", &m7());
    assert_eq!(code(&imw(&["decompose", s(&f7)])), 1);
}

#[test]
fn enumerate_kinds() {
    let out = imw(&["enumerate", "--kind", "semilattice", "--max-n", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(parse_mtab_stream(&stdout(&out)).unwrap().len(), 5);

    let out = imw(&["enumerate", "--kind", "inverse-monoid", "--max-n", "3"]);
    assert_eq!(parse_mtab_stream(&stdout(&out)).unwrap().len(), 7);

    let out = imw(&["--json", "enumerate", "--kind", "gluing-map", "--max-n", "2", "--group", "Z2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);

    let out = imw(&["enumerate", "--kind", "almost-action", "--max-n", "3", "--group", "Z3"]);
    assert_eq!(stdout(&out).lines().count(), 1 + 2 + 3);

    assert_eq!(code(&imw(&["enumerate", "--kind", "inverse-monoid", "--max-n", "6"])), 2);
    assert_eq!(code(&imw(&["enumerate", "--kind", "almost-action", "--max-n", "2", "--group", "Q8"])), 2);
}

#[test]
fn budget_flag_and_environment() {
    let args = ["enumerate", "--kind", "almost-action", "--max-n", "4", "--group", "Z4"];
    assert_eq!(code(&imw(&args)), 0);
    let mut with_flag = vec!["--budget", "10"];
    with_flag.extend(args);
    let out = imw(&with_flag);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds budget 10"));

    let out = Command::new(env!("CARGO_BIN_EXE_imw")).args(args).env("IMW_BUDGET", "10").output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn help_exits_zero() {
    assert_eq!(code(&imw(&["--help"])), 0);
}
