use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qzspec::witness::WitnessArchive;
use qzspec::{parse_tensor_file, to_canonical_string, Tensor};
use qzspec_core::qspec::gaussian_tensor;
use qzspec_core::{ComplexSymTensor, SolverConfig, SymTensor};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

fn qzspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qzspec")).args(args).output().unwrap()
}

fn json_of(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn values(v: &Value) -> Vec<f64> {
    v["result"]["eigenvalues"].as_array().unwrap().iter().map(|e| e["lambda"].as_f64().unwrap()).collect()
}

fn fixture() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/witness_m3n2.json").to_string()
}

#[test]
fn generated_files_round_trip_byte_for_byte() {
    for kind in ["diagonal", "odeco", "nonnegative", "case6"] {
        let o = qzspec(&["gen", "--kind", kind, "--m", "4", "--n", "3", "--seed", "5"]);
        assert!(o.status.success(), "{kind}");
        let text = String::from_utf8(o.stdout).unwrap();
        let t = parse_tensor_file(&text).unwrap();
        assert_eq!(to_canonical_string(&t), text, "{kind}");
    }
}

#[test]
fn diagonal_q_spectrum_from_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "d.json", &to_canonical_string(&Tensor::Real(SymTensor::diagonal(3, &[2.0, -5.0]).unwrap())));
    let v = json_of(&qzspec(&["qeig", &f]));
    assert!(v["command"].as_str().unwrap().starts_with("qeig "));
    assert_eq!(v["result"]["entanglement_eigenvalue"].as_f64().unwrap(), 5.0);
    assert_eq!(v["result"]["count"], 6);
    assert_eq!(v["result"]["count_bound"], 15);
    assert_eq!(v["result"]["pairing_ok"], true);
    let z = json_of(&qzspec(&["zeig", &f, "--oracle"]));
    assert_eq!(values(&z).len(), 6);
    assert_eq!(z["heuristic"], false);
}

#[test]
fn embedding_then_zeig_matches_qeig() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = ChaCha8Rng::seed_from_u64(3);
    let psi = ComplexSymTensor::new(gaussian_tensor(3, 2, &mut r).unwrap(), gaussian_tensor(3, 2, &mut r).unwrap()).unwrap();
    let f = write(dir.path(), "psi.json", &to_canonical_string(&Tensor::Complex(psi)));
    let q = values(&json_of(&qzspec(&["qeig", &f])));
    let o = qzspec(&["embed", &f]);
    let embedded = write(dir.path(), "t.json", std::str::from_utf8(&json_of_raw(&o)).unwrap());
    let z = values(&json_of(&qzspec(&["zeig", &embedded])));
    assert_eq!(q.len(), z.len());
    for (a, b) in q.iter().zip(&z) {
        assert!((a - b).abs() < 1e-8, "{q:?} vs {z:?}");
    }
}

fn json_of_raw(o: &Output) -> Vec<u8> {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    o.stdout.clone()
}

#[test]
fn runs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = ChaCha8Rng::seed_from_u64(4);
    let f = write(dir.path(), "t.json", &to_canonical_string(&Tensor::Real(gaussian_tensor(4, 3, &mut r).unwrap())));
    let run = || {
        let mut v = json_of(&qzspec(&["zeig", &f, "--seed", "9", "--starts", "40"]));
        v.as_object_mut().unwrap().remove("wall_time_s");
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn text_output_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "d.json", &to_canonical_string(&Tensor::Real(SymTensor::diagonal(4, &[1.0, -3.0]).unwrap())));
    let o = qzspec(&["zeig", &f, "--output", "text"]);
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().contains('3'));
    let out = dir.path().join("r.json");
    let o = qzspec(&["zeig", &f, "--out", out.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["result"]["z_spectral_radius"].as_f64().unwrap(), 3.0);
}

#[test]
fn verify_accepts_true_pairs_and_rejects_false_ones() {
    let dir = tempfile::tempdir().unwrap();
    let tensor = json!({
        "order": 3, "dim": 2, "field": "real",
        "entries": [{"idx": [1, 1, 1], "re": 2.0}, {"idx": [2, 2, 2], "re": -5.0}]
    });
    let good = json!({"tensor": tensor, "kind": "z", "pairs": [
        {"lambda": 2.0, "re": [1.0, 0.0]}, {"lambda": -2.0, "re": [-1.0, 0.0]}
    ]});
    let f = write(dir.path(), "good.json", &good.to_string());
    let v = json_of(&qzspec(&["verify", &f]));
    assert_eq!(v["result"]["ok"], true);

    let bad = json!({"tensor": tensor, "kind": "z", "pairs": [{"lambda": 3.0, "re": [1.0, 0.0]}]});
    let f = write(dir.path(), "bad.json", &bad.to_string());
    assert_eq!(qzspec(&["verify", &f]).status.code(), Some(1));

    let q = json!({"tensor": tensor, "kind": "q", "pairs": [
        {"lambda": 5.0, "re": [0.0, 0.5], "im": [0.0, 0.8660254037844386]}
    ]});
    let f = write(dir.path(), "q.json", &q.to_string());
    let v = json_of(&qzspec(&["verify", &f]));
    assert_eq!(v["result"]["ok"], true, "{v}");
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(qzspec(&["zeig", "/nonexistent/t.json"]).status.code(), Some(2));
    assert_eq!(qzspec(&["frobnicate"]).status.code(), Some(2));
    let f = write(dir.path(), "junk.json", "{\"order\": 3}");
    assert_eq!(qzspec(&["zeig", &f]).status.code(), Some(2));
    let conflict = json!({
        "order": 2, "dim": 2, "field": "real",
        "entries": [{"idx": [1, 2], "re": 1.0}, {"idx": [2, 1], "re": 2.0}]
    });
    let f = write(dir.path(), "c.json", &conflict.to_string());
    assert_eq!(qzspec(&["zeig", &f]).status.code(), Some(2));
    assert_eq!(qzspec(&["gen", "--kind", "nope", "--m", "3", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn matrices_report_an_exact_ratio() {
    let v = json_of(&qzspec(&["ratio-search", "--m", "2", "--n", "3", "--budget", "5"]));
    assert_eq!(v["result"]["best_ratio"].as_f64().unwrap(), 1.0);
    assert_eq!(v["result"]["ceiling"], "1");
}

#[test]
fn seeded_search_writes_a_loadable_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.json");
    let fx = fixture();
    let args = ["ratio-search", "--m", "3", "--n", "2", "--budget", "6", "--seed-witness", &fx, "--witness-out", out.to_str().unwrap()];
    let v = json_of(&qzspec(&args));
    let best = v["result"]["best_ratio"].as_f64().unwrap();
    assert!(best >= 1.05, "{best}");
    let archive = WitnessArchive::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!((archive.metadata.ratio - best).abs() < 1e-12);
    archive.verified_tensor(&SolverConfig::default()).unwrap();
}

#[test]
fn tampered_witness_is_rejected() {
    let cfg = SolverConfig::default();
    let archive = WitnessArchive::parse(&std::fs::read_to_string(fixture()).unwrap()).unwrap();
    archive.verified_tensor(&cfg).unwrap();
    let mut forged = archive.clone();
    forged.metadata.ratio += 0.01;
    assert!(forged.verified_tensor(&cfg).is_err());
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "forged.json", &forged.to_json());
    let o = qzspec(&["ratio-search", "--m", "3", "--n", "2", "--budget", "2", "--seed-witness", &f]);
    assert_ne!(o.status.code(), Some(0));
}
