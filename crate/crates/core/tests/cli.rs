use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn slc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slc"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p: PathBuf = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn read_json(path: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

const SINGLE_ROW: &str = r#"{
  "version": "slc-1", "machines": 2, "jobs": 4,
  "constraints": [ { "coeffs": [24, 8, 3, 2], "sense": ">=", "rhs": 56 } ]
}"#;

#[test]
fn single_constraint_closed_form() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "i.json", SINGLE_ROW);
    let out = dir.path().join("s.json").display().to_string();
    let r = slc(&[
        "solve",
        "--instance",
        &inst,
        "--algorithm",
        "single-constraint",
        "--output",
        &out,
    ]);
    assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stderr));
    let sol = read_json(&out);
    assert_eq!(sol["makespan"].as_f64(), Some(1.75));
    assert_eq!(sol["status"], "OPTIMAL");
    assert_eq!(sol["algorithm"], "single_constraint");
}

#[test]
fn ptas_needs_epsilon() {
    let r = slc(&[
        "solve",
        "--instance",
        &data("shared_job.json"),
        "--algorithm",
        "ptas",
    ]);
    assert_eq!(code(&r), 1);
    assert!(String::from_utf8_lossy(&r.stderr).contains("--epsilon"));
}

#[test]
fn auto_on_shared_job_instance() {
    let r = slc(&["solve", "--instance", &data("shared_job.json")]);
    assert_eq!(code(&r), 0);
    let sol: Value = serde_json::from_slice(&r.stdout).unwrap();
    assert!(sol["status"] == "APPROX" || sol["status"] == "OPTIMAL");
    let c = sol["makespan"].as_f64().unwrap();
    let ratio = sol["ratio_guarantee"].as_f64().unwrap();
    assert!(
        c >= 10.0 / 3.0 - 1e-6 && c <= ratio * 10.0 / 3.0 + 1e-6,
        "{c}"
    );
}

#[test]
fn every_algorithm_round_trips_through_verify() {
    let dir = TempDir::new().unwrap();
    let inst = data("shared_job.json");
    for alg in ["auto", "oracle", "enumeration", "ptas", "mls", "lp-general"] {
        let out = dir.path().join(format!("{alg}.json")).display().to_string();
        let r = slc(&[
            "solve",
            "--instance",
            &inst,
            "--algorithm",
            alg,
            "--epsilon",
            "0.5",
            "--output",
            &out,
        ]);
        assert_eq!(code(&r), 0, "{alg}: {}", String::from_utf8_lossy(&r.stderr));
        let v = slc(&["verify", "--instance", &inst, "--solution", &out]);
        assert_eq!(code(&v), 0, "{alg}: {}", String::from_utf8_lossy(&v.stdout));
    }
}

#[test]
fn verify_catches_edits() {
    let dir = TempDir::new().unwrap();
    let inst = data("alloy.json");
    let out = dir.path().join("s.json").display().to_string();
    assert_eq!(
        code(&slc(&["solve", "--instance", &inst, "--output", &out])),
        0
    );
    let original = read_json(&out);

    let mut edited = original.clone();
    edited["makespan"] = Value::from(original["makespan"].as_f64().unwrap() - 1.0);
    let bad = write(&dir, "makespan.json", &edited.to_string());
    let v = slc(&["verify", "--instance", &inst, "--solution", &bad]);
    assert_ne!(code(&v), 0);
    assert!(String::from_utf8_lossy(&v.stdout).contains("makespan mismatch"));

    let mut edited = original.clone();
    edited["assignment"][0] = Value::from(2);
    let bad = write(&dir, "machine.json", &edited.to_string());
    let v = slc(&["verify", "--instance", &inst, "--solution", &bad]);
    assert_ne!(code(&v), 0);
    assert!(String::from_utf8_lossy(&v.stdout).contains("machine index out of range"));
}

#[test]
fn infeasible_exits_two() {
    let dir = TempDir::new().unwrap();
    let inst = write(
        &dir,
        "i.json",
        r#"{ "version": "slc-1", "machines": 2, "jobs": 2, "constraints": [
            { "coeffs": [1, 1], "sense": ">=", "rhs": 4 },
            { "coeffs": [1, 1], "sense": "<=", "rhs": 3 } ] }"#,
    );
    for alg in ["auto", "oracle", "mls", "lp-k2"] {
        let r = slc(&["solve", "--instance", &inst, "--algorithm", alg]);
        assert_eq!(code(&r), 2, "{alg}");
        let sol: Value = serde_json::from_slice(&r.stdout).unwrap();
        assert_eq!(sol["status"], "INFEASIBLE");
    }
}

#[test]
fn parse_and_usage_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let short = write(
        &dir,
        "short.json",
        &SINGLE_ROW.replace("[24, 8, 3, 2]", "[24, 8, 3]"),
    );
    let r = slc(&["solve", "--instance", &short]);
    assert_eq!(code(&r), 1);
    assert!(String::from_utf8_lossy(&r.stderr).contains("row 0: expected 4 coefficients"));

    let version = write(&dir, "version.json", &SINGLE_ROW.replace("slc-1", "slc-9"));
    let r = slc(&["solve", "--instance", &version]);
    assert_eq!(code(&r), 1);
    assert!(String::from_utf8_lossy(&r.stderr).contains("unsupported version"));

    assert_eq!(
        code(&slc(&[
            "solve",
            "--instance",
            &short,
            "--algorithm",
            "magic"
        ])),
        1
    );
    assert_eq!(code(&slc(&["frobnicate"])), 1);
    assert_eq!(code(&slc(&["--help"])), 0);
}

#[test]
fn generate_is_deterministic() {
    let dir = TempDir::new().unwrap();
    for family in ["identity", "blend", "interval"] {
        let a = dir.path().join("a.json").display().to_string();
        let b = dir.path().join("b.json").display().to_string();
        for out in [&a, &b] {
            let args = [
                "generate", "--n", "6", "--m", "3", "--k", "4", "--family", family, "--seed", "99",
                "--output", out,
            ];
            assert_eq!(code(&slc(&args)), 0);
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        let r = slc(&["solve", "--instance", &a]);
        assert_eq!(code(&r), 0, "{family} instance not solved");
    }
}

#[test]
fn bench_table4() {
    let r = slc(&["bench", "--suite", "table4"]);
    assert_eq!(code(&r), 0);
    let mut reader = csv::Reader::from_reader(r.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 18);
    let find = |k: &str, m: &str| {
        rows.iter()
            .find(|r| &r[0] == k && &r[1] == m)
            .unwrap()
            .clone()
    };
    let r = find("20", "100");
    assert!((r[3].parse::<f64>().unwrap() - 12.0).abs() < 0.005);
    assert!((r[4].parse::<f64>().unwrap() - 1.1364).abs() < 0.00005);
    let r = find("50", "10");
    assert!((r[3].parse::<f64>().unwrap() - 8.78).abs() < 0.005);
    assert!((r[4].parse::<f64>().unwrap() - 8.2).abs() < 0.00005);
}

#[test]
fn bench_ratios() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.csv").display().to_string();
    assert_eq!(
        code(&slc(&["bench", "--suite", "ratios", "--out", &out])),
        0
    );
    let mut reader = csv::Reader::from_path(&out).unwrap();
    let headers = reader.headers().unwrap().clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let (oracle, auto, mls, mls_ratio, mls_bound) = (
        col("oracle"),
        col("auto"),
        col("mls"),
        col("mls_ratio"),
        col("mls_bound"),
    );
    let mut rows = 0;
    for rec in reader.records() {
        let rec = rec.unwrap();
        let f = |i: usize| rec[i].parse::<f64>().unwrap();
        assert!(f(mls_ratio) <= f(mls_bound) + 1e-6);
        assert!(f(auto) >= f(oracle) - 1e-6);
        assert!(f(mls) >= f(oracle) - 1e-6);
        rows += 1;
    }
    assert_eq!(rows, 30);
}
