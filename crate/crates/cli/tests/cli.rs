use std::path::PathBuf;
use std::process::Command as Process;

use orbitcat_cli::{run, verify, Command, Flags, Status};
use serde_json::Value;

fn spec(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../corpus/{name}.spec"));
    std::fs::read_to_string(p).unwrap()
}

const ALGEBRAS: [&str; 10] =
    ["a2", "a3", "three_cycle", "ladder2", "ladder3", "ladder4", "ladder5", "cyclic_2_1", "cyclic_4_1", "cyclic_5_2"];

fn flags(seed: u64) -> Flags {
    Flags { seed, ..Flags::default() }
}

fn emitted() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for a in ALGEBRAS {
        for c in [Command::Info, Command::Tau2, Command::Tilde, Command::NotDense] {
            out.push((format!("{a} {}", c.name()), run(&c, &spec(a), &flags(3)).unwrap().to_json()));
        }
    }
    for (a, m) in [("three_cycle", "S1"), ("three_cycle", "P2"), ("ladder2", "S1"), ("a2", "P1")] {
        out.push((format!("{a} cy {m}"), run(&Command::CySearch(m.into()), &spec(a), &flags(3)).unwrap().to_json()));
    }
    for m in ["W", "G", "S1", "P3"] {
        out.push((format!("grade {m}"), run(&Command::GradeTest(m.into()), &spec("three_cycle"), &flags(3)).unwrap().to_json()));
    }
    out
}

#[test]
fn verify_accepts_every_emitted_report() {
    for (what, r) in emitted() {
        let v = verify(&r).unwrap();
        assert_eq!(v.status, Status::Definite, "{what}: {}", v.to_json());
    }
}

#[test]
fn reports_are_deterministic() {
    for (c, a) in [(Command::NotDense, "cyclic_5_2"), (Command::GradeTest("W".into()), "three_cycle"), (Command::Tilde, "ladder3")] {
        let x = run(&c, &spec(a), &flags(11)).unwrap().to_json();
        let y = run(&c, &spec(a), &flags(11)).unwrap().to_json();
        assert_eq!(x, y, "{a}");
    }
}

/// Every matrix entry of `v`, as paths of keys and indices.
fn entries(v: &Value, at: &mut Vec<Value>, out: &mut Vec<Vec<Value>>) {
    match v {
        Value::Array(xs) if xs.iter().all(Value::is_u64) => {
            for i in 0..xs.len() {
                at.push(Value::from(i));
                out.push(at.clone());
                at.pop();
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                at.push(Value::from(i));
                entries(x, at, out);
                at.pop();
            }
        }
        _ => {}
    }
}

fn lookup<'a>(v: &'a mut Value, path: &[Value]) -> &'a mut Value {
    path.iter().fold(v, |v, k| match k {
        Value::String(s) => &mut v[s.as_str()],
        Value::Number(n) => &mut v[n.as_u64().unwrap() as usize],
        _ => unreachable!(),
    })
}

fn perturbed_reports(report: &str, root: &[&str], p: u64) -> Vec<String> {
    let v: Value = serde_json::from_str(report).unwrap();
    let root: Vec<Value> = root.iter().map(|&s| Value::from(s)).collect();
    let mut found = Vec::new();
    let mut at = root.clone();
    let mut base = v.clone();
    entries(lookup(&mut base, &root), &mut at, &mut found);
    assert!(!found.is_empty());
    found
        .into_iter()
        .map(|path| {
            let mut w = v.clone();
            let x = lookup(&mut w, &path);
            *x = Value::from((x.as_u64().unwrap() + 1) % p);
            serde_json::to_string(&w).unwrap()
        })
        .collect()
}

#[test]
fn verify_rejects_perturbed_certificates() {
    for a in ["three_cycle", "cyclic_2_1", "cyclic_4_1", "cyclic_5_2"] {
        let r = run(&Command::NotDense, &spec(a), &flags(5)).unwrap().to_json();
        for root in [&["result", "certificate", "witness", "mats"][..], &["result", "certificate", "presentation", "map", "entries"]] {
            for bad in perturbed_reports(&r, root, 101) {
                assert_eq!(verify(&bad).unwrap().status, Status::Rejected, "{a} {root:?}");
            }
        }
    }
    let r = run(&Command::GradeTest("G".into()), &spec("three_cycle"), &flags(5)).unwrap().to_json();
    for bad in perturbed_reports(&r, &["result", "certificate", "lift", "mats"], 101) {
        assert_eq!(verify(&bad).unwrap().status, Status::Rejected);
    }
    let r = run(&Command::GradeTest("W".into()), &spec("three_cycle"), &flags(5)).unwrap().to_json();
    for bad in perturbed_reports(&r, &["result", "input_module", "mats"], 101) {
        assert_eq!(verify(&bad).unwrap().status, Status::Rejected);
    }
    // a tampered spec no longer matches its digest
    let mut v: Value = serde_json::from_str(&r).unwrap();
    v["spec"] = Value::from(v["spec"].as_str().unwrap().replace("map rho1 = [1]", "map rho1 = [2]"));
    assert_eq!(verify(&v.to_string()).unwrap().status, Status::Rejected);
}

fn binary(args: &[&str]) -> (i32, Value) {
    let out = Process::new(env!("CARGO_BIN_EXE_orbitcat")).args(args).output().unwrap();
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).unwrap_or(Value::Null))
}

#[test]
fn exit_codes() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let tc = dir.join("three_cycle.spec");
    let tc = tc.to_str().unwrap();
    let (code, v) = binary(&["not-dense", tc, "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "not_dense");
    let (code, v) = binary(&["tau2", dir.join("a2.spec").to_str().unwrap()]);
    assert_eq!((code, &v["result"]["tau2_finite"], &v["result"]["top_degree"]), (0, &Value::from(true), &Value::from(0)));
    let (code, v) = binary(&["cy-search", tc, "S1", "--bmax", "1"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "inconclusive");
    let (code, v) = binary(&["grade-test", tc, "Nope"]);
    assert_eq!((code, &v["code"]), (1, &Value::from("usage")));
    let (code, v) = binary(&["info", dir.join("missing.spec").to_str().unwrap()]);
    assert_eq!((code, &v["code"]), (1, &Value::from("io")));
    let tmp = std::env::temp_dir().join(format!("orbitcat-report-{}.json", std::process::id()));
    let (code, _) = binary(&["not-dense", tc, "-o", tmp.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, v) = binary(&["verify", tmp.to_str().unwrap()]);
    assert_eq!((code, &v["accepted"]), (0, &Value::from(true)));
    std::fs::remove_file(tmp).unwrap();
}
