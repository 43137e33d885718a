use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use stpef::cli::run;
use stpef::formulations::martin_stp;
use stpef::graph::{GraphFile, Multigraph};
use stpef::verify::corpus;
use stpef::verify::mutation::mutate;

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn stpef(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["stpef"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write_graph(dir: &Path, name: &str, g: &Multigraph) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(
        &p,
        serde_json::to_string(&GraphFile::from_graph(g)).unwrap(),
    )
    .unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn build_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "k4.json", &corpus::complete(4));
    let ef = dir.path().join("k4.ef.json");
    let o = stpef(&[
        "build",
        "--input",
        s(&g),
        "--method",
        "martin",
        "--out",
        s(&ef),
    ]);
    assert_eq!(o.code, 0, "{}", o.err);
    assert_eq!(json(&o.out)["size"], 48);

    for mode in ["exact", "sampled"] {
        let o = stpef(&["verify", "--ef", s(&ef), "--graph", s(&g), "--mode", mode]);
        assert_eq!(o.code, 0, "{mode}: {}{}", o.out, o.err);
        assert_eq!(json(&o.out)["status"], "pass");
    }
}

#[test]
fn subp_size() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "k4.json", &corpus::complete(4));
    let o = stpef(&["build", "--input", s(&g), "--method", "subp"]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o.out)["size"], 22);
}

#[test]
fn williams_rejects_k5() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "k5.json", &corpus::complete(5));
    let o = stpef(&["build", "--input", s(&g), "--method", "williams"]);
    assert_eq!(o.code, 1);
    assert!(o.err.contains("non-planar"), "{}", o.err);
    assert!(o.out.is_empty());
}

#[test]
fn kapex_needs_apex_set() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "k5.json", &corpus::complete(5));
    assert_eq!(
        stpef(&["build", "--input", s(&g), "--method", "kapex"]).code,
        2
    );
    let o = stpef(&[
        "build",
        "--input",
        s(&g),
        "--method",
        "kapex",
        "--apex-set",
        "0",
    ]);
    assert_eq!(o.code, 0, "{}", o.err);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(stpef(&["build", "--bogus"]).code, 2);
    assert_eq!(stpef(&["frobnicate"]).code, 2);
    let o = stpef(&[
        "bench",
        "--family",
        "hypercube",
        "--kmin",
        "3",
        "--kmax",
        "4",
    ]);
    assert_eq!(o.code, 2);
    assert!(o.err.contains("hypercube"));
    let o = stpef(&[
        "bench",
        "--family",
        "torus-grid",
        "--kmin",
        "3",
        "--kmax",
        "4",
        "--methods",
        "magic",
    ]);
    assert_eq!(o.code, 2);

    for (family, k) in [("torus-grid", "2"), ("complete", "0")] {
        let o = stpef(&["bench", "--family", family, "--kmin", k, "--kmax", "4"]);
        assert_eq!(o.code, 2, "{family}");
        assert!(o.err.contains("--kmin"));
    }

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 3, "edges": [[0, 1]], "colour": "red"}"#).unwrap();
    assert_eq!(
        stpef(&["build", "--input", s(&bad), "--method", "subp"]).code,
        2
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        stpef(&["build", "--input", s(&missing), "--method", "subp"]).code,
        2
    );
}

#[test]
fn empty_bench_range() {
    let o = stpef(&[
        "bench",
        "--family",
        "torus-grid",
        "--kmin",
        "5",
        "--kmax",
        "4",
    ]);
    assert_eq!(o.code, 0);
    assert_eq!(o.out.lines().count(), 1);
    assert!(o.out.starts_with("family,k,n,m"));
}

#[test]
fn torus_bench_table() {
    let o = stpef(&[
        "bench",
        "--family",
        "torus-grid",
        "--kmin",
        "3",
        "--kmax",
        "12",
    ]);
    assert_eq!(o.code, 0, "{}", o.err);
    let mut lines = o.out.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 10);
    for (i, r) in rows.iter().enumerate() {
        let k = 3 + i;
        assert_eq!(r[col("k")], k.to_string());
        assert_eq!(r[col("n")], (k * k).to_string());
        assert_eq!(r[col("m")], (2 * k * k).to_string());
        assert_eq!(r[col("martin")], (4 * k.pow(4)).to_string());
        assert!(!r[col("genus")].is_empty());
    }
}

#[test]
fn corrupted_formulation_fails_with_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = corpus::complete(4);
    let g = write_graph(dir.path(), "k4.json", &k4);
    let f = martin_stp(&k4).unwrap();
    let mut caught = 0;
    for seed in 0..5 {
        let (bad, _) = mutate(&f, seed).unwrap();
        let ef = dir.path().join(format!("bad{seed}.json"));
        std::fs::write(&ef, bad.to_json()).unwrap();
        for mode in ["exact", "sampled"] {
            let o = stpef(&["verify", "--ef", s(&ef), "--graph", s(&g), "--mode", mode]);
            let v = json(&o.out);
            if o.code == 1 {
                caught += 1;
                assert_eq!(v["status"], "fail");
                let failing: Vec<&Value> = v["checks"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .filter(|c| c["status"] == "fail")
                    .collect();
                assert!(!failing.is_empty());
                assert!(failing.iter().all(|c| !c["counterexample"].is_null()));
            } else {
                assert_eq!(o.code, 0);
            }
        }
    }
    assert!(caught > 0);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "c3xc3.json", &corpus::torus_grid(3));
    let runs: Vec<(String, Vec<u8>)> = (0..2)
        .map(|i| {
            let ef = dir.path().join(format!("ef{i}.json"));
            let o = stpef(&[
                "build",
                "--input",
                s(&g),
                "--method",
                "genus",
                "--out",
                s(&ef),
            ]);
            assert_eq!(o.code, 0, "{}", o.err);
            let v = stpef(&[
                "verify",
                "--ef",
                s(&ef),
                "--graph",
                s(&g),
                "--mode",
                "sampled",
                "--seed",
                "7",
            ]);
            assert_eq!(v.code, 0, "{}", v.out);
            (o.out + &v.out, std::fs::read(&ef).unwrap())
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_stpef");
    let status = Command::new(bin).arg("--nonsense").status().unwrap();
    assert_eq!(status.code(), Some(2));
    let out = Command::new(bin)
        .args([
            "bench", "--family", "complete", "--kmin", "3", "--kmax", "5",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 4);
}
