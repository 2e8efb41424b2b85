use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn hamtough(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamtough")).args(args).env_remove("HAMTOUGH_CAP").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn fixture_file(dir: &Path, name: &str) -> PathBuf {
    let out = hamtough(&["fixtures", name, "--format", "graph6"]);
    assert!(out.status.success());
    write(dir, &format!("{name}.g6"), std::str::from_utf8(&out.stdout).unwrap())
}

#[test]
fn figure1_queries() {
    let dir = tempfile::tempdir().unwrap();
    let fig = fixture_file(dir.path(), "figure1");
    let fig = fig.to_str().unwrap();
    let t = json(&hamtough(&["toughness", fig, "--format", "graph6"]));
    assert_eq!(t["toughness"], "1/1");
    let h = json(&hamtough(&["hamilton", fig, "--format", "graph6", "--engine", "both"]));
    assert_eq!(h["hamiltonian"], false);
    assert_eq!(h["engines_agree"], true);
    let d = json(&hamtough(&["tough-decide", fig, "--format", "graph6", "--t", "3/2"]));
    assert_eq!(d["tough"], false);
    assert!(d["counterexample"].is_array());
    let f = json(&hamtough(&["free-check", fig, "--format", "graph6", "--k", "2"]));
    assert!(f["free"].is_boolean());
}

#[test]
fn edge_list_input_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let c5 = c5.to_str().unwrap();
    assert_eq!(json(&hamtough(&["ham-connected", c5]))["hamiltonian_connected"], false);
    assert_eq!(json(&hamtough(&["toughness", c5]))["toughness"], "1/1");

    let bad = write(dir.path(), "bad.txt", "3 1\n0 0\n");
    let out = hamtough(&["toughness", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("self-loop"));
    assert_eq!(hamtough(&["toughness", c5, "--cap", "4"]).status.code(), Some(1));
    let env = Command::new(env!("CARGO_BIN_EXE_hamtough")).args(["toughness", c5]).env("HAMTOUGH_CAP", "4").output().unwrap();
    assert_eq!(env.status.code(), Some(1), "the cap comes from the environment");
}

#[test]
fn construct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let k6 = write(dir.path(), "k6.g6", "E~~w\n");
    let trace = dir.path().join("trace.json");
    let out = hamtough(&["construct", k6.to_str().unwrap(), "--format", "graph6", "--trace", trace.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["branch"], "complete");
    let full: Value = serde_json::from_str(&fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(full["n"], 6);

    let pat = write(dir.path(), "pat.txt", "5 2\n0 1\n1 2\n");
    assert_eq!(hamtough(&["construct", pat.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(hamtough(&["construct", k6.to_str().unwrap(), "--pair", "1"]).status.code(), Some(1));
    assert_eq!(hamtough(&["construct"]).status.code(), Some(1), "usage errors are input errors");
}

#[test]
fn construct_fixtures_exit_by_outcome() {
    let dir = tempfile::tempdir().unwrap();
    let list = json(&hamtough(&["fixtures"]));
    let list = list.as_array().unwrap();
    assert!(list.iter().any(|f| f["name"] == "figure1") && list.iter().any(|f| f["name"] == "petersen"));
    let mut failures = 0;
    for f in list.iter().filter(|f| !f["construct"].is_null()) {
        let name = f["name"].as_str().unwrap();
        let c = &f["construct"];
        let g = fixture_file(dir.path(), name);
        let pair = format!("{},{}", c["pair"][0], c["pair"][1]);
        let out = hamtough(&["construct", g.to_str().unwrap(), "--format", "graph6", "--skip-guards", "--pair", &pair]);
        let want = if c["cycle"] == true { 0 } else { 2 };
        assert_eq!(out.status.code(), Some(want), "{name}");
        let res = json(&out);
        assert_eq!(res["branch"], c["branch"], "{name}");
        failures += res["failure"].is_object() as usize;
    }
    assert!(failures >= 1);
}

#[test]
fn gen_is_seeded_and_free() {
    let a = hamtough(&["gen", "--n", "9", "--density", "0.4", "--count", "3", "--seed", "5", "--format", "graph6"]);
    let b = hamtough(&["gen", "--n", "9", "--density", "0.4", "--count", "3", "--seed", "5", "--format", "graph6"]);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    let dir = tempfile::tempdir().unwrap();
    for (i, line) in text.lines().enumerate() {
        let p = write(dir.path(), &format!("g{i}.g6"), line);
        assert_eq!(json(&hamtough(&["free-check", p.to_str().unwrap(), "--format", "graph6"]))["free"], true);
    }
}

#[test]
fn matching_on_k6_minus_an_edge() {
    let dir = tempfile::tempdir().unwrap();
    let mut edges = Vec::new();
    for u in 0..6 {
        for v in u + 1..6 {
            if (u, v) != (4, 5) {
                edges.push(format!("{u} {v}"));
            }
        }
    }
    let g = write(dir.path(), "k6e.txt", &format!("6 {}\n{}\n", edges.len(), edges.join("\n")));
    let out = json(&hamtough(&["matching", g.to_str().unwrap(), "--cut", "0,1,2,3", "--t", "2"]));
    assert_eq!(out["valid"], true);
    assert_eq!(out["matching"]["parts"].as_array().unwrap().len(), 2);
}

#[test]
fn campaign_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.toml", "kind = \"lemma21\"\nsamples = 40\nseed = 3\n");
    let csv = dir.path().join("rows.csv");
    let summary = dir.path().join("summary.json");
    let run = |csv: &Path| {
        hamtough(&[
            "campaign",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            csv.to_str().unwrap(),
            "--trace",
            summary.to_str().unwrap(),
            "--jobs",
            "2",
        ])
    };
    assert!(run(&csv).status.success());
    let s: Value = serde_json::from_str(&fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(s["records"], 40);
    assert_eq!(s["violations"], 0);
    let rows = fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().count(), 41);

    let again = dir.path().join("again.csv");
    assert!(run(&again).status.success());
    let strip = |t: &str| t.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect::<Vec<_>>();
    assert_eq!(strip(&rows), strip(&fs::read_to_string(&again).unwrap()));

    assert_eq!(hamtough(&["campaign"]).status.code(), Some(1));
    assert_eq!(hamtough(&["campaign", "--kind", "nope"]).status.code(), Some(1));
}
