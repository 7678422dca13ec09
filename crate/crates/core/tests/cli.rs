use std::process::Command;

use clusterdt::cli::run;

fn ok(args: &[&str]) -> String {
    let mut full = vec!["clusterdt"];
    full.extend_from_slice(args);
    let (code, out) = run(full);
    assert_eq!(code, 0, "{args:?}: {out}");
    out
}

#[test]
fn dt_on_the_acyclic_example() {
    let out = ok(&["dt", "--example", "acyclic"]);
    assert!(out.contains("F[1] = 1 + X1 + X1*X2\n"));
    assert!(out.contains("F[2] = 1 + X2\n"));
}

#[test]
fn markov_search_reports_none() {
    assert_eq!(ok(&["search", "--example", "markov", "--depth", "10"]), "none\n");
}

#[test]
fn structured_search_names_vertices() {
    let out = ok(&["search", "--example", "disk", "--mode", "green", "--out", "structured"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "found");
    assert!(v["sequence"].as_array().unwrap().len() >= 5);
}

#[test]
fn verify_qn_suite_passes() {
    let out = ok(&["verify", "--suite", "qn", "--n", "5"]);
    assert!(out.ends_with("all checks passed\n"));
    assert_eq!(out.matches("[pass]").count(), 7);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["verify", "--suite", "poset"],
        vec!["dt", "--example", "disk", "--seq", "5,1,3,4,2,5", "--out", "structured"],
        vec!["web", "--n", "5"],
    ] {
        assert_eq!(ok(&args), ok(&args));
    }
}

#[test]
fn seed_and_mutate_round_trip() {
    let q = ok(&["mutate", "--example", "acyclic", "--seq", "2,2", "--out", "structured"]);
    let back: serde_json::Value = serde_json::from_str(&q).unwrap();
    let orig: serde_json::Value = serde_json::from_str(&ok(&["mutate", "--example", "acyclic", "--seq", "", "--out", "structured"])).unwrap();
    assert_eq!(back, orig);
    let seed = ok(&["seed", "--example", "disk", "--seq", "5,1,3,4,2,5", "--out", "structured"]);
    let v: serde_json::Value = serde_json::from_str(&seed).unwrap();
    assert_eq!(v["history"].as_array().unwrap().len(), 6);
    assert_eq!(v["F"].as_array().unwrap().len(), 5);
}

#[test]
fn poset_pipeline() {
    let dir = std::env::temp_dir().join(format!("clusterdt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("p.json");
    std::fs::write(&p, ok(&["poset", "--qn-poset", "5", "--vertex", "1,1,0", "--out", "structured"])).unwrap();
    let ps = p.to_str().unwrap();
    let f = ok(&["idealfn", "--poset", ps]);
    assert_eq!(f.trim().split(" + ").count(), 6);
    let piece = dir.join("piece.json");
    std::fs::write(&piece, r#"{"elements":[{"id":0,"label":"X9"}],"covers":[]}"#).unwrap();
    let text = ok(&["poset", "--qn-poset", "5", "--vertex", "1,1,0"]);
    let min_var = text.lines().nth(1).unwrap().trim().trim_start_matches("0 X").to_string();
    let att = ok(&["attach", "--poset", ps, "--at", &min_var, "--piece", &format!("{}:2", piece.display())]);
    assert!(att.contains("X9"));
    let rel = ok(&["relabel", "--poset", ps, "--map", &format!("X{min_var}=X70")]);
    assert!(rel.contains("0 X70\n"));
    let dot = ok(&["dot", "--poset", ps]);
    assert!(dot.starts_with("digraph P"));
    assert_eq!(ok(&["idealfn", "--poset", &dot]), f);
    let t = ok(&["truncate", "--poset", ps]);
    assert!(t.contains("elements:"));
}

#[test]
fn acyclic_and_surface_posets() {
    let out = ok(&["poset", "--acyclic", "--example", "acyclic", "--vertex", "3"]);
    assert_eq!(out.matches(" X").count(), 5);
    let tri = r#"{"arcs":[{"id":1,"boundary":false},{"id":10,"boundary":true},{"id":11,"boundary":true},
        {"id":12,"boundary":true},{"id":13,"boundary":true}],"triangles":[[10,11,1],[1,12,13]]}"#;
    let out = ok(&["poset", "--surface-poset", tri, "--vertex", "1"]);
    assert!(out.contains("0 X1"));
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(run(["clusterdt", "dt", "--example", "acyclic", "--seq", "9"]).0, 1);
    assert_eq!(run(["clusterdt", "verify", "--suite", "nope"]).0, 1);
    assert_eq!(run(["clusterdt", "poset", "--qn-poset", "4", "--vertex", "5,0,0"]).0, 1);
    assert_eq!(run(["clusterdt", "dt"]).0, 1);
    assert_eq!(run(["clusterdt", "idealfn", "--poset", "{not json"]).0, 1);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_clusterdt");
    let s = Command::new(bin).args(["dt", "--example", "acyclic"]).output().unwrap();
    assert_eq!(s.status.code(), Some(0));
    let s = Command::new(bin).args(["mutate", "--example", "acyclic", "--seq", "x"]).output().unwrap();
    assert_eq!(s.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&s.stderr).contains("unknown vertex"));
}
