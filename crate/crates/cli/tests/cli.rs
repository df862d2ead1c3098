use std::process::{Command, Output};

use serde_json::Value;

fn commuting(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_commuting"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn blocks_listing() {
    let o = commuting(&["blocks", "--group", "S4", "--prime", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("S4 p=2 d=1: 1 block(s)"));

    let o = commuting(&["blocks", "--group", "S3", "--prime", "2", "--format", "json"]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    let orders: Vec<u64> = doc["blocks"].as_array().unwrap().iter().map(|b| b["defect_order"].as_u64().unwrap()).collect();
    assert_eq!(orders, vec![2, 1]);
    assert_eq!(doc["blocks"][0]["augmentation"], 1);
    assert_eq!(doc["blocks"][1]["augmentation"], 0);
}

#[test]
fn auto_split_picks_the_degree() {
    // exponent 6, odd part 3, and 2 has order 2 mod 3
    let o = commuting(&["blocks", "--group", "S3", "--prime", "2", "--auto-split"]);
    assert!(stdout(&o).starts_with("S3 p=2 d=2: 2 block(s)"), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    let o = commuting(&["verify", "--group", "S3", "--prime", "2", "--checks", "theorem1,theorem2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // homology over the cap is skipped, never failed
    let o = commuting(&["verify", "--group", "S3", "--prime", "2", "--checks", "homology", "--max-simplices", "1"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stdout(&o).contains("SKIP homology [S3 p=2 d=1 block 0]"));
    let o = commuting(&["verify", "--group", "S3", "--prime", "2", "--block", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL setup"));
}

#[test]
fn reports_are_reproducible_with_a_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = commuting(&[
            "verify",
            "--group",
            "S4",
            "--prime",
            "2",
            "--cache-dir",
            cache.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        std::fs::read(out).unwrap()
    };
    let cold = run("a.json");
    let warm = run("b.json");
    assert_eq!(cold, warm);
    let entries: Vec<_> = std::fs::read_dir(&cache).unwrap().collect();
    assert_eq!(entries.len(), 1);
    // a corrupted entry is recomputed and leaves the verdicts unchanged
    std::fs::write(entries[0].as_ref().unwrap().path(), "{ not json").unwrap();
    assert_eq!(run("c.json"), cold);
    let report: Value = serde_json::from_slice(&cold).unwrap();
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass" && c.get("timing_ms").is_none()));
}

#[test]
fn poset_exports() {
    let o = commuting(&["poset", "--group", "S3", "--prime", "2", "--which", "k"]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["elements"].as_array().unwrap().len(), 3);
    assert_eq!(doc["covering"].as_array().unwrap().len(), 0);
    assert_eq!(doc["leq"].as_array().unwrap().len(), 3);
    assert!(doc["elements"].as_array().unwrap().iter().all(|e| e["orbit"] == 0));

    let o = commuting(&["poset", "--group", "S3", "--prime", "2", "--block", "1", "--which", "a"]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["empty"], true);

    let o = commuting(&["poset", "--group", "S3", "--prime", "2", "--which", "k-orbit", "--format", "dot"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=").count(), 1);
}

#[test]
fn v_subgroup_diagram() {
    let family = "[[], [[[1,2]]], [[[3,4]]], [[[5,6]]], [[[1,2]],[[3,4]]], [[[1,2]],[[5,6]]], [[[3,4]],[[5,6]]]]";
    let o = commuting(&[
        "poset", "--group", "S7", "--prime", "2", "--block", "nonprincipal", "--which", "brauer-pairs", "--family", family,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["elements"].as_array().unwrap().len(), 7);
    assert_eq!(doc["covering"].as_array().unwrap().len(), 9);
}

#[test]
fn dihedral_search() {
    let o = commuting(&["find-dihedral-block", "--from", "3", "--to", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("none for n in 3..=4"));
    let o = commuting(&["find-dihedral-block", "--from", "5", "--to", "4"]);
    assert!(stdout(&o).starts_with("none"));
    let o = commuting(&["find-dihedral-block"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("first hit: n = 7, block 1"));
}

#[test]
fn corpus_without_slow_entries() {
    let o = commuting(&["verify", "--corpus", "--jobs", "3", "--checks", "theorem1,theorem2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("S7"));
    assert!(stdout(&o).contains("[D8 p=2 d=1 block 0]"));
}
