use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use tempfile::TempDir;
use treelex::reconstruct::scramble;
use treelex::RootedForest;

fn treelex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treelex")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn canon_and_iso() {
    let o = treelex(&["canon", "star2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(()())");
    let o = treelex(&["iso", "--a", "star2", "--b", "chain3"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "false"));
    let o = treelex(&["iso", "--a", "chain3", "--b", "chain3"]);
    assert_eq!(stdout(&o), "true");
}

#[test]
fn reconstruct_and_iso_on_presentations() {
    let dir = TempDir::new().unwrap();
    let f = Arc::new(RootedForest::from_parent_indices(&[None, Some(0), Some(0), Some(1), None]));
    let p1 = write(&dir, "p1.json", &serde_json::to_string(&scramble(&f, 1, 3).to_json()).unwrap());
    let p2 = write(&dir, "p2.json", &serde_json::to_string(&scramble(&f, 2, 5).to_json()).unwrap());
    let o = treelex(&["--format", "json", "reconstruct", "--presentation", s(&p1)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["canonical"], f.ahu_canonical());
    assert_eq!(v["verified"], true);
    assert_eq!(stdout(&treelex(&["iso", "--a", s(&p1), "--b", s(&p2)])), "true");
    assert_eq!(stdout(&treelex(&["canon", s(&p2)])), f.ahu_canonical());
}

#[test]
fn eval_in_both_modes() {
    let dir = TempDir::new().unwrap();
    let env = write(&dir, "env.json", r#"{"forest":"chain2","elements":{"g1":{"v0":"1","v1":"0"},"g2":{"v0":"0","v1":"1"}}}"#);
    assert_eq!(stdout(&treelex(&["eval", "--env", s(&env), "g1 v g2"])), "(1,0)");
    assert_eq!(stdout(&treelex(&["eval", "--env", s(&env), "2*g1"])), "(2,0)");
    assert_eq!(stdout(&treelex(&["eval", "--env", s(&env), "--mode", "semiring", "g1 * inv(g1)"])), "(0,0)");
    // `+` is the join, so this is the absolute value
    assert_eq!(stdout(&treelex(&["eval", "--env", s(&env), "--mode", "semiring", "g1 + inv(g1)"])), "(1,0)");
    assert_eq!(stdout(&treelex(&["eval", "--env", s(&env), "--mode", "semiring", "g1 + g2"])), "(1,0)");
    let bad = treelex(&["eval", "--env", s(&env), "g1 * g2"]);
    assert_eq!(bad.status.code(), Some(2));
    let unbound = treelex(&["eval", "--env", s(&env), "g3"]);
    assert_eq!(unbound.status.code(), Some(1));
}

#[test]
fn stellar_steps_feed_pwl_ideal() {
    let dir = TempDir::new().unwrap();
    let w = write(&dir, "w.json", r#"{"vertices":["v1","v2"],"weights":{"v1":1,"v2":1},"sets":[["v1","v2"]]}"#);
    let script = write(
        &dir,
        "s.json",
        r#"[{"op":"subdivide","edge":["v1","v2"],"new":"a"},{"op":"delete","set":["a","v2"]},{"op":"delete","set":["v2"]},
            {"op":"delete","set":["v1","a"]},{"op":"delete","set":["a"]}]"#,
    );
    let steps = dir.path().join("steps");
    let o = treelex(&["stellar", "--complex", s(&w), "--script", s(&script), "--emit-steps", s(&steps)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(fs::read_dir(&steps).unwrap().count(), 6);
    let f = write(&dir, "f.json", r#"{"n":2,"terms":[[{"coeffs":[-1,0],"const":1}]]}"#);
    let one = write(&dir, "one.json", r#"{"n":2,"terms":[[{"coeffs":[0,0],"const":1}]]}"#);
    let ideal = |f: &Path, d: &str| stdout(&treelex(&["pwl", "ideal", "--fn", s(f), "--steps", s(&steps), "--depth", d]));
    assert_eq!(ideal(&f, "5"), "true");
    assert_eq!(ideal(&f, "0"), "false");
    assert_eq!(ideal(&one, "5"), "false");
    let out_of_range = treelex(&["pwl", "ideal", "--fn", s(&f), "--steps", s(&steps), "--depth", "9"]);
    assert_eq!(out_of_range.status.code(), Some(2));
}

#[test]
fn pwl_eval_and_checks() {
    let dir = TempDir::new().unwrap();
    let min = write(&dir, "min.json", r#"{"n":1,"terms":[[{"coeffs":[1],"const":0},{"coeffs":[-1],"const":1}]]}"#);
    let seg = write(&dir, "seg.json", r#"{"ambient_dim":1,"simplexes":[[["0"],["1"]]]}"#);
    assert_eq!(stdout(&treelex(&["pwl", "eval", "--fn", s(&min), "--point", "1/3"])), "1/3");
    assert_eq!(stdout(&treelex(&["pwl", "convex", "--fn", s(&min), "--complex", s(&seg)])), "false");
    assert_eq!(stdout(&treelex(&["pwl", "vanish", "--fn", s(&min), "--complex", s(&seg)])), "false");
    let outside = treelex(&["pwl", "eval", "--fn", s(&min), "--point", "3/2"]);
    assert_eq!(outside.status.code(), Some(2));
}

#[test]
fn cone_and_unit() {
    let dir = TempDir::new().unwrap();
    let gens = write(&dir, "g.json", r#"{"forest":"singleton","gens":[{"coords":{"v0":"1"}},{"coords":{"v0":"-1"}}]}"#);
    assert_eq!(stdout(&treelex(&["cone", "--gens", s(&gens), "--exp", "0,1"])), "true");
    assert_eq!(stdout(&treelex(&["cone", "--gens", s(&gens), "--exp", "2,1"])), "false");
    assert_eq!(treelex(&["cone", "--gens", s(&gens), "--exp", "x"]).status.code(), Some(2));
    let o = treelex(&["--format", "json", "unit", "--gens", s(&gens)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["source"], "cone");
    assert!(v["certificates"].as_array().unwrap().iter().all(|c| c.is_string()));
}

#[test]
fn fuzz_is_seeded_and_deterministic() {
    let a = treelex(&["--seed", "3", "--format", "json", "fuzz", "antisymmetry", "--trials", "40"]);
    let b = treelex(&["--seed", "3", "--format", "json", "fuzz", "antisymmetry", "--trials", "40"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(treelex(&["fuzz", "antisymmetry"]).status.code(), Some(2));
    assert_eq!(treelex(&["--seed", "1", "fuzz", "ring-axioms"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(treelex(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(treelex(&["canon", "/no/such/file.json"]).status.code(), Some(2));
}
