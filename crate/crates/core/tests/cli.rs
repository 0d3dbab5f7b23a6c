use std::path::PathBuf;
use std::process::{Command, Output};

fn program(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/programs").join(name)
}

fn redip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redip")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn insurance() -> String {
    program("insurance.redip").display().to_string()
}

#[test]
fn infer_with_guard_query() {
    let o = redip(&["infer", &insurance(), "--query", "r >= 1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("normalizing constant = 11/40"), "{out}");
    assert!(out.contains("violation mass = 29/40"), "{out}");
    assert!(out.contains("P(r >= 1) = 2/11 (~0.181818)"), "{out}");
}

#[test]
fn infer_json_marginal_is_exact() {
    let o = redip(&["infer", &insurance(), "--marginal", "r", "--upto", "1", "--json", "--digits", "3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let marginal = v.as_array().unwrap().iter().find(|q| q["kind"] == "marginal").unwrap();
    assert_eq!(marginal["values"][0]["exact"], "9/11");
    assert_eq!(marginal["values"][1]["exact"], "2/11");
    assert_eq!(marginal["values"][1]["decimal"], "0.182");
}

#[test]
fn infer_with_prior_file() {
    let p = program("coin_or_skip.redip").display().to_string();
    let prior = program("prior_y.json").display().to_string();
    let o = redip(&["infer", &p, "--prior", &prior, "--query", "y == 2"]);
    let out = stdout(&o);
    assert!(out.contains("normalizing constant = 3/4"), "{out}");
    assert!(out.contains("P(y == 2) = 1/3"), "{out}");
}

#[test]
fn unnormalized_queries() {
    let o = redip(&["query", &insurance(), "--guard", "r < 1", "--unnormalized"]);
    assert!(stdout(&o).contains("= 9/40"), "{}", stdout(&o));
}

#[test]
fn query_forms() {
    let at = redip(&["query", &insurance(), "--at", "x=2,r=0"]);
    assert!(stdout(&at).contains("= 9/22"), "{}", stdout(&at));
    let g = redip(&["query", &insurance(), "--guard", "r < 1"]);
    assert!(stdout(&g).contains("= 9/11"));
    let t = redip(&["query", &insurance(), "--guard", "true", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&t.stdout).unwrap();
    assert_eq!(v["values"][0]["exact"], "1/1");
    assert_eq!(v["kind"], "guard-probability");
}

#[test]
fn query_unknown_variable_fails() {
    let o = redip(&["query", &insurance(), "--at", "z=1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown variable `z`"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let infeasible = dir.path().join("infeasible.redip");
    std::fs::write(&infeasible, "observe(false)").unwrap();
    assert_eq!(redip(&["infer", infeasible.to_str().unwrap()]).status.code(), Some(2));
    let broken = dir.path().join("broken.redip");
    std::fs::write(&broken, "x += ;").unwrap();
    let o = redip(&["infer", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1, column 6"));
    let missing = dir.path().join("missing.redip");
    assert_eq!(redip(&["infer", missing.to_str().unwrap()]).status.code(), Some(3));
    let iid = dir.path().join("iid.redip");
    std::fs::write(&iid, "y += 2; x += iid(bernoulli(1/2), y)").unwrap();
    assert_eq!(redip(&["oracle", iid.to_str().unwrap()]).status.code(), Some(4));
}

#[test]
fn check_geometric_json() {
    let o = redip(&["check", program("geometric.json").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("mass = 1, PGA: yes"), "{}", stdout(&o));
}

#[test]
fn check_translated_program() {
    let o = redip(&["check", &insurance(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mass"], "11/40");
    assert_eq!(v["is_pga"], true);
}

#[test]
fn export_dot_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("posterior.dot");
    let o = redip(&["export-dot", &insurance(), "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let dot = std::fs::read_to_string(out).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("->"));
}

#[test]
fn oracle_enumerate_passes() {
    let o = redip(&["oracle", &insurance(), "--mode", "enumerate", "--trunc", "40", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "PASS");
}

#[test]
fn oracle_mc_is_seeded() {
    let args = ["oracle", &insurance(), "--mode", "mc", "--samples", "20000", "--seed", "7", "--query", "r >= 1"];
    let a = redip(&args);
    let b = redip(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("P(r >= 1 | no violation)"));
}

#[test]
fn parse_prints_desugared_program() {
    let o = redip(&["parse", &insurance(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["alphabet"], serde_json::json!(["r", "x"]));
    assert_eq!(v["size"], 8);
}

#[test]
fn custom_paths_resolve_next_to_the_program() {
    let o = redip(&["infer", program("custom_die.redip").to_str().unwrap(), "--query", "tails == 0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("P(tails == 0) = 1/5"), "{}", stdout(&o));
}
