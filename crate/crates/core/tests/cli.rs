use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_snarkflow")).args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

struct Dir(PathBuf);

impl Dir {
    fn new(tag: &str) -> Dir {
        let d = std::env::temp_dir().join(format!("snarkflow-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&d).unwrap();
        Dir(d)
    }

    fn file(&self, name: &str) -> String {
        self.0.join(name).display().to_string()
    }

    fn gen(&self, name: &str, args: &[&str]) -> String {
        let mut a = vec!["gen"];
        a.extend_from_slice(args);
        let o = bin(&a);
        assert_eq!(o.status.code(), Some(0));
        let p = self.file(name);
        std::fs::write(&p, &o.stdout).unwrap();
        p
    }
}

impl Drop for Dir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

#[test]
fn gen_goldberg_is_one_graph6_line() {
    let o = bin(&["gen", "--family", "goldberg", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert_eq!(snarkflow::graph6::parse_graph6(text.trim()).unwrap().n(), 24);
}

#[test]
fn phi_petersen_both_methods() {
    let d = Dir::new("petersen");
    let g = d.gen("p.g6", &["--family", "petersen"]);
    let o = bin(&["phi", &g, "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["phi"], "5/1");
    assert_eq!(v["agree"], true);
}

#[test]
fn phi_flower() {
    let d = Dir::new("flower");
    let f = d.gen("f.g6", &["--family", "flower", "--k", "2"]);
    assert_eq!(json(&bin(&["phi", &f]))["phi"], "9/2");
}

#[test]
fn verify_exit_codes() {
    let d = Dir::new("verify");
    let g = d.gen("g.g6", &["--family", "goldberg", "--k", "1"]);
    let cert = d.file("cert.json");
    let o = bin(&["phi", &g, "--certificate", &cert]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["phi"], "9/2");
    assert_eq!(bin(&["verify", &g, &cert, "--r", "9/2"]).status.code(), Some(0));

    let mut c: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    // an edge carrying 7/2 is out of range once r = 22/5
    assert!(c["values"].as_array().unwrap().iter().any(|x| x == "7/2"));
    let o = bin(&["verify", &g, &cert, "--r", "22/5"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["violation"]["kind"], "range");
    c["values"][3] = "0/1".into();
    let broken = d.file("broken.json");
    std::fs::write(&broken, c.to_string()).unwrap();
    let o = bin(&["verify", &g, &broken]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["violation"]["edge"], 3);
    assert!(json(&o)["message"].as_str().unwrap().contains("edge 3"));

    std::fs::write(&broken, "{ not json").unwrap();
    assert_eq!(bin(&["verify", &g, &broken]).status.code(), Some(2));
    assert_eq!(bin(&["verify", &g, Path::new("/nonexistent").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn bridges_and_bad_input_exit_2() {
    let d = Dir::new("bad");
    let p = d.file("path.json");
    std::fs::write(&p, r#"{"n":4,"edges":[[0,1],[1,2],[2,3]]}"#).unwrap();
    assert_eq!(bin(&["phi", &p]).status.code(), Some(2));
    let q = d.file("junk.g6");
    std::fs::write(&q, "~~~~\n").unwrap();
    assert_eq!(bin(&["phi", &q]).status.code(), Some(2));
    assert_eq!(bin(&["proofcheck", "--suite", "nonsense"]).status.code(), Some(2));
}

#[test]
fn proofcheck_suites() {
    let o = bin(&["proofcheck", "--suite", "configurations"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["count"], 4);

    let o = bin(&["proofcheck", "--suite", "coloring", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 5);

    let o = bin(&["proofcheck", "--suite", "discharging", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["sequences"][1]["length"], 5);

    assert_eq!(bin(&["proofcheck", "--suite", "blocktypes"]).status.code(), Some(0));
    // strict swaps lose L_3: reported as a claim failure with the diff
    let o = bin(&["proofcheck", "--suite", "blocktypes", "--rules", "strict"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(json(&o)["diff"].as_array().unwrap().iter().any(|d| d.as_str().unwrap().contains("L_3")));
}

#[test]
fn endtoend_budget_marks_incomplete() {
    let o = bin(&["proofcheck", "--suite", "endtoend", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["completed"], true);
    assert_eq!(v["phi"], "9/2");

    let o = bin(&["proofcheck", "--suite", "endtoend", "--k", "2", "--budget-seconds", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["completed"], false);
}

#[test]
fn output_independent_of_threads() {
    let d = Dir::new("threads");
    let g = d.gen("g.g6", &["--family", "flower", "--k", "2"]);
    let run = |t: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_snarkflow")).env("SNARKFLOW_THREADS", t).args(["phi", &g, "--method", "both"]).output().unwrap();
        let mut v = json(&o);
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    assert_eq!(run("1"), run("4"));
}
