use std::process::{Command, Output};

use serde_json::Value;

fn ctrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctrad")).args(args).env("CTRAD_WORKERS", "2").output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_b_a3_exhaustive() {
    let out = ctrad(&["verify-b", "--type", "A", "--rank", "3", "--mode", "exhaustive"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["checked"], 14);
    assert_eq!(r["pass"], true);
    for alg in r["algebras"].as_array().unwrap() {
        assert_eq!(alg["r_bruteforce"], 3);
    }
}

#[test]
fn verify_b_d4_defaults_to_exhaustive() {
    let r = report(&ctrad(&["verify-b", "--type", "d", "--rank", "4"]));
    assert_eq!(r["run"]["mode"], "exhaustive");
    assert_eq!(r["checked"], 50);
    assert!(r["algebras"].as_array().unwrap().iter().all(|a| a["r_bruteforce"] == 5));
}

#[test]
fn budget_gives_incomplete_exit() {
    let out = ctrad(&["verify-b", "--type", "A", "--rank", "4", "--budget", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["complete"], false);
    assert_eq!(r["pass"], true);
    assert_eq!(r["checked"], 3);
}

#[test]
fn exhaustive_outside_limits_is_rejected() {
    let out = ctrad(&["verify-b", "--type", "E", "--rank", "6", "--mode", "exhaustive"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exhaustive"));
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify-a", "--type", "D", "--rank", "4", "--seed", "7", "--walks", "3"];
    let a = ctrad(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_ctrad")).args(args).env("CTRAD_WORKERS", "1").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = ctrad(&["verify-a", "--type", "D", "--rank", "4", "--seed", "8", "--walks", "3"]);
    assert_eq!(report(&c)["run"]["seed"], 8);
}

#[test]
fn verify_a_a1() {
    let r = report(&ctrad(&["verify-a", "--type", "A", "--rank", "1", "--walks", "0"]));
    assert_eq!(r["checked"], 1);
    assert_eq!(r["pass"], true);
    assert_eq!(r["algebras"][0]["r_bruteforce"], 1);
}

#[test]
fn verify_c_with_csv_and_out() {
    let dir = std::env::temp_dir().join(format!("ctrad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let json = dir.join("c.json");
    let out = ctrad(&["verify-c", "--type", "A", "--rank", "3", "--out", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(r["checked"], 14);

    let csv = dir.join("b.csv");
    ctrad(&["verify-b", "--type", "A", "--rank", "2", "--csv", csv.to_str().unwrap()]);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("tilting,a,n_a,m_a,r_a"));
    assert_eq!(text.lines().count(), 1 + 5 * 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn single_tilting_from_file() {
    let dir = std::env::temp_dir().join(format!("ctrad-cli-t-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("t.json");
    std::fs::write(&good, r#"[{"shiftedProj":0},{"shiftedProj":1},{"shiftedProj":2}]"#).unwrap();
    let r = report(&ctrad(&["verify-b", "--type", "A", "--rank", "3", "--tilting", good.to_str().unwrap()]));
    assert_eq!(r["checked"], 1);
    assert_eq!(r["run"]["tilting"].as_array().unwrap().len(), 3);

    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"[{"root":0},{"root":0}]"#).unwrap();
    let out = ctrad(&["verify-b", "--type", "A", "--rank", "3", "--tilting", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn mutate_quiver_file() {
    let path = std::env::temp_dir().join(format!("ctrad-q-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"n":3,"arrows":[[0,1,1],[1,2,1]]}"#).unwrap();
    let out = ctrad(&["mutate", "--quiver", path.to_str().unwrap(), "--at", "1"]);
    let q: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(q["arrows"], serde_json::json!([[0, 2, 1], [1, 0, 1], [2, 1, 1]]));
    let out = ctrad(&["mutate", "--quiver", path.to_str().unwrap(), "--at", "5"]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn enumerate_tilting_counts() {
    for (ty, rank, count) in [("A", "3", 14), ("D", "4", 50), ("E", "6", 833)] {
        let r = report(&ctrad(&["enumerate-tilting", "--type", ty, "--rank", rank]));
        assert_eq!(r["count"], count);
        assert_eq!(r["complete"], true);
    }
}

#[test]
fn window_and_homdims() {
    let w = report(&ctrad(&["window", "--type", "A", "--rank", "2"]));
    assert_eq!(w["vertices"].as_array().unwrap().len(), 3 * 7);
    let out = ctrad(&["homdims", "--type", "A", "--rank", "2"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().next(), Some("source,target,dim_minus,dim_zero"));
    assert!(csv.lines().any(|l| l == "M0,M0,0,1"));
    assert!(csv.lines().skip(1).all(|l| l.split(',').count() == 4));
}

#[test]
fn props_d4() {
    let out = ctrad(&["props", "--type", "D", "--rank", "4", "--walks", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let rec = r["records"].as_array().unwrap().iter().find(|x| x["name"] == "orbit-graph").unwrap();
    assert_eq!(rec["actual"], "D4");
}
