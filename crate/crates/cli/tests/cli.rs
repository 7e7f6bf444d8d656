use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mackey-witt")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn cyclic(v: &Value) -> Vec<i64> {
    v["invariant_factors"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

#[test]
fn norm_of_f2_over_c8() {
    let v = json(&["norm", "--ring", "F_2", "--n", "8", "--json"]);
    assert_eq!(v["schema"], "mackey-witt/1");
    let levels = &v["functor"]["levels"];
    for (d, order) in [("1", 2), ("2", 4), ("4", 8), ("8", 16)] {
        assert_eq!(cyclic(&levels[d]), vec![order]);
        assert_eq!(levels[d]["rank"], 0);
    }
}

#[test]
fn hochschild_of_f3_over_c3() {
    let v = json(&["hh", "--ring", "F_3", "--n", "3", "--max-degree", "3", "--json"]);
    let norm = json(&["norm", "--ring", "F_3", "--n", "3", "--json"]);
    let degrees = v["homology"].as_array().unwrap();
    assert_eq!(degrees.len(), 4);
    assert_eq!(degrees[0]["functor"], norm["functor"]);
    for h in &degrees[1..] {
        for level in h["functor"]["levels"].as_object().unwrap().values() {
            assert!(cyclic(level).is_empty());
            assert_eq!(level["rank"], 0);
        }
    }
    let table = String::from_utf8(run(&["hh", "--ring", "F_3", "--n", "3", "--max-degree", "3"]).stdout).unwrap();
    assert!(table.contains("C_3    Z/9"));
    assert!(table.contains("HH_3 = 0"));
}

#[test]
fn witt_over_integers() {
    let out = run(&["witt", "--ring", "Z", "--n", "6"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: isomorphic"));
    assert!(text.contains("classical W_<6>(Z): Z^4"));
    assert!(text.contains("Green top level:     Z^4"));
    let v = json(&["witt", "--ring", "Z", "--n", "6", "--json"]);
    assert_eq!(v["verdict"], "isomorphic");
    assert_eq!(v["classical"]["additive"]["rank"], 4);
    assert_eq!(v["green"]["levels"]["6"]["rank"], 4);
}

#[test]
fn tr_tower_of_f2() {
    let v = json(&["tr", "--ring", "F_2", "--stages", "3", "--json"]);
    let stages = v["stages"].as_array().unwrap();
    let orders: Vec<Vec<i64>> = stages.iter().map(|s| cyclic(&s["group"])).collect();
    assert_eq!(orders, vec![vec![2], vec![4], vec![8]]);
    assert_eq!(v["limit"]["description"], "Z_2");
    assert_eq!(v["limit"]["precision"], 3);
    let v = json(&["tr", "--ring", "F_2", "--degree", "1", "--json"]);
    assert_eq!(v["limit"]["description"], "0");
}

#[test]
fn check_all_suites() {
    let out = run(&["check", "--suite", "all", "--seed", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&["check", "--suite", "snf,box", "--json"]);
    assert_eq!(v["suites"].as_array().unwrap().len(), 2);
    assert_eq!(v["passed"], true);
}

#[test]
fn monoid_splitting() {
    let v = json(&["monoid", "--n", "1", "--monoid", "dual", "--max-degree", "1", "--json"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["splitting"][0]["monoid_algebra"]["1"]["rank"], 2);
    let inline = r#"{"elements": ["0","1","x"], "zero": "0", "one": "1", "table": [["0","0","0"],["0","1","x"],["0","x","0"]], "action": ["0","1","x"]}"#;
    let w = json(&["monoid", "--ring", "A", "--n", "2", "--monoid", inline, "--json"]);
    assert_eq!(w["passed"], true);
    let dir = std::env::temp_dir().join(format!("mackey-witt-monoid-{}.json", std::process::id()));
    std::fs::write(&dir, inline).unwrap();
    let f = json(&["monoid", "--ring", "A", "--n", "2", "--monoid", dir.to_str().unwrap(), "--json"]);
    std::fs::remove_file(&dir).ok();
    assert_eq!(f, w);
}

#[test]
fn output_is_deterministic() {
    for args in [&["norm", "--ring", "Z/4", "--n", "6"][..], &["check", "--seed", "11", "--json"], &["witt", "--ring", "F_3", "--n", "3", "--json"]] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn validation_failures_exit_with_two() {
    for args in [
        &["tr", "--ring", "Z", "--p", "4"][..],
        &["tr", "--ring", "Z"],
        &["norm", "--ring", "Q", "--n", "2"],
        &["norm", "--ring", "Z", "--n", "0"],
        &["check", "--suite", "nonsense"],
        &["monoid", "--n", "3", "--monoid", "swap"],
        &["monoid", "--n", "1", "--monoid", "{"],
        &["hh", "--n", "2"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
    }
}
