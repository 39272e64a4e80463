use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use evenlat::curveconfig::data::Q_GRAM;
use serde_json::{json, Value};
use tempfile::TempDir;

fn evenlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evenlat"))
        .args(args)
        .env_remove("EVENLAT_GUARD_ORDER")
        .output()
        .unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = evenlat(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], json!(1));
    v
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn q_file(dir: &TempDir) -> PathBuf {
    write(dir, "q.json", &json!({ "gram": Q_GRAM, "name": "Q" }))
}

#[test]
fn inverse_q_gram_rational_snf() {
    let dir = TempDir::new().unwrap();
    let q = q_file(&dir);
    let v = ok_json(&["snf", s(&q), "--rational", "--inverse"]);
    assert_eq!(
        v["invariant_factors"],
        json!([1, 1, "1/2", "1/2", "1/4", "1/4"])
    );
}

#[test]
fn identity_snf_is_identity() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "i.json", &json!({ "gram": [[1, 0], [0, 1]] }));
    let v = ok_json(&["snf", s(&p)]);
    assert_eq!(v["D"], json!([[1, 0], [0, 1]]));
}

#[test]
fn bad_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\"gram\": [[1, 2]").unwrap();
    assert_eq!(evenlat(&["snf", s(&p)]).status.code(), Some(2));
    let p = write(
        &dir,
        "asym.json",
        &json!({ "gram": [[2, 1, 0], [1, 2, 0], [0, 3, 2]] }),
    );
    let out = evenlat(&["disc", s(&p)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 2, column 3"));
    let missing = dir.path().join("missing.json");
    assert_eq!(evenlat(&["info", s(&missing)]).status.code(), Some(2));
    assert_eq!(evenlat(&["info", "name:Q7"]).status.code(), Some(3));
}

#[test]
fn preconditions_exit_3() {
    assert_eq!(evenlat(&["isotropic", "name:<3>"]).status.code(), Some(3));
    assert_eq!(
        evenlat(&["embed-check", "name:U", "--gens", "[[1,1],[2,2]]"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn guard_exits_4() {
    let out = Command::new(env!("CARGO_BIN_EXE_evenlat"))
        .args(["iso", "name:U(2)^2", "name:U(2)^2"])
        .env("EVENLAT_GUARD_ORDER", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let v = ok_json(&["iso", "name:U(2)^2", "name:U(2)^2"]);
    assert_eq!(v["isomorphic"], json!(true));
}

#[test]
fn q_has_seven_isotropic_classes() {
    let dir = TempDir::new().unwrap();
    let q = q_file(&dir);
    let v = ok_json(&["isotropic", s(&q), "--subgroups"]);
    assert_eq!(v["orders"], json!([2, 2, 4, 4]));
    assert_eq!(v["count"], json!(7));
    assert!(!v["subgroups"].as_array().unwrap().is_empty());
    let d = ok_json(&["disc", s(&q)]);
    assert_eq!(d["invariant_factors"], json!([2, 2, 4, 4]));
    assert_eq!(d["order"], json!(64));
}

#[test]
fn embed_check_example() {
    let v = ok_json(&[
        "embed-check",
        "name:U(2)+<-8>",
        "--gens",
        "[[1,1,1],[-1,1,0]]",
    ]);
    assert_eq!(v["primitive"], json!(true));
    assert_eq!(v["gram"], json!([[-4, 0], [0, -4]]));
}

#[test]
fn complement_from_gens_file() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &json!({ "gens": [[1, 1, 1], [-1, 1, 0]] }));
    let v = ok_json(&["complement", "name:U(2)+<-8>", "--gens", s(&g)]);
    assert_eq!(v["rank"], json!(1));
    assert_eq!(v["degenerate"], json!(false));
}

#[test]
fn emitted_grams_reparse() {
    let dir = TempDir::new().unwrap();
    let named = ok_json(&["named", "U+U(2)+<-4>^2"]);
    let p = write(&dir, "t.json", &named);
    let info = ok_json(&["info", s(&p)]);
    assert_eq!(info["signature"], json!([2, 4]));
    assert_eq!(info["name"], named["name"]);
    let again = ok_json(&["named", "U+U(2)+<-4>^2"]);
    assert_eq!(again["gram"], named["gram"]);

    let over = ok_json(&["overlattices", "name:A1^2+<2>^2"]);
    for o in over["overlattices"].as_array().unwrap() {
        let p = write(&dir, "o.json", &json!({ "gram": o["gram"] }));
        let snf = ok_json(&["snf", s(&p)]);
        assert_eq!(snf["D"].as_array().unwrap().len(), 4);
    }
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let q = q_file(&dir);
    for args in [
        vec!["disc", s(&q)],
        vec!["overlattices", s(&q)],
        vec!["info", "name:Nikulin"],
    ] {
        let a = evenlat(&args);
        let b = evenlat(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn config_quotient_from_files() {
    let dir = TempDir::new().unwrap();
    let c = write(
        &dir,
        "c.json",
        &json!({
            "curves": [
                { "label": "a", "self": -2 },
                { "label": "b", "self": -2 },
                { "label": "c", "self": -2 },
                { "label": "d", "self": -2 },
            ],
            "mult": [["a", "c", 1], ["b", "d", 1]],
        }),
    );
    let i = write(&dir, "i.json", &json!({ "perm": [2, 1, 4, 3] }));
    let v = ok_json(&["config", "quotient", s(&c), s(&i)]);
    assert_eq!(v["orbits"], json!([["a", "b"], ["c", "d"]]));
    assert_eq!(v["config"]["mult"], json!([["a+b", "c+d", 1]]));
    let fixed = write(
        &dir,
        "f.json",
        &json!({ "curves_through_fixed_points": ["a"] }),
    );
    let out = evenlat(&["config", "quotient", s(&c), s(&i), "--fixed", s(&fixed)]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_paper_single_result() {
    let v = ok_json(&["verify-paper", "--result", "lemma_4_2"]);
    let e = &v["entries"][0];
    assert_eq!(e["result_id"], json!("lemma_4_2"));
    assert_eq!(e["status"], json!("pass"));
    assert_eq!(e["witnesses"]["pairings"].as_array().unwrap().len(), 4);
    assert_eq!(e["witnesses"]["pairings"][2][3], json!("-5/4"));
    let out = evenlat(&["verify-paper", "--result", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let out = evenlat(&["verify-paper", "--result", "prop_6_2", "--format", "md"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("| prop_6_2 | pass |"));
}

#[test]
fn config_pullback_from_files() {
    let dir = TempDir::new().unwrap();
    let c = write(
        &dir,
        "c.json",
        &json!({
            "curves": [{ "label": "E", "self": -1 }, { "label": "L", "self": -1 }],
            "mult": [["E", "L", 1]],
        }),
    );
    let step = write(
        &dir,
        "s.json",
        &json!({
            "branch": ["B"],
            "points": [{ "id": "p", "branch": "B" }, { "id": "q", "branch": "B" }],
            "incidence": { "E": ["p", "q"] },
        }),
    );
    let v = ok_json(&["config", "pullback", s(&c), s(&step)]);
    assert_eq!(v["determined"], json!(true));
    assert_eq!(v["configs"].as_array().unwrap().len(), 1);
    assert_eq!(v["label_map"][0][1].as_array().unwrap().len(), 1);
    assert_eq!(v["label_map"][1][1].as_array().unwrap().len(), 2);
}
