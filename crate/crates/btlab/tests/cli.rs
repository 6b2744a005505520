use std::process::{Command, Output};

use btlab_core::lattice::LatticeBasis;
use serde_json::Value;

fn btlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_btlab")).args(args).env_remove("BTLAB_PRECISION").output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = btlab(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    btlab(args).status.code().unwrap()
}

#[test]
fn dlcount_example() {
    let doc = json(&["dlcount", "--q", "3", "--d", "2", "--m", "2"]);
    assert_eq!(doc["schema_version"], "btlab/1");
    assert_eq!(doc["result"]["count"], 6);
    let both = json(&["dlcount", "--q", "2", "--d", "3", "--m", "3", "--method", "both", "--threads", "3"]);
    // prod_{i=1}^{d-1} (q^m - q^i)
    assert_eq!(both["result"]["count"], (8 - 2) * (8 - 4));
}

#[test]
fn modifications_example() {
    let doc = json(&["modifications", "--d", "3"]);
    let rows = doc["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.iter().map(|r| r["r"].as_u64().unwrap()).collect::<Vec<_>>(), [0, 1, 2]);
    assert!(rows[1]["note"].as_str().unwrap().contains("lcm(3, 2) = 6"));
    assert_eq!(rows[1]["target"], "O(1/3) + O(-1/6)");
    let rep = json(&["modifications", "--d", "4", "--report"]);
    assert_eq!(rep["result"]["checks"]["deg1_list_equals_enumeration"], true);
    assert!(rep["result"]["dictionary"].as_array().unwrap().iter().all(|r| r["match"] == true));
}

#[test]
fn ball_dot_example() {
    let out = btlab(&["ball", "--d", "2", "--p", "3", "--radius", "2", "--format", "dot"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("[depth=")).count(), 17);
    assert_eq!(text.lines().filter(|l| l.contains(" -- ")).count(), 16);
    // node labels parse back to the same lattices
    for line in text.lines().filter(|l| l.contains("[depth=")) {
        let label = line.trim().split('"').nth(1).unwrap();
        assert_eq!(LatticeBasis::parse_label(label, 3).unwrap().label(), label);
    }
    let again = btlab(&["ball", "--d", "2", "--p", "3", "--radius", "2", "--format", "dot"]);
    assert_eq!(again.stdout, text.as_bytes());
}

#[test]
fn radius_zero_ball() {
    let out = btlab(&["ball", "--d", "3", "--radius", "0", "--format", "dot"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("[depth=")).count(), 1);
    assert!(!text.contains(" -- "));
}

#[test]
fn incidence_of_tree_star() {
    let doc = json(&["ball", "--d", "2", "--p", "3", "--radius", "1", "--incidence"]);
    assert_eq!(doc["result"]["incidence"]["components"], 5);
    assert_eq!(doc["result"]["incidence"]["intersections"].as_array().unwrap().len(), 4);
}

#[test]
fn determinism() {
    let args = ["specialize", "--field", "unramified:2", "--point", "1; 4 + y"];
    assert_eq!(btlab(&args).stdout, btlab(&args).stdout);
    let doc = json(&args);
    assert_eq!(doc["result"]["avoids_rational_hyperplanes"], true);
}

#[test]
fn specialize_edge() {
    let doc = json(&["specialize", "--field", "eisenstein:2", "--point", "1; y"]);
    assert_eq!(doc["result"]["simplex"]["indices"], serde_json::json!([0, 1]));
}

#[test]
fn dist_and_diagnorm() {
    let doc = json(&["dist", "--a", "1,0;0,1", "--b", "9,0;0,1"]);
    assert_eq!(doc["result"]["distance"], "2");
    let doc = json(&["dist", "--a", "1,0;0,1", "--b", "9,0;0,9", "--mode", "homothety"]);
    assert_eq!(doc["result"]["distance"], "0");
    let doc = json(&["diagnorm", "--c", "0,1/2", "--other-c", "1/3,0", "--other-basis", "1,1;0,1"]);
    assert_eq!(doc["result"]["distance"]["agree"], true);
    assert_eq!(doc["result"]["norm"]["levels"], serde_json::json!(["0", "1/2"]));
}

#[test]
fn cartier_and_slopes() {
    let doc = json(&["cartier", "check", "--d", "3", "--m", "3", "--precision", "6"]);
    assert_eq!(doc["result"]["critical"], serde_json::json!([0, 1, 2]));
    let doc = json(&["cartier", "simplex", "--d", "2", "--outer", "3,0;0,1"]);
    let idx: Vec<i64> = doc["result"]["simplex"]["indices"].as_array().unwrap().iter().map(|v| v.as_i64().unwrap()).collect();
    let reference: Vec<i64> = doc["result"]["reference"]["indices"].as_array().unwrap().iter().map(|v| v.as_i64().unwrap()).collect();
    assert_eq!(idx, reference.iter().map(|i| i - 1).collect::<Vec<_>>());
    let doc = json(&["cartier", "eta", "--module", "noncritical", "--index", "1", "--m", "2", "--precision", "6"]);
    assert_eq!(doc["result"]["verified"], true);
    let doc = json(&["slopes", "--matrix", "0,1;3,0", "--precision", "8"]);
    assert_eq!(doc["result"]["slopes"], serde_json::json!(["1/2", "1/2"]));
    let doc = json(&["slopes", "--module", "reference", "--d", "3", "--precision", "8"]);
    // V = Pi sigma^{-1} has slope 1/d, so F = p V^{-1} has slope (d - 1)/d on all d * r = 9 dimensions
    assert_eq!(doc["result"]["rank"], 9);
    assert!(doc["result"]["slopes"].as_array().unwrap().iter().all(|s| s == "2/3"));
}

#[test]
fn local_model_and_chart() {
    let doc = json(&["localmodel", "--d", "3", "--check-q", "3", "--varpi", "0"]);
    assert_eq!(doc["result"]["count"], 9);
    assert_eq!(doc["result"]["flagged_count"], 4);
    assert_eq!(doc["result"]["chart_failures"].as_array().unwrap().len(), 0);
    assert_eq!(doc["result"]["sufficiency"]["mismatches"], 0);
    let doc = json(&["chart", "--d", "2", "--face", "0"]);
    assert_eq!(doc["result"]["inverted"], serde_json::json!([1]));
    assert_eq!(doc["result"]["relation"], "x_0*x_1 = p");
}

#[test]
fn bcdim() {
    let doc = json(&["bcdim", "--twin", "--d", "7"]);
    assert_eq!(doc["result"]["solved"], serde_json::json!({"dim": 7, "ht": 0}));
    let doc = json(&["bcdim", "--bundle", "O(-1/4)"]);
    assert_eq!(doc["result"]["h1"], serde_json::json!({"dim": 1, "ht": -4}));
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_btlab")).args(["cartier", "check"]).env("BTLAB_PRECISION", "7").output().unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["request"]["global"]["precision"], 7);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["bogus"]), 2);
    assert_eq!(code(&["dlcount", "--q", "6"]), 2);
    assert_eq!(code(&["ball", "--p", "4"]), 2);
    assert_eq!(code(&["modifications", "--format", "dot"]), 2);
    assert_eq!(code(&["slopes", "--matrix", "9,0;0,9", "--precision", "2"]), 3);
    assert_eq!(code(&["dlcount", "--q", "5", "--d", "4", "--m", "3", "--method", "brute"]), 4);
    assert_eq!(code(&["specialize", "--point", "1; 4"]), 5);
    assert_eq!(code(&["cartier", "eta", "--module", "noncritical", "--index", "1", "--m", "1"]), 6);
    let out = btlab(&["specialize", "--point", "1; 4"]);
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error: "));
}

#[test]
fn batch() {
    let doc = json(&["batch", "--input", r#"[["dlcount","--q","3","--m","2"],["nope"],["dist","--a","1,0;0,1","--b","3,0;0,1"]]"#]);
    let docs = doc["result"]["documents"].as_array().unwrap();
    assert_eq!(docs[0]["result"]["count"], 6);
    assert_eq!(docs[1]["exit_code"], 2);
    assert_eq!(docs[2]["result"]["distance"], "1");
}

fn required(schema: &str) -> Vec<String> {
    let path = format!("{}/../../schemas/{schema}", env!("CARGO_MANIFEST_DIR"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    s["required"].as_array().unwrap().iter().map(|k| k.as_str().unwrap().to_string()).collect()
}

#[test]
fn documents_carry_schema_fields() {
    for (args, schema) in [
        (&["ball", "--radius", "1", "--incidence"][..], "ball.result.schema.json"),
        (&["dlcount", "--q", "3", "--m", "2"][..], "dlcount.result.schema.json"),
        (&["modifications", "--d", "4"][..], "modifications.result.schema.json"),
    ] {
        let doc = json(args);
        for k in required("artifact.schema.json") {
            assert!(doc.get(&k).is_some(), "{args:?}: missing {k}");
        }
        for k in required(schema) {
            assert!(doc["result"].get(&k).is_some(), "{args:?}: result missing {k}");
        }
    }
}
