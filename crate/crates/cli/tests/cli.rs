use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    root.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semisimple")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    let doc: Value = serde_json::from_slice(&out.stdout).expect("json on stdout");
    doc["report"].clone()
}

#[test]
fn orthant_is_semisimple() {
    let out = run(&["analyze", "orthant"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["semisimple"], true);
    assert_eq!(r["proper"], true);
    assert_eq!(r["order_radical"], serde_json::json!([]));
}

#[test]
fn half_plane_has_a_radical() {
    let out = run(&["analyze", &fixture("halfplane.json")]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["semisimple"], false);
    assert_eq!(r["order_radical"], serde_json::json!([["1", "0"]]));
}

#[test]
fn fixtures_agree_with_builtins() {
    for name in ["orthant2", "orthant3", "halfplane", "wedge", "ice-cream-closure", "full2", "zero2"] {
        let a = run(&["analyze", name]);
        let b = run(&["analyze", &fixture(&format!("{name}.json"))]);
        assert_eq!(a.status.code(), b.status.code(), "{name}");
        assert_eq!(report(&a), report(&b), "{name}");
    }
}

#[test]
fn malformed_input_is_an_error() {
    let out = run(&["analyze", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "{err}");
    assert!(run(&["analyze", "no-such-cone"]).status.code() == Some(1));
    assert!(run(&["norm", "--cone", "orthant", "--point", "1,2,3"]).status.code() == Some(1));
}

#[test]
fn positive_representation_of_the_orthant() {
    let out = run(&["represent", "orthant3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["status"], "found");
    assert_eq!(r["representation"]["rows"].as_array().unwrap().len(), 3);
    assert_eq!(r["verdict"]["injective"], true);
    assert_eq!(r["verdict"]["bipositive"], true);
}

#[test]
fn half_plane_has_no_injective_representation() {
    let out = run(&["represent", "halfplane"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["status"], "infeasible");
    assert_eq!(r["certificate"], serde_json::json!([["1", "0"]]));
}

#[test]
fn bipositive_fails_for_a_non_proper_closure() {
    let out = run(&["represent", "ice-cream-closure", "--mode", "bipositive"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["status"], "infeasible");
    assert_eq!(r["fallback"]["verdict"]["bipositive"], true);
    assert_eq!(r["fallback"]["verdict"]["injective"], false);
}

#[test]
fn verify_a_representation_file() {
    let rep = fixture("orthant2-identity-rep.json");
    let out = run(&["represent", "orthant2", "--mode", "bipositive", "--verify", &rep, "--samples", "1,-2;3,4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["status"], "verified");
    assert_eq!(r["seminorm"][0]["sup"], "2");
    assert_eq!(r["seminorm"][1]["sup"], "4");

    // the identity is not positive for the half-plane's order
    let out = run(&["represent", "halfplane", "--verify", &rep]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["status"], "rejected");
}

#[test]
fn soc_quotient_is_proper_but_not_closed() {
    let out = run(&["soc", "--ray", "1,0,1", "--point", "-1,0"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["proper"], true);
    assert_eq!(r["closed"], false);
    assert_eq!(r["semisimple"], false);
    assert_eq!(r["point"]["member"], true);
    assert_eq!(r["closure_sequence"].as_array().unwrap().len(), 3);
    let out = run(&["soc", "--ray", "1,0,1", "--point", "0,1"]);
    assert_eq!(report(&out)["point"]["member"], false);
}

#[test]
fn monotone_norm_values() {
    let out = run(&["norm", "--cone", "orthant", "--norm", "ellinf", "--point", "-1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["distance"], "1");
    assert_eq!(r["distance_of_negative"], "0");
    assert_eq!(r["monotone_norm"], "1");

    // inside the cone only the negative is far away
    let out = run(&["norm", "--cone", "orthant", "--norm", "ell1", "--point", "2,3"]);
    assert_eq!(report(&out)["monotone_norm"], "5");

    let hex = fixture("hexagon-norm.json");
    let out = run(&["norm", "--cone", "orthant", "--norm", "polytope", "--norm-file", &hex, "--point", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["base_norm"], "2");
    assert_eq!(r["monotone_norm"], "2");
}

#[test]
fn quotient_of_the_orthant_is_semisimple() {
    let out = run(&["quotient", "--cone", "orthant", "--kernel", "1,-1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["verdict"]["semisimple"], true);
    assert_eq!(r["pushforward"]["dim"], 1);

    // modulo a boundary ray the image is a half-line of the quotient
    let out = run(&["quotient", "--cone", "orthant3", "--kernel", "1,0,0"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn dual_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["dual", "wedge"]);
    assert_eq!(out.status.code(), Some(0));
    let dual = report(&out)["dual"].clone();
    let path = dir.path().join("dual.json");
    std::fs::write(&path, serde_json::to_string(&dual).unwrap()).unwrap();
    let out = run(&["dual", path.to_str().unwrap()]);
    let again = report(&out)["dual"].clone();
    let wedge = report(&run(&["analyze", "wedge"]))["cone"].clone();
    assert_eq!(again, wedge);
}

#[test]
fn lab_demos() {
    let out = run(&["lab", "density"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r["witness"]["n"].as_u64().unwrap() >= 1);

    let out = run(&["lab", "completion", "--n-max", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["approximate"], true);
    assert_eq!(r["cauchy_holds"], true);

    let out = run(&["lab", "envelope", "--window", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["certified"], true);
    assert_eq!(r["envelope"]["points"][0], serde_json::json!(["0", "0"]));
    assert_eq!(r["envelope"]["points"][2], serde_json::json!(["3/2", "1"]));
}

#[test]
fn text_output() {
    let out = run(&["--format", "text", "analyze", "halfplane"]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("semisimple: false"), "{text}");
    assert!(text.contains("order_radical[0]: (1, 0)"), "{text}");
}

#[test]
fn output_is_deterministic() {
    for args in [&["analyze", "wedge"][..], &["represent", "orthant3"], &["lab", "envelope"]] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
