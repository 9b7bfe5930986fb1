use std::process::Command;

use morifan_cli::run;
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("morifan").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = invoke(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn chambers(doc: &Value) -> usize {
    doc["cones"].as_array().unwrap().iter().filter(|c| c["kind"] == "chamber").count()
}

#[test]
fn fan_of_fixtures() {
    assert_eq!(chambers(&json(&["fan", "--fixture", "bl2p3"])), 5);
    assert_eq!(chambers(&json(&["fan", "--fixture", "p2"])), 1);
    let doc = json(&["fan", "--fixture", "p2"]);
    assert_eq!(doc["rays"], serde_json::json!([[1]]));
}

#[test]
fn fan_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(invoke(&["fan", bad.to_str().unwrap()]).0, 2);

    let unknown = dir.path().join("unknown.json");
    std::fs::write(&unknown, r#"{"rank": 1, "basis": ["H"], "generators": [], "colour": 1}"#).unwrap();
    assert_eq!(invoke(&["fan", unknown.to_str().unwrap()]).0, 2);

    let nonpointed = dir.path().join("line.json");
    std::fs::write(
        &nonpointed,
        r#"{"rank": 1, "basis": ["H"], "generators": [{"name": "a", "class": [1]}, {"name": "b", "class": [-1]}]}"#,
    )
    .unwrap();
    let (code, _, err) = invoke(&["fan", nonpointed.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("not pointed"), "{err}");

    let deficient = dir.path().join("flat.json");
    std::fs::write(
        &deficient,
        r#"{"rank": 2, "basis": ["A", "B"], "generators": [{"name": "a", "class": [1, 1]}, {"name": "b", "class": [2, 2]}]}"#,
    )
    .unwrap();
    assert_eq!(invoke(&["fan", deficient.to_str().unwrap()]).0, 3);

    assert_eq!(invoke(&["fan", dir.path().join("missing.json").to_str().unwrap()]).0, 2);
    assert_eq!(invoke(&["fan", "--fixture", "p9"]).0, 2);
    assert_eq!(invoke(&["frobnicate"]).0, 2);
}

#[test]
fn weight_files_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bl2p3.json");
    std::fs::write(&path, morifan::FixtureLibrary::weight_text("bl2p3").unwrap()).unwrap();
    let from_file = invoke(&["fan", path.to_str().unwrap()]);
    let from_fixture = invoke(&["fan", "--fixture", "bl2p3"]);
    assert_eq!(from_file, from_fixture);
}

#[test]
fn zariski_decompositions() {
    let doc = json(&["zariski", "--fixture", "bl2p3", "-d", "1,1,0"]);
    assert_eq!(doc["positive"], serde_json::json!(["1", "0", "0"]));
    assert_eq!(doc["negative"], serde_json::json!(["0", "1", "0"]));
    assert_eq!(doc["negative_support"], serde_json::json!(["e1"]));
    assert_eq!(doc["kind"], "cell");

    let doc = json(&["zariski", "--fixture", "bl2p3", "-d", "1,0,0"]);
    assert_eq!(doc["negative"], serde_json::json!(["0", "0", "0"]));

    let doc = json(&["zariski", "--fixture", "bl2p3", "--divisor", "1/2,1/3,0"]);
    assert_eq!(doc["positive"], serde_json::json!(["1/2", "0", "0"]));
    assert_eq!(doc["negative"], serde_json::json!(["0", "1/3", "0"]));

    let (code, _, err) = invoke(&["zariski", "--fixture", "bl2p3", "-d", "-1,0,0"]);
    assert_eq!(code, 4, "{err}");
    assert_eq!(invoke(&["zariski", "--fixture", "bl2p3", "-d", "1,0"]).0, 3);
    assert_eq!(invoke(&["zariski", "--fixture", "bl2p3", "-d", "1,x,0"]).0, 2);
}

#[test]
fn certificates_need_integral_classes() {
    let doc = json(&["zariski", "--fixture", "bl2p3", "-d", "2,1,1", "--certify"]);
    let checks = doc["certificate"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks.iter().all(|c| c["holds"] == true));
    assert_eq!(invoke(&["zariski", "--fixture", "bl2p3", "-d", "1/2,0,0", "--certify"]).0, 3);
}

#[test]
fn chambers_and_sections() {
    let doc = json(&["chamber", "--fixture", "bl2p3", "-d", "2,1,-1"]);
    assert_eq!(doc["kind"], "chamber");
    assert_eq!(doc["exceptional"], serde_json::json!(["e1"]));
    assert_eq!(invoke(&["chamber", "--fixture", "bl2p3", "-d", "0,0,0"]).0, 3);
    assert_eq!(invoke(&["chamber", "--fixture", "bl2p3", "-d", "0,-1,0"]).0, 4);

    assert_eq!(json(&["h0", "--fixture", "bl2p3", "-d", "1,0,0"])["h0"], 4);
    assert_eq!(json(&["h0", "--fixture", "bl2p3", "-d", "-1,0,0"])["h0"], 0);
    assert_eq!(invoke(&["h0", "--fixture", "bl2p3", "-d", "1/2,0,0"]).0, 3);
    assert_eq!(invoke(&["h0", "--fixture", "p3", "-d", "40", "--ceiling", "100"]).0, 3);
}

#[test]
fn signatures() {
    let doc = json(&["signature", "--fixture", "bl2p3", "-d", "1,0,0"]);
    let semistable = doc["semistable_supports"].as_array().unwrap();
    assert!(semistable.contains(&serde_json::json!([2, 4])));
    let empty = json(&["signature", "--fixture", "bl2p3", "-d", "-1,0,0"]);
    assert_eq!(empty["semistable_supports"], serde_json::json!([]));
}

#[test]
fn verification() {
    for name in ["bl2p3→bl1p3", "bl2p3->p3", "bl1p3→p3", "bl2p3→z2quot"] {
        let (code, out, err) = invoke(&["verify", "--fixture-map", name]);
        assert_eq!(code, 0, "{name}: {err}");
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["verdict"], "PASS");
        assert_eq!(doc["mismatches"], serde_json::json!([]));
    }
    let (code, out, _) = invoke(&["verify", "--fixture-map", "bl2p3→p1xp1"]);
    assert_eq!(code, 5);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["verdict"], "FAIL");
    assert!(!doc["mismatches"].as_array().unwrap().is_empty());
    assert_eq!(invoke(&["verify", "--fixture-map", "nowhere"]).0, 2);
}

#[test]
fn verification_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };
    let x = write("x.json", morifan::FixtureLibrary::weight_text("bl2p3").unwrap());
    let y = write("y.json", morifan::FixtureLibrary::weight_text("bl1p3").unwrap());
    let m = write("m.json", "{\"source_rank\": 2, \"matrix\": [[1, 0], [0, 1], [0, 0]]}");
    assert_eq!(invoke(&["verify", &x, &y, &m]).0, 0);
    let f1 = write("f1.json", morifan::FixtureLibrary::weight_text("p1xp1").unwrap());
    assert_eq!(invoke(&["verify", &x, &f1, &m]).0, 5);
    let bad = write("bad.json", "{\"source_rank\": 2, \"matrix\": [[1, 1], [1, 1], [0, 0]]}");
    assert_eq!(invoke(&["verify", &x, &y, &bad]).0, 3);
}

#[test]
fn restrictions() {
    let doc = json(&["restrict", "--fixture", "bl2p3", "--subspace", "1,0,0:0,1,1"]);
    assert_eq!(chambers(&doc), 3);
    assert_eq!(
        serde_json::to_string(&doc).unwrap(),
        serde_json::to_string(&serde_json::from_str::<Value>(include_str!("../../core/fixtures/golden/z2quot.fan.json")).unwrap()).unwrap()
    );
    let doc = json(&["restrict", "--fixture", "bl2p3", "--region", "3,1,-2:3,-2,1"]);
    assert_eq!(doc["cones"].as_array().unwrap().iter().filter(|c| c["dim"] == 2).count(), 3);
    assert_eq!(invoke(&["restrict", "--fixture", "bl2p3", "--subspace", "1,0,0:2,0,0"]).0, 3);
}

#[test]
fn slices() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("fan.svg");
    let doc = json(&["slice", "--fixture", "bl2p3", "--svg", svg.to_str().unwrap()]);
    assert_eq!(doc["polygons"].as_array().unwrap().len(), 5);
    let corners: Vec<&str> = doc["corners"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
    assert_eq!(corners, ["E2", "E1", "H-E1-E2"]);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let doc = json(&["slice", "--fixture", "bl2p3", "--subspace", "1,0,0:0,1,0"]);
    let overlay: Vec<&str> = doc["overlay"].as_array().unwrap().iter().map(|p| p["label"].as_str().unwrap()).collect();
    assert_eq!(overlay, ["E1", "H-E1"]);
    assert_eq!(doc["overlay"][1]["point"], serde_json::json!(["0", "1/2"]));

    assert_eq!(invoke(&["slice", "--fixture", "f1"]).0, 3);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_morifan");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["fan", "--fixture", "bl2p3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(ok.stderr.is_empty());
    assert_eq!(status(&["fan", "/nonexistent/file.json"]).status.code(), Some(2));
    let not_eff = status(&["zariski", "--fixture", "bl2p3", "-d", "-1,0,0"]);
    assert_eq!(not_eff.status.code(), Some(4));
    assert!(not_eff.stdout.is_empty());
    assert!(!not_eff.stderr.is_empty());
    assert_eq!(status(&["verify", "--fixture-map", "bl2p3->p1xp1"]).status.code(), Some(5));
    assert_eq!(status(&["slice", "--fixture", "f1"]).status.code(), Some(3));
    assert_eq!(status(&["--version"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["fan", "--fixture", "bl2p3"][..],
        &["verify", "--fixture-map", "bl2p3→bl1p3"],
        &["signature", "--fixture", "bl2p3", "-d", "1,0,0"],
    ] {
        assert_eq!(invoke(args), invoke(args));
    }
}
