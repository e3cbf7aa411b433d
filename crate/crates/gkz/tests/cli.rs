use std::io::Write;
use std::process::{Command as Process, Output, Stdio};

use gkz::report::Payload;
use gkz::{from_json, run, to_json, Command, ProblemFile, RunOptions};
use serde_json::Value;

fn gkz(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Process::new(env!("CARGO_BIN_EXE_gkz"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn projective_plane_collection_from_stdin() {
    let input = r#"{"toric":{"rank":1,"weights":[[1],[1],[1]],"character":["1/1"]}}"#;
    let v = json(&gkz(&["collection"], Some(input)));
    let c = &v["result"]["collection"];
    assert_eq!(c["leaves"], 3);
    assert_eq!(c["k0"], 3);
    assert_eq!(c["objects"].as_array().unwrap().len(), 3);
    let block = &c["tree"]["blocks"][0];
    assert_eq!(block["mu"], -3);
    assert_eq!(block["twists"], serde_json::json!([-2, -1, 0]));
    assert_eq!(block["lambda"], serde_json::json!([-1]));
    assert_eq!(block["fixed_columns"], serde_json::json!([]));
    assert_eq!(v["provenance"]["seed"], 0);
    assert_eq!(v["provenance"]["perturbations"][0]["vector"], serde_json::json!(["1/101"]));
}

#[test]
fn input_file_and_twist_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p2.json");
    std::fs::write(&path, r#"{"toric":{"rank":1,"weights":[[1],[1],[1]],"character":["2"]}}"#).unwrap();
    let v = json(&gkz(&["collection", "--input", path.to_str().unwrap(), "--twist-d", "-1"], None));
    assert_eq!(v["resolved"]["toric"]["twist_d"], -1);
    assert_eq!(v["result"]["collection"]["tree"]["blocks"][0]["twists"], serde_json::json!([-1, 0, 1]));
    assert_eq!(v["resolved"]["toric"]["character"], serde_json::json!(["2"]));
}

#[test]
fn orlov_equivalence() {
    let v = json(&gkz(&["orlov"], Some(r#"{"orlov":{"n":3,"degrees":[3]}}"#)));
    let o = &v["result"]["orlov"];
    assert_eq!(o["case"], "Equivalence");
    assert_eq!(o["a"], 0);
    assert_eq!(o["engine_mu"], 0);

    let v = json(&gkz(&["orlov", "--preset", "orlov", "4", "1", "--twist-d", "2"], None));
    assert_eq!(v["result"]["orlov"]["sigma_side_objects"], serde_json::json!(["O_Y(2)", "O_Y(3)", "O_Y(4)"]));
}

#[test]
fn five_point_curve_count() {
    let v = json(&gkz(&["curves-count", "--preset", "pn-curves", "2", "2", "2", "2", "2"], None));
    let c = &v["result"]["curves_count"];
    assert_eq!(c["sl2"], serde_json::json!([7, 7]));
    assert_eq!(c["pgl2"], 7);
    assert_eq!(c["walk"]["walls"].as_array().unwrap().len(), 3);
    for m in c["markings"].as_array().unwrap() {
        assert_eq!(m["count"], serde_json::json!([7, 7]));
    }
    let v = json(&gkz(&["curves-count", "--preset", "pn-curves", "1", "1", "1"], None));
    assert_eq!(v["result"]["curves_count"]["sl2"], serde_json::json!([1, 1]));
    assert_eq!(v["result"]["curves_count"]["pgl2"], Value::Null);
}

#[test]
fn abyss_certificates() {
    let v = json(&gkz(&["curves-abyss", "--preset", "hassett", "5", "3"], None));
    let a = &v["result"]["curves_abyss"];
    assert_eq!(a["verified"], true);
    assert_eq!(a["j"], 3);
    for w in a["walls"].as_array().unwrap() {
        let size = w["subset"].as_array().unwrap().len() as i64;
        let rest = w["complement_size"].as_i64().unwrap();
        assert!(size < rest);
        assert!(w["mu"].as_i64().unwrap() < 0);
    }
    let v = json(&gkz(&["curves-abyss"], Some(r#"{"curves_pn":{"weights":["2","2","2","4"]}}"#)));
    assert_eq!(v["result"]["curves_abyss"]["j"], 0);
    assert_eq!(v["result"]["curves_abyss"]["walls"][0]["subset"], serde_json::json!([4]));
}

fn dot_counts(text: &str) -> (usize, usize) {
    assert!(text.starts_with("digraph chambers {"));
    assert!(text.trim_end().ends_with('}'));
    let edges = text.lines().filter(|l| l.contains("->")).count();
    let nodes = text.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count();
    (nodes, edges)
}

#[test]
fn dot_chamber_graphs() {
    let out = gkz(&["fan", "--preset", "projective-space", "2", "--format", "dot"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(dot_counts(&String::from_utf8(out.stdout).unwrap()), (2, 1));

    // Two nonempty chambers and the empty one, pairwise adjacent: two edges
    // along the crossing path and one along the boundary.
    let out = gkz(&["fan", "--preset", "blowup-P2", "--format", "dot"], None);
    assert_eq!(dot_counts(&String::from_utf8(out.stdout).unwrap()), (3, 3));

    let v = json(&gkz(&["fan", "--preset", "blowup-P2"], None));
    let fan = &v["result"]["fan"];
    assert_eq!(fan["chambers"].as_array().unwrap().len(), 3);
    let here = fan["character_chamber"].as_u64().unwrap() as usize;
    assert_eq!(fan["chambers"][here]["k0"], 4);
}

#[test]
fn chamber_and_k0_commands() {
    let v = json(&gkz(&["chamber", "--preset", "product-P1-P1"], None));
    let c = &v["result"]["chamber"];
    assert_eq!(c["k0"], 4);
    assert_eq!(c["empty"], false);
    assert_eq!(c["effective"], true);
    let v = json(&gkz(&["k0", "--preset", "weighted-projective", "1", "2", "3"], None));
    assert_eq!(v["result"]["k0"]["k0"], 6);
    assert_eq!(v["result"]["k0"]["sigma_bases"].as_array().unwrap().len(), 3);

    let input = r#"{"toric":{"rank":2,"weights":[[1,0],[1,0],[0,1],[1,1]],"character":["2","1"]}}"#;
    let v = json(&gkz(&["k0"], Some(input)));
    let subsets: Vec<Value> = v["result"]["k0"]["sigma_bases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["subset"].clone())
        .collect();
    assert_eq!(subsets, serde_json::json!([[1, 3], [1, 4], [2, 3], [2, 4]]).as_array().unwrap().clone());
    assert_eq!(v["result"]["k0"]["k0"], 4);
}

#[test]
fn text_summaries() {
    let out = gkz(&["collection", "--preset", "blowup-P2", "--format", "text"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("objects: 4 (k0 4)"), "{text}");
    let out = gkz(&["orlov", "--preset", "orlov", "3", "4", "--format", "text"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("case: LGSideLarger"), "{text}");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["collection", "--preset", "hirzebruch", "2"][..],
        &["fan", "--preset", "blowup-P2"][..],
        &["curves-count", "--preset", "pn-curves", "1", "2", "3", "4", "5"][..],
        &["curves-abyss", "--preset", "hassett", "6", "4", "--seed", "3"][..],
    ] {
        let a = gkz(args, None);
        let b = gkz(args, None);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn keys_are_sorted() {
    let out = gkz(&["collection", "--preset", "blowup-P2"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    // Parsing would sort the keys again, so look at the raw text.
    let top: Vec<usize> = ["\"command\"", "\"input\"", "\"provenance\"", "\"resolved\"", "\"result\"", "\"schema_version\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(top.windows(2).all(|w| w[0] < w[1]), "{text}");
    let block = &text[text.find("\"blocks\"").unwrap()..];
    let nested: Vec<usize> = ["\"child\"", "\"fixed_columns\"", "\"lambda\"", "\"mu\"", "\"twists\""]
        .iter()
        .map(|k| block.find(k).unwrap())
        .collect();
    assert!(nested.windows(2).all(|w| w[0] < w[1]), "{block}");
}

#[test]
fn reports_round_trip() {
    let cases: [(&str, &[i64], Command); 7] = [
        ("blowup-P2", &[], Command::Collection),
        ("hirzebruch", &[3], Command::Fan),
        ("product-P1-P1", &[], Command::Chamber),
        ("weighted-projective", &[1, 1, 2], Command::K0),
        ("orlov", &[2, 2, 2], Command::Orlov),
        ("pn-curves", &[3, 3, 2, 2, 1, 2], Command::CurvesCount),
        ("hassett", &[7, 5], Command::CurvesAbyss),
    ];
    for (name, parameters, command) in cases {
        let input = ProblemFile::Preset(gkz::input::PresetInput {
            name: name.into(),
            parameters: parameters.to_vec(),
        });
        let report = run(&input, command, &RunOptions::default()).unwrap();
        let text = to_json(&report);
        let back = from_json(&text).unwrap();
        assert_eq!(back, report, "{name}");
        assert_eq!(to_json(&back), text);
    }
}

#[test]
fn report_fields_match_the_schema() {
    let schema: Value =
        serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    let input_schema: Value =
        serde_json::from_str(include_str!("../schema/input.schema.json")).unwrap();
    assert_eq!(schema["properties"]["schema_version"]["const"], gkz::report::REPORT_SCHEMA_VERSION);
    let required = |node: &Value| -> Vec<String> {
        let mut v: Vec<String> = node["required"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap().to_string())
            .collect();
        v.sort();
        v
    };
    let keys = |v: &Value| -> Vec<String> { v.as_object().unwrap().keys().cloned().collect() };
    for (args, payload) in [
        (&["fan", "--preset", "blowup-P2"][..], "fan"),
        (&["chamber", "--preset", "blowup-P2"][..], "chamber"),
        (&["k0", "--preset", "blowup-P2"][..], "k0"),
        (&["collection", "--preset", "blowup-P2"][..], "collection"),
        (&["orlov", "--preset", "orlov", "3", "3"][..], "orlov"),
        (&["curves-count", "--preset", "pn-curves", "2", "2", "2", "4"][..], "curves_count"),
        (&["curves-abyss", "--preset", "hassett", "5", "3"][..], "curves_abyss"),
    ] {
        let v = json(&gkz(args, None));
        assert_eq!(keys(&v), required(&schema), "{payload}");
        assert_eq!(keys(&v["provenance"]), required(&schema["properties"]["provenance"]));
        assert_eq!(keys(&v["result"][payload]), required(&schema["$defs"][payload]), "{payload}");
        let kind = keys(&v["resolved"])[0].clone();
        assert!(input_schema["properties"].get(&kind).is_some(), "{kind}");
    }
}

#[test]
fn usage_errors_exit_64() {
    let cases: [(&[&str], Option<&str>); 7] = [
        (&["nonsense"], None),
        (&["collection", "--preset", "no-such-preset"], None),
        (&["collection", "--preset", "projective-space", "x"], None),
        (&["chamber", "--preset", "blowup-P2", "--format", "dot"], None),
        (&["orlov", "--preset", "blowup-P2"], None),
        (&["collection", "--input", "/nonexistent/file.json"], None),
        (&["collection"], Some("not json")),
    ];
    for (args, stdin) in cases {
        let out = gkz(args, stdin);
        assert_eq!(out.status.code(), Some(64), "{args:?}: {}", stderr(&out));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn schema_errors_name_the_field() {
    let out = gkz(&["collection"], Some(r#"{"toric":{"rank":1,"weights":[[1],["a"]],"character":["1"]}}"#));
    assert_eq!(out.status.code(), Some(64));
    assert!(stderr(&out).contains("toric.weights[1][0]"), "{}", stderr(&out));
    let out = gkz(&["collection"], Some(r#"{"toric":{"rank":1,"weights":[[1]],"character":["1/0"]}}"#));
    assert_eq!(out.status.code(), Some(64));
    assert!(stderr(&out).contains("toric.character[0]"), "{}", stderr(&out));
}

#[test]
fn domain_errors_exit_2() {
    let cases: [(&[&str], Option<&str>); 4] = [
        // Character on the wall between the two chambers of Bl_pt P^2.
        (&["collection"], Some(r#"{"toric":{"rank":2,"weights":[[1,0],[1,0],[0,1],[1,1]],"character":["1","1"]}}"#)),
        // The monomial x*y is invariant.
        (&["collection"], Some(r#"{"toric":{"rank":1,"weights":[[1],[-1]],"character":["1"]}}"#)),
        (&["curves-count", "--preset", "pn-curves", "1", "1", "1", "--group", "pgl2"], None),
        (&["curves-abyss", "--preset", "hassett", "5", "2"], None),
    ];
    for (args, stdin) in cases {
        let out = gkz(args, stdin);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn payload_kinds_follow_commands() {
    let input = ProblemFile::Preset(gkz::input::PresetInput {
        name: "projective-space".into(),
        parameters: vec![3],
    });
    let r = run(&input, Command::Collection, &RunOptions::default()).unwrap();
    match r.result {
        Payload::Collection(c) => assert_eq!(c.leaves, 4),
        other => panic!("{other:?}"),
    }
    assert_eq!(r.command, "collection");
}
