//! End-to-end tests of the `fibercone` binary: one per command, plus error
//! codes, batch behavior, and schema round-trips.

use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

fn run(input: &str, args: &[&str]) -> (Value, String, i32) {
    let (raw, code) = run_raw(input, args);
    let value = serde_json::from_str(raw.trim_end()).unwrap_or(Value::Null);
    (value, raw, code)
}

fn run_raw(input: &str, args: &[&str]) -> (String, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fibercone"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(input.as_bytes())
        .expect("write input");
    let output = child.wait_with_output().expect("binary runs");
    (
        String::from_utf8(output.stdout).expect("utf8 output"),
        output.status.code().expect("exit code"),
    )
}

#[test]
fn ring_eval_degree_example() {
    let job = json!({
        "command": "ring-eval",
        "space": {"r1": 2, "r2": 2, "d1": -1, "d2": 0},
        "terms": [{"e": 0, "a": 2, "b": 1, "c": "1"}],
    });
    let (value, _, code) = run(&job.to_string(), &[]);
    assert_eq!(code, 0);
    assert_eq!(value["degree"], "-1");
    assert_eq!(value["grade"], 3);
}

#[test]
fn seshadri_point_example() {
    let bundle = json!({"hn": [{"rank": 1, "degree": -1}, {"rank": 1, "degree": 1}], "normalized": true});
    let job = json!({
        "command": "seshadri-point",
        "e1": bundle, "e2": bundle,
        "divisor": {"basis": "tau", "coords": ["2", "3", "1"]},
        "point": "on_delta3bar_curve",
    });
    let (value, _, code) = run(&job.to_string(), &[]);
    assert_eq!(code, 0);
    assert_eq!(value["kind"], "exact");
    assert_eq!(value["value"], "1");
    assert_eq!(value["justification"], "Thm4.3.iii");
}

#[test]
fn hn_from_split_example() {
    let job = json!({"command": "hn-from-split", "split_degrees": [2, 2, -1]});
    let (_, raw, code) = run(&job.to_string(), &[]);
    assert_eq!(code, 0);
    assert_eq!(
        raw.trim_end(),
        r#"{"hn":[{"rank":1,"degree":-1},{"rank":2,"degree":4}]}"#
    );
}

#[test]
fn split_output_round_trips_as_bundle_input() {
    let job = json!({"command": "hn-from-split", "split_degrees": [3, 0, 0, -2]});
    let (bundle, _, code) = run(&job.to_string(), &[]);
    assert_eq!(code, 0);
    let validate = json!({"command": "hn-validate", "bundle": bundle});
    let (value, _, code) = run(&validate.to_string(), &[]);
    assert_eq!(code, 0);
    assert_eq!(value["valid"], true);
    assert_eq!(value["rank"], 4);
    assert_eq!(value["degree"], 1);
    assert_eq!(value["semistable"], false);
}

#[test]
fn volume_reports_exact_power_and_root() {
    let job = json!({
        "command": "volume",
        "space": {"r1": 2, "r2": 2, "d1": 0, "d2": 0},
        "divisor": {"basis": "tau", "coords": ["2", "3", "4"]},
    });
    let (value, _, code) = run(&job.to_string(), &[]);
    assert_eq!(code, 0);
    assert_eq!(value["top_power"], "144");
    assert_eq!(value["dimension"], 3);
    let root = value["root"].as_f64().unwrap();
    assert!((root - 5.241_482_788_417_793).abs() < 1e-11);
}

#[test]
fn cone_commands() {
    let space = json!({"r1": 2, "r2": 2, "d1": -2, "d2": 0, "mu11": "-1", "mu21": "0"});
    let (value, _, code) = run(
        &json!({"command": "cone-nef", "space": space}).to_string(),
        &[],
    );
    assert_eq!(code, 0);
    assert_eq!(value["tau1"]["coords"], json!(["1", "0", "1"]));
    assert_eq!(value["F"]["coords"], json!(["0", "0", "1"]));

    let (value, _, code) = run(
        &json!({"command": "cone-check", "space": space, "divisor": {"basis": "tau", "coords": ["1", "2", "0"]}})
            .to_string(),
        &[],
    );
    assert_eq!(code, 0);
    assert_eq!(value["nef"], true);
    assert_eq!(value["ample"], false);

    let (value, _, code) = run(
        &json!({"command": "cone-slice", "space": space}).to_string(),
        &[],
    );
    assert_eq!(code, 0);
    assert_eq!(value["vertices"][0], json!(["1", "0", "1"]));

    let (value, _, code) = run(
        &json!({"command": "cone-curves", "space": space}).to_string(),
        &[],
    );
    assert_eq!(code, 0);
    assert_eq!(value["delta1"]["ring"], json!([{"e": 1, "a": 0, "b": 1, "c": "1"}]));

    let (value, _, code) = run(
        &json!({"command": "witness", "space": space}).to_string(),
        &[],
    );
    assert_eq!(code, 0);
    assert_eq!(value["tau1_pairing"], "0");
    assert_eq!(value["tau2_pairing"], "0");

    let (value, _, code) = run(
        &json!({"command": "pairing", "space": space, "trials": 3}).to_string(),
        &["--seed", "7"],
    );
    assert_eq!(code, 0);
    assert_eq!(value["identity"], true);
    assert_eq!(value["trials"], 3);
}

#[test]
fn seshadri_global_command() {
    let bundle = json!({"hn": [{"rank": 1, "degree": -1}, {"rank": 1, "degree": 1}], "normalized": true});
    let job = json!({
        "command": "seshadri-global",
        "e1": bundle, "e2": bundle,
        "divisor": {"basis": "tau", "coords": ["2", "3", "1"]},
    });
    let (value, _, code) = run(&job.to_string(), &[]);
    assert_eq!(code, 0);
    assert_eq!(value["epsilon"]["kind"], "exact");
    assert_eq!(value["epsilon"]["value"], "1");
    assert_eq!(value["epsilon_sup"]["kind"], "interval");
    assert_eq!(value["epsilon_sup"]["upper"], "2");
}

#[test]
fn exit_codes_and_error_documents() {
    // Malformed JSON.
    let (value, _, code) = run("{nope", &[]);
    assert_eq!(code, 2);
    assert_eq!(value["error_kind"], "parse");

    // Unknown command.
    let (value, _, code) = run(&json!({"command": "frobnicate"}).to_string(), &[]);
    assert_eq!(code, 2);
    assert_eq!(value["error_kind"], "parse");

    // Invalid HN data.
    let job = json!({"command": "hn-validate", "bundle": {"hn": [{"rank": 1, "degree": 1}, {"rank": 1, "degree": -1}]}});
    let (value, _, code) = run(&job.to_string(), &[]);
    assert_eq!(code, 3);
    assert_eq!(value["error_kind"], "validation");

    // Hypothesis-violating point tag.
    let job = json!({
        "command": "seshadri-point",
        "e1": {"hn": [{"rank": 2, "degree": 0}]},
        "e2": {"hn": [{"rank": 1, "degree": -1}, {"rank": 1, "degree": 1}], "normalized": true},
        "divisor": {"basis": "tau", "coords": ["1", "2", "3"]},
        "point": "in_Bminus_tau1",
    });
    let (value, _, code) = run(&job.to_string(), &[]);
    assert_eq!(code, 4);
    assert_eq!(value["error_kind"], "hypothesis");

    // Rank cap.
    let job = json!({"command": "cone-nef", "space": {"r1": 100, "r2": 2, "d1": 0, "d2": 0}});
    let (value, _, code) = run(&job.to_string(), &[]);
    assert_eq!(code, 3);
    assert_eq!(value["error_kind"], "validation");
    let (_, _, code) = run(&job.to_string(), &["--max-rank", "128"]);
    assert_eq!(code, 0);
}

#[test]
fn batch_processes_jobs_independently() {
    let batch = json!([
        {"command": "hn-from-split", "split_degrees": [5]},
        {"command": "hn-validate", "bundle": {"hn": [{"rank": 0, "degree": 1}]}},
        {"command": "hn-from-split", "split_degrees": [1, 1]},
    ]);
    let (value, _, code) = run(&batch.to_string(), &[]);
    // First failing job sets the exit code; later jobs still run.
    assert_eq!(code, 3);
    let jobs = value.as_array().unwrap();
    assert_eq!(jobs.len(), 3);
    assert!(jobs[0].get("hn").is_some());
    assert_eq!(jobs[1]["error_kind"], "validation");
    assert!(jobs[2].get("hn").is_some());
}

#[test]
fn permuting_a_batch_permutes_outputs() {
    let jobs = [
        json!({"command": "hn-from-split", "split_degrees": [2, 2, -1]}),
        json!({"command": "cone-slice", "space": {"r1": 2, "r2": 3, "d1": -1, "d2": 0, "mu11": "-1", "mu21": "0"}}),
        json!({"command": "witness", "space": {"r1": 2, "r2": 2, "d1": 2, "d2": 0, "mu11": "0", "mu21": "0"}}),
        json!({"command": "volume", "space": {"r1": 2, "r2": 2, "d1": 0, "d2": 0},
               "divisor": {"basis": "tau", "coords": ["1", "1", "1"]}}),
    ];
    let forward = Value::Array(jobs.to_vec());
    let permutation = [2usize, 0, 3, 1];
    let permuted = Value::Array(permutation.iter().map(|&i| jobs[i].clone()).collect());

    let (forward_out, _, code) = run(&forward.to_string(), &[]);
    assert_eq!(code, 0);
    let (permuted_out, _, code) = run(&permuted.to_string(), &[]);
    assert_eq!(code, 0);

    let forward_docs = forward_out.as_array().unwrap();
    let permuted_docs = permuted_out.as_array().unwrap();
    for (position, &source) in permutation.iter().enumerate() {
        assert_eq!(permuted_docs[position], forward_docs[source]);
    }
}

#[test]
fn file_input_output_and_job_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let input_path = dir.path().join("job.json");
    let output_path = dir.path().join("out.json");
    let side_path = dir.path().join("side.json");
    let job = json!({
        "command": "hn-from-split",
        "split_degrees": [2, 2, -1],
        "output_path": side_path.to_str().unwrap(),
    });
    std::fs::write(&input_path, job.to_string()).unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_fibercone"))
        .args([
            "--input",
            input_path.to_str().unwrap(),
            "--output",
            output_path.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let main_doc = std::fs::read_to_string(&output_path).unwrap();
    let side_doc = std::fs::read_to_string(&side_path).unwrap();
    assert_eq!(main_doc, side_doc);
    assert!(main_doc.contains("\"hn\""));
}

#[test]
fn space_bundle_cross_check() {
    // Space consistent with the bundles: fine.
    let job = json!({
        "command": "cone-nef",
        "space": {"r1": 2, "r2": 2, "d1": 0, "d2": 0, "mu11": "-1", "mu21": "-1"},
        "e1": {"hn": [{"rank": 1, "degree": -1}, {"rank": 1, "degree": 1}]},
        "e2": {"hn": [{"rank": 1, "degree": -1}, {"rank": 1, "degree": 1}]},
    });
    let (_, _, code) = run(&job.to_string(), &[]);
    assert_eq!(code, 0);

    // Disagreeing slope: rejected.
    let job = json!({
        "command": "cone-nef",
        "space": {"r1": 2, "r2": 2, "d1": 0, "d2": 0, "mu11": "0", "mu21": "-1"},
        "e1": {"hn": [{"rank": 1, "degree": -1}, {"rank": 1, "degree": 1}]},
        "e2": {"hn": [{"rank": 1, "degree": -1}, {"rank": 1, "degree": 1}]},
    });
    let (value, _, code) = run(&job.to_string(), &[]);
    assert_eq!(code, 3);
    assert_eq!(value["error_kind"], "validation");
}

#[test]
fn pretty_output_parses_to_same_document() {
    let job = json!({"command": "cone-slice", "space": {"r1": 3, "r2": 3, "d1": 4, "d2": -4}});
    let (plain, _, _) = run(&job.to_string(), &[]);
    let (pretty, raw, code) = run(&job.to_string(), &["--pretty"]);
    assert_eq!(code, 0);
    assert!(raw.contains('\n'));
    assert_eq!(plain, pretty);
}
