use std::path::{Path, PathBuf};
use std::process::Command as Process;

use arity_cli::formats::{to_json, OperadFile, SimplicialSetFile};
use arity_cli::{parse_document, run, Command, Document, InputError, Manifest, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};
use serde_json::Value;

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("arity-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run_on(command: Command, inputs: &[&Path]) -> (i32, Value) {
    let out = run(&Manifest::new(command, inputs.iter().map(|p| p.to_path_buf()).collect()));
    (out.code, out.report)
}

fn examples() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(example(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    v.sort();
    v
}

#[test]
fn every_example_round_trips() {
    let files = examples();
    assert!(files.len() >= 12);
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = parse_document(&text, "x").unwrap();
        let again = to_json(&doc);
        assert_eq!(again, text, "{}", path.display());
        assert_eq!(parse_document(&again, "x").unwrap(), doc);
    }
}

#[test]
fn typed_round_trips() {
    for name in ["nerve_category.json", "arrow_category.json"] {
        let Document::Category(file) = parse_document(&std::fs::read_to_string(example(name)).unwrap(), name).unwrap() else {
            panic!()
        };
        let c = file.to_category().unwrap();
        assert_eq!(arity_cli::formats::CategoryFile::from_category(&c), file);
    }
    let Document::Operad(file) =
        parse_document(&std::fs::read_to_string(example("operad_first_marker.json")).unwrap(), "x").unwrap()
    else {
        panic!()
    };
    assert_eq!(OperadFile::from_operad(&file.to_operad().unwrap()), file);
}

#[test]
fn nerve_reports_level_cardinalities() {
    let (code, report) = run_on(Command::Nerve, &[&example("nerve_category.json")]);
    assert_eq!(code, EXIT_PASS);
    let sizes: Vec<u64> = report["result"]["levels"].as_array().unwrap().iter().map(|l| l["size"].as_u64().unwrap()).collect();
    // objects; 5 identities + 7 arrows; composable pairs and triples
    assert_eq!(sizes, vec![5, 12, 23, 39]);
}

#[test]
fn segal_failure_has_a_witness() {
    let (code, report) = run_on(Command::Segal, &[&example("spine_of_triangle.json")]);
    assert_eq!(code, EXIT_FAIL);
    assert_eq!(report["status"], "fail");
    let w = &report["witness"];
    assert_eq!((w["p"].as_u64(), w["q"].as_u64()), (Some(1), Some(1)));
    assert_eq!(w["elements"], serde_json::json!(["0<1", "1<2"]));
}

#[test]
fn store_normalize_interaction_update_lookup() {
    let (code, report) = run_on(Command::StoreNormalize, &[&example("store_update_lookup.json")]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(report["result"]["normal_form"], "update_0,1(x1)");
}

#[test]
fn commands_pass_on_their_examples() {
    let cases = [
        (Command::Validate, "nerve_category.json"),
        (Command::Categorify, "nerve_category.json"),
        (Command::Kan, "kan_discrete_into_arrow.json"),
        (Command::Kan, "kan_full_inclusion.json"),
        (Command::Density, "factorization_graph.json"),
        (Command::Factorize, "factorization_arrow.json"),
        (Command::Zigzag, "factorization_arrow.json"),
        (Command::PdCompose, "pd_composition.json"),
        (Command::Free2, "globular_parallel.json"),
        (Command::StoreCanonical, "store_update_lookup.json"),
        (Command::StoreCanonical, "store_flip.json"),
        (Command::Theta, "monad_free_category.json"),
        (Command::Theta, "monad_state.json"),
        (Command::OperadValidate, "operad_projection.json"),
        (Command::OperadIso, "operad_projection.json"),
        (Command::StronglyRegular, "equations.json"),
    ];
    for (command, file) in cases {
        let (code, report) = run_on(command, &[&example(file)]);
        assert_eq!(code, EXIT_PASS, "{command} on {file}: {report}");
    }
    let (_, report) = run_on(Command::PdCompose, &[&example("pd_composition.json")]);
    assert_eq!(report["result"]["composite"], serde_json::json!([1, 2, 0, 2, 0, 0]));
    let (_, report) = run_on(Command::Factorize, &[&example("factorization_arrow.json")]);
    assert_eq!(report["result"]["factorization"]["p"], 3);
}

#[test]
fn input_errors_exit_two() {
    let (code, report) = run_on(Command::Nerve, &[&example("equations.json")]);
    assert_eq!((code, report["status"].as_str()), (EXIT_INPUT, Some("error")));
    let (code, _) = run_on(Command::Nerve, &[Path::new("/definitely/not/here.json")]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _) = run_on(Command::Nerve, &[]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _) = run_on(Command::Nerve, &[&example("nerve_category.json"), &example("arrow_category.json")]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn malformed_json_reports_a_position() {
    let err = parse_document("{\n  \"kind\": \"graph\",\n  \"vertices\": [\"a\",]\n}", "g.json").unwrap_err();
    let InputError::Json { line, .. } = err else { panic!("{err:?}") };
    assert_eq!(line, 3);
    let err = parse_document("{\"kind\": \"graph\", \"vertices\": [1], \"edges\": []}", "x").unwrap_err();
    assert!(matches!(&err, InputError::Invalid { at, .. } if at == "vertices[0]"), "{err:?}");
    assert!(matches!(parse_document("{\"kind\": \"pony\"}", "x"), Err(InputError::Invalid { .. })));
    assert!(matches!(parse_document("{\"vertices\": []}", "x"), Err(InputError::Invalid { .. })));
    let extra = parse_document("{\"kind\": \"graph\", \"vertices\": [], \"edges\": [], \"extra\": 1}", "x");
    assert!(matches!(extra, Err(InputError::Invalid { .. })));
}

#[test]
fn graph_file_parses() {
    let text = r#"{"kind": "graph", "vertices": ["u", "v"], "edges": [{"name": "e", "src": "u", "tgt": "v"}]}"#;
    let Document::Graph(g) = parse_document(text, "x").unwrap() else { panic!() };
    let g = g.to_graph().unwrap();
    assert_eq!((g.num_vertices(), g.num_edges(), g.src(0), g.tgt(0)), (2, 1, 0, 1));
    let bad = r#"{"kind": "graph", "vertices": ["u"], "edges": [{"name": "e", "src": "u", "tgt": "w"}]}"#;
    let err = parse_document(bad, "x").unwrap_err().to_string();
    assert!(err.contains("edges[0].tgt") && err.contains("unknown vertex `w`"), "{err}");
}

#[test]
fn simplicial_identity_violation_is_named() {
    let text = std::fs::read_to_string(example("spine_of_triangle.json")).unwrap();
    let Document::SimplicialSet(mut x) = parse_document(&text, "x").unwrap() else { panic!() };
    // make s_0 on X_0 land on the wrong edge: d_0 s_0 = 1 breaks
    let s0 = &mut x.degens[0][0];
    s0.swap(0, 1);
    let err = parse_document(&to_json(&Document::SimplicialSet(SimplicialSetFile { ..x })), "x").unwrap_err();
    let InputError::Invalid { message, .. } = &err else { panic!("{err:?}") };
    assert!(message.contains("d_i s_j = 1"), "{message}");
}

#[test]
fn dangling_operad_target_is_an_error() {
    let text = std::fs::read_to_string(example("operad_projection.json")).unwrap();
    let Document::Operad(mut c) = parse_document(&text, "x").unwrap() else { panic!() };
    c.composition[0].result = "nowhere".into();
    let err = parse_document(&to_json(&Document::Operad(c)), "x").unwrap_err();
    assert!(err.to_string().contains("nowhere"), "{err}");
}

#[test]
fn reports_are_deterministic() {
    for path in examples() {
        for command in [Command::Validate, Command::Nerve, Command::Segal, Command::OperadIso, Command::StoreCanonical] {
            let m = Manifest { bound: Some(2), trunc: Some(2), ..Manifest::new(command, vec![path.clone()]) };
            assert_eq!(run(&m).render(), run(&m).render());
        }
    }
}

#[test]
fn binary_exit_codes_and_output_file() {
    let bin = env!("CARGO_BIN_EXE_arity");
    let status = |args: &[&str]| Process::new(bin).args(args).output().unwrap();
    let ok = status(&["nerve", "--input", example("nerve_category.json").to_str().unwrap(), "--trunc", "3"]);
    assert_eq!(ok.status.code(), Some(0));
    let again = status(&["nerve", "--input", example("nerve_category.json").to_str().unwrap(), "--trunc", "3"]);
    assert_eq!(ok.stdout, again.stdout);
    let fail = status(&["segal", "--input", example("spine_of_triangle.json").to_str().unwrap()]);
    assert_eq!(fail.status.code(), Some(1));
    let bad = status(&["segal", "--input", "/no/such/file.json"]);
    assert_eq!(bad.status.code(), Some(2));
    let out = scratch("report.json", "");
    let written = status(&[
        "pd-compose",
        "-i",
        example("pd_composition.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(written.status.code(), Some(0));
    assert!(written.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["result"]["composite"], serde_json::json!([1, 2, 0, 2, 0, 0]));
}

#[test]
fn operad_validate_fails_on_a_broken_table() {
    let text = std::fs::read_to_string(example("operad_projection.json")).unwrap();
    let Document::Operad(mut c) = parse_document(&text, "x").unwrap() else { panic!() };
    // send one composite to a different projection of the same arity
    let k = c
        .composition
        .iter()
        .position(|e| e.result.starts_with("p2_") && e.outer != "p1_0" && e.inner.iter().all(|i| i == "p1_0"))
        .unwrap();
    let wrong = if c.composition[k].result == "p2_0" { "p2_1" } else { "p2_0" };
    c.composition[k].result = wrong.into();
    let path = scratch("broken_operad.json", &to_json(&Document::Operad(c)));
    let (code, report) = run_on(Command::OperadValidate, &[&path]);
    assert_eq!(code, EXIT_FAIL, "{report}");
    assert!(
        !report["witness"]["associativity_violations"].as_array().unwrap().is_empty()
            || !report["witness"]["identity_violations"].as_array().unwrap().is_empty()
    );
}
