use std::path::PathBuf;
use std::process::{Command, Output};

use hopfrob::builders::taft;
use hopfrob::hopfcore::check_hopf;
use hopfrob_cli::pipeline::{run_pipeline, Stage, Status};
use hopfrob_cli::spec::{export_spec, parse_spec, AlgebraSpec, SpecError};
use hopfrob_cli::load_source;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfrob")).args(args).output().unwrap()
}

#[test]
fn fixture_is_the_builder() {
    let spec = load_source(&fixture("taft2.json")).unwrap();
    assert_eq!(spec, AlgebraSpec::from_hopf(&taft(2)));
}

#[test]
fn parse_errors() {
    assert!(matches!(parse_spec(""), Err(SpecError::Parse { .. })));
    assert!(matches!(load_source(&fixture("taft2_malformed.json")), Err(SpecError::Parse { line: 10, .. })));
    let text = std::fs::read_to_string(fixture("taft2.json")).unwrap();
    let out_of_range = text.replace("[3,0,\"1\"]", "[4,0,\"1\"]");
    assert!(matches!(parse_spec(&out_of_range), Err(SpecError::Invalid { .. })));
    let duplicate = text.replace("[0,0,[[0,\"1\"]]],", "[0,0,[[0,\"1\"]]],\n    [0,0,[[0,\"1\"]]],");
    assert!(matches!(parse_spec(&duplicate), Err(SpecError::Invalid { .. })));
    let rational = text.replace("\"kind\":\"cyclotomic\",\"order\":2", "\"kind\":\"rational\"");
    assert_eq!(parse_spec(&rational).unwrap().bialgebra.mult, taft(2).mult);
    let out_of_field = rational.replace("[1,2,[[3,\"-1\"]]]", "[1,2,[[3,\"z\"]]]");
    assert!(matches!(parse_spec(&out_of_field), Err(SpecError::FieldMismatch { .. })));
    assert!(matches!(load_source("preset:taft:one"), Err(SpecError::Invalid { .. })));
    assert!(matches!(load_source("/no/such/file.json"), Err(SpecError::Io { .. })));
}

#[test]
fn sym3_all_green() {
    let spec = load_source("preset:sym:3").unwrap();
    let r = run_pipeline(&spec, "sym:3", &Stage::ALL);
    assert!(r.ok(), "{r}");
    assert_eq!(r.double_dim, Some(36));
}

#[test]
fn missing_antipode_is_solved() {
    let mut spec = AlgebraSpec::from_hopf(&taft(3));
    spec.antipode = None;
    let r = run_pipeline(&spec, "taft:3", &[Stage::Hf]);
    assert!(r.ok(), "{r}");
    assert_eq!(r.antipode_order, Some(6));
}

#[test]
fn mutant_stops_at_bialgebra() {
    let spec = load_source(&fixture("taft2_mutated.json")).unwrap();
    let r = run_pipeline(&spec, "mutant", &Stage::ALL);
    assert_eq!(r.status(Stage::Bialgebra), Some(Status::Fail));
    assert!(r.stages.iter().skip(1).all(|s| s.status == Status::Skipped));
}

#[test]
fn report_text_and_json() {
    let out = run(&["report", "preset:taft:2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("cointegral Λ = x + (-1)·gx"), "{text}");
    assert!(text.contains("integral λ = δ_x"), "{text}");

    let a = run(&["report", "preset:taft:2", "--json"]).stdout;
    let b = run(&["report", "preset:taft:2", "--json"]).stdout;
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["cointegral"], serde_json::json!(["0", "1", "0", "-1"]));
    assert_eq!(v["stages"].as_array().unwrap().len(), 8);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", &fixture("taft2.json")]).status.code(), Some(0));
    assert_eq!(run(&["integrals", &fixture("taft2_mutated.json")]).status.code(), Some(1));
    assert_eq!(run(&["hf", &fixture("taft2_malformed.json")]).status.code(), Some(2));
    assert_eq!(run(&["verify", "preset:nothing"]).status.code(), Some(2));
}

#[test]
fn emitted_doubles_reparse() {
    let dir = std::env::temp_dir().join(format!("hopfrob-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for flag in ["--red", "--classic"] {
        let path = dir.join(format!("double{flag}.json"));
        let out = run(&["double", "preset:taft:2", flag, "--emit", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let text = std::fs::read_to_string(&path).unwrap();
        let spec = parse_spec(&text).unwrap();
        assert_eq!(spec.dim(), 16);
        let h = hopfrob::hopfcore::HopfData { bialgebra: spec.bialgebra.clone(), antipode: spec.antipode.clone().unwrap() };
        assert!(check_hopf(&h).is_empty());
        assert_eq!(export_spec(&spec), text);
    }
    let hf = dir.join("red.json");
    assert_eq!(run(&["hf", "preset:cyclic:3", "--emit", hf.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(run(&["verify", hf.to_str().unwrap()]).status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn export_command_is_canonical() {
    let out = run(&["export", &fixture("taft2.json")]);
    assert_eq!(out.stdout, std::fs::read(fixture("taft2.json")).unwrap());
}
