use extcohom::doc::{BatteryDoc, CohomologyDoc, SevenTermDoc};
use extcohom::run::{inspect_document, run_and_emit, Request, RunConfig, Source};

fn preset(p: &str, m: &str) -> Option<Source> {
    Some(Source::Preset { preset: p.into(), module: m.into() })
}

#[test]
fn seven_term_json_is_deterministic_and_round_trips() {
    let config = RunConfig::new(preset("heisenberg_mod(2)", "Z_2"), Request::SevenTerm);
    let a = run_and_emit(&config).unwrap();
    let b = run_and_emit(&config).unwrap();
    assert_eq!(a.json, b.json);
    let doc: SevenTermDoc = serde_json::from_str(&a.json).unwrap();
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", a.json);
    let inspected = inspect_document(&a.json).unwrap();
    assert!(inspected.valid, "{:?}", inspected.problems);
}

#[test]
fn cyclic_tower_with_z2_is_exact_everywhere() {
    let out = run_and_emit(&RunConfig::new(preset("cyclic(2,2)", "Z_2"), Request::SevenTerm)).unwrap();
    let doc: SevenTermDoc = serde_json::from_str(&out.json).unwrap();
    assert!(out.passed && doc.exact && doc.inflation_injective && doc.inflation_in_restricted_kernel);
    assert_eq!(doc.joints.len(), 5);
    assert!(doc.joints.iter().all(|j| j.image_equals_kernel && j.composite_zero && j.verdict == "exact"));
    let names: Vec<&str> = doc.maps.iter().map(|m| m.name.as_str()).collect();
    assert_eq!(names, ["inf1", "res", "tr", "inf2", "rho", "lambda"]);
    // tr is the isomorphism H1(Z_2, Z_2) -> H2(Z_2, Z_2) carried by the nonsplit extension Z_4
    assert_eq!(doc.maps[2].matrix.entries, vec![vec!["1".to_string()]]);
}

#[test]
fn heisenberg_mod_2_degree_two() {
    let out =
        run_and_emit(&RunConfig::new(preset("heisenberg_mod(2)", "Z_2"), Request::Cohomology { degree: 2 })).unwrap();
    let doc: CohomologyDoc = serde_json::from_str(&out.json).unwrap();
    assert_eq!(doc.group.invariants, ["2", "2", "2"]);
    assert_eq!(doc.order.as_deref(), Some("8"));
}

#[test]
fn tampered_verdict_is_detected() {
    let out = run_and_emit(&RunConfig::new(preset("cyclic(2,2)", "Z_2"), Request::SevenTerm)).unwrap();
    let mut doc: SevenTermDoc = serde_json::from_str(&out.json).unwrap();
    doc.maps[2].matrix.entries[0][0] = "0".into();
    let inspected = inspect_document(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert!(!inspected.valid);
    assert!(inspected.problems.iter().any(|p| p.contains("does not match")), "{:?}", inspected.problems);
}

#[test]
fn extension_document_reproduces_preset_report() {
    let from_preset = run_and_emit(&RunConfig::new(preset("quaternion8", "Z:i=[[-1]]"), Request::SevenTerm)).unwrap();
    let doc: SevenTermDoc = serde_json::from_str(&from_preset.json).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ext.json");
    std::fs::write(&path, serde_json::to_string(&doc.input).unwrap()).unwrap();
    let from_file = run_and_emit(&RunConfig::new(Some(Source::File(path)), Request::SevenTerm)).unwrap();
    let file_doc: SevenTermDoc = serde_json::from_str(&from_file.json).unwrap();
    assert_eq!(file_doc.groups, doc.groups);
    assert_eq!(file_doc.maps, doc.maps);
    assert_eq!(file_doc.joints, doc.joints);
}

#[test]
fn battery_is_deterministic_and_consistent() {
    let mut config = RunConfig::new(None, Request::Battery { name: "default".into() });
    config.trials = 2;
    config.seed = 7;
    let a = run_and_emit(&config).unwrap();
    assert_eq!(a.json, run_and_emit(&config).unwrap().json);
    assert!(a.passed);
    let mut doc: BatteryDoc = serde_json::from_str(&a.json).unwrap();
    assert_eq!(doc.tallies.cases, 35);
    assert!(inspect_document(&a.json).unwrap().valid);
    doc.tallies.passed -= 1;
    assert!(!inspect_document(&serde_json::to_string(&doc).unwrap()).unwrap().valid);
}
