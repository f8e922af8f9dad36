use std::path::PathBuf;
use std::process::Command as Process;

use grothendieck::cli::{run_text, Command, Options, EXIT_FAIL, EXIT_PARSE, EXIT_PASS};
use grothendieck::report::VerificationReport;

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn opts() -> Options {
    Options::default()
}

#[test]
fn validate_terminal_category_passes() {
    assert_eq!(run_text(Command::Validate, &fixture("one.fx"), &opts()).code, EXIT_PASS);
}

#[test]
fn gr_then_igr_then_roundtrip_on_walking_arrow() {
    let gr = run_text(Command::Gr, &fixture("walking-arrow.fx"), &opts());
    assert_eq!(gr.code, EXIT_PASS, "{}", gr.report);
    let gr_text = gr.fixture.unwrap();
    assert_eq!(run_text(Command::Validate, &gr_text, &opts()).code, EXIT_PASS);
    let igr = run_text(Command::Igr, &gr_text, &opts());
    assert_eq!(igr.code, EXIT_PASS, "{}", igr.report);
    let igr_text = igr.fixture.unwrap();
    assert_eq!(run_text(Command::Validate, &igr_text, &opts()).code, EXIT_PASS);
    let rt = run_text(Command::Roundtrip, &igr_text, &opts());
    assert_eq!(rt.code, EXIT_PASS, "{}", rt.report);
    let rt = run_text(Command::Roundtrip, &gr_text, &opts());
    assert_eq!(rt.code, EXIT_PASS, "{}", rt.report);
}

#[test]
fn fibers_of_gr_over_c_has_three_objects() {
    let gr = run_text(Command::Gr, &fixture("walking-arrow.fx"), &opts())
        .fixture
        .unwrap();
    let fibers = run_text(Command::Fibers, &gr, &opts());
    assert_eq!(fibers.code, EXIT_PASS);
    let text = fibers.fixture.unwrap();
    let doc = grothendieck::fixture::parse_fixture(&text).unwrap();
    let grothendieck::fixture::AnyDocument::FinSet(d) = doc else {
        panic!()
    };
    let c = d.vcategories.iter().find(|(n, _)| n.ends_with(".fiber.c")).unwrap();
    assert_eq!(c.1.len(), 3);
}

#[test]
fn mutated_composition_fails_with_witness() {
    let out = run_text(Command::Validate, &fixture("mutated-composition.fx"), &opts());
    assert_eq!(out.code, EXIT_FAIL);
    let failed: Vec<_> = out.report.failures().collect();
    assert!(failed
        .iter()
        .all(|c| c.law == "vcategory.associativity" && c.witness.is_some()));
    assert!(!failed.is_empty());
}

#[test]
fn parse_errors_exit_two_with_position() {
    let out = run_text(
        Command::Validate,
        "base: finset\n[category A]\nobjects: [a, b\n",
        &opts(),
    );
    assert_eq!(out.code, EXIT_PARSE);
    let text = "base: finset\n[category A]\nobjects: [a]\narrows: [f -> [a, z]]\n";
    let out = run_text(Command::Validate, text, &opts());
    assert_eq!(out.code, EXIT_PARSE);
    let w = out.report.checks[0].witness.clone().unwrap();
    assert!(w.starts_with("4:"), "{w}");
}

#[test]
fn hostile_bases_fail_base_check_and_lawful_bases_pass() {
    for f in [
        "hostile-nonterminal-unit.fx",
        "hostile-fake-coproduct.fx",
        "hostile-disconnected-unit.fx",
    ] {
        let out = run_text(Command::BaseCheck, &fixture(f), &opts());
        assert_eq!(out.code, EXIT_FAIL, "{f}");
    }
    for f in ["one.fx", "fincat-max.fx"] {
        let out = run_text(Command::BaseCheck, &fixture(f), &opts());
        assert_eq!(out.code, EXIT_PASS, "{f}: {}", out.report);
    }
}

#[test]
fn binary_exit_codes_and_emit() {
    let bin = env!("CARGO_BIN_EXE_grothendieck");
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let tmp = tempfile::tempdir().unwrap();
    let emitted = tmp.path().join("gr.fx");
    let out = Process::new(bin)
        .args([
            "gr",
            dir.join("walking-arrow.fx").to_str().unwrap(),
            "--emit",
            emitted.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = VerificationReport::from_jsonl(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(report.all_passed() && !report.checks.is_empty());
    let out = Process::new(bin)
        .args(["roundtrip", emitted.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Process::new(bin)
        .args(["validate", dir.join("mutated-composition.fx").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let bad = tmp.path().join("bad.fx");
    std::fs::write(&bad, "base: nowhere\n").unwrap();
    let out = Process::new(bin)
        .args(["validate", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Process::new(bin)
        .args(["frobnicate", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Process::new(bin)
        .args([
            "base-check",
            dir.join("one.fx").to_str().unwrap(),
            "--budget",
            "60",
            "--seed",
            "4",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
