use grothendieck::report::VerificationReport;

#[test]
fn jsonl_round_trip() {
    let mut r = VerificationReport::new();
    r.pass("a", "law.one");
    r.fail("b \"quoted\"", "law.two", "witness\nwith newline");
    let back = VerificationReport::from_jsonl(&r.to_jsonl()).unwrap();
    assert_eq!(back, r);
    assert!(!back.all_passed());
    assert!(back.law_failed("law.two"));
    assert_eq!(
        back.failures().next().unwrap().witness.as_deref(),
        Some("witness\nwith newline")
    );
}

#[test]
fn empty_report_passes() {
    assert!(VerificationReport::new().all_passed());
}
