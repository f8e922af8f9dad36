use std::path::PathBuf;

use grothendieck::cli::{run_text, Command, Options};
use grothendieck::corpus::shipped_fixtures;
use grothendieck::fixture::parse_fixture;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Rewrites `fixtures/` from the generators.
#[test]
#[ignore]
fn regenerate() {
    for f in shipped_fixtures().unwrap() {
        std::fs::write(dir().join(f.file), &f.text).unwrap();
    }
}

#[test]
fn files_match_generators() {
    for f in shipped_fixtures().unwrap() {
        let on_disk = std::fs::read_to_string(dir().join(f.file)).unwrap();
        assert_eq!(
            on_disk, f.text,
            "{} is stale; run the ignored `regenerate` test",
            f.file
        );
    }
}

#[test]
fn every_shipped_fixture_round_trips_and_validates_as_expected() {
    for f in shipped_fixtures().unwrap() {
        let doc = parse_fixture(&f.text).unwrap_or_else(|e| panic!("{}: {e}", f.file));
        let emitted = doc.write();
        let again = parse_fixture(&emitted).unwrap();
        assert_eq!(again.write(), emitted, "{}", f.file);
        let out = run_text(Command::Validate, &emitted, &Options::default());
        assert_eq!(
            out.code,
            f.validate_code,
            "{}: {:?}",
            f.file,
            out.report.failures().take(2).collect::<Vec<_>>()
        );
    }
}
