//! Command driver behind the `grothendieck` binary. Exit codes: 0 when every
//! check passes, 1 on a verification or construction failure, 2 when the
//! fixture cannot be read or parsed.

use std::path::Path;
use std::sync::Arc;

use crate::correspondence::{verify_equivalence, EquivalenceFixtures};
use crate::enriched::{check_vcategory, check_vfunctor, check_vnat};
use crate::error::Error;
use crate::fixture::{parse_fixture, write_document, AnyDocument, Document, FixtureBase};
use crate::freeunder::{free_vcategory, recognize_free, underlying_category, OrdinaryCategory};
use crate::gr::gr_bundle;
use crate::igr::{inverse_grothendieck, inverse_grothendieck_free, InverseGrothendieck};
use crate::opfib::{fiber, verify_opfibration, Opfibration};
use crate::pseudo::{check_modification, check_pseudofunctor, check_pseudonatural};
use crate::report::VerificationReport;
use crate::vbase::verify_base_properties;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

/// Law recorded for parse and read failures.
pub const LAW_PARSE: &str = "fixture.parse";
/// Law recorded when a construction cannot be carried out.
pub const LAW_CONSTRUCTION: &str = "construction";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Validate,
    Free,
    Underlying,
    Fibers,
    Transport,
    Gr,
    Igr,
    Roundtrip,
    BaseCheck,
}

impl Command {
    /// Parses a kebab-case command name such as `base-check`.
    pub fn from_name(name: &str) -> Option<Command> {
        <Command as clap::ValueEnum>::from_str(name, false).ok()
    }

    /// Kebab-case names of every command.
    pub fn names() -> Vec<String> {
        <Command as clap::ValueEnum>::value_variants()
            .iter()
            .filter_map(|c| clap::ValueEnum::to_possible_value(c).map(|v| v.get_name().to_string()))
            .collect()
    }

    /// Whether the command emits a fixture.
    pub fn constructs(self) -> bool {
        matches!(
            self,
            Command::Free | Command::Underlying | Command::Fibers | Command::Transport | Command::Gr | Command::Igr
        )
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub budget: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { budget: 50, seed: 0 }
    }
}

/// Result of one command: exit code, report, and the emitted fixture for
/// construction commands.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: VerificationReport,
    pub fixture: Option<String>,
}

/// Exit code determined by the report alone.
pub fn exit_code(report: &VerificationReport) -> i32 {
    if report.all_passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn parse_failure(id: &str, message: String) -> Outcome {
    let mut report = VerificationReport::new();
    report.fail(id, LAW_PARSE, message);
    Outcome {
        code: EXIT_PARSE,
        report,
        fixture: None,
    }
}

/// Runs `command` on the fixture file at `path`.
pub fn run_command(command: Command, path: &Path, options: &Options) -> Outcome {
    match std::fs::read_to_string(path) {
        Ok(text) => run_text(command, &text, options),
        Err(e) => parse_failure(&path.display().to_string(), e.to_string()),
    }
}

/// Runs `command` on fixture text.
pub fn run_text(command: Command, text: &str, options: &Options) -> Outcome {
    match parse_fixture(text) {
        Ok(AnyDocument::FinSet(d)) => run_document(command, &d, options),
        Ok(AnyDocument::FinCat(d)) => run_document(command, &d, options),
        Ok(AnyDocument::SetPair(d)) => run_document(command, &d, options),
        Err(e) => parse_failure("fixture", e.to_string()),
    }
}

/// Runs `command` on a resolved document.
pub fn run_document<V: FixtureBase>(command: Command, doc: &Document<V>, options: &Options) -> Outcome {
    let mut r = VerificationReport::new();
    let mut out = Document::new(doc.base.clone());
    match command {
        Command::Validate => validate(doc, &mut r),
        Command::BaseCheck => r.extend(verify_base_properties(&doc.base, options.budget, options.seed)),
        Command::Roundtrip => roundtrip(doc, &mut r),
        Command::Free => {
            for (name, c) in &doc.registry.categories {
                match free_vcategory(c, &doc.base) {
                    Ok(free) => {
                        r.extend_scoped(name, check_vcategory(&free.vcat));
                        out.add_vcategory(&format!("{name}.free"), &free.vcat);
                    }
                    Err(e) => r.fail(name.clone(), LAW_CONSTRUCTION, e.to_string()),
                }
            }
        }
        Command::Underlying => {
            for (name, c) in &doc.vcategories {
                match underlying_category(c) {
                    Ok(u) => {
                        r.pass(name.clone(), LAW_CONSTRUCTION);
                        out.add_category(&format!("{name}.0"), &u.category);
                    }
                    Err(e) => r.fail(name.clone(), LAW_CONSTRUCTION, e.to_string()),
                }
            }
        }
        Command::Fibers => {
            for (name, of, _) in verified_opfibrations(doc, &mut r) {
                let base = of.base_category().clone();
                for b in 0..base.len() {
                    let id = format!("{name}.fiber.{}", base.label(b));
                    match fiber(&of, b) {
                        Ok(fb) => {
                            r.extend_scoped(&id, check_vcategory(&fb.category));
                            out.add_vcategory(&id, &fb.category);
                        }
                        Err(e) => r.fail(id, LAW_CONSTRUCTION, e.to_string()),
                    }
                }
            }
        }
        Command::Transport => {
            for (name, of, over) in verified_opfibrations(doc, &mut r) {
                if let Some(ig) = inverse(&name, &of, over.as_ref(), &mut r) {
                    let base = &ig.pseudofunctor.base;
                    for (f, func) in ig.pseudofunctor.functors.iter().enumerate() {
                        let id = format!("{name}.transport.{}", base.arrow_name(f));
                        r.extend_scoped(&id, check_vfunctor(func));
                        out.add_vfunctor(&id, func);
                    }
                }
            }
        }
        Command::Gr => {
            for (name, pf) in &doc.pseudofunctors {
                let id = format!("Gr.{name}");
                match gr_bundle(pf) {
                    Ok(bundle) => {
                        r.extend_scoped(&id, bundle.report.clone());
                        out.add_opfibration(&id, &bundle.opfibration, Some(&pf.base));
                    }
                    Err(e) => r.fail(id, LAW_CONSTRUCTION, e.to_string()),
                }
            }
        }
        Command::Igr => {
            for (name, of, over) in verified_opfibrations(doc, &mut r) {
                if let Some(ig) = inverse(&name, &of, over.as_ref(), &mut r) {
                    let id = format!("I.{name}");
                    r.extend_scoped(&id, check_pseudofunctor(&ig.pseudofunctor));
                    out.add_pseudofunctor(&id, &ig.pseudofunctor);
                }
            }
        }
    }
    Outcome {
        code: exit_code(&r),
        fixture: command.constructs().then(|| write_document(&out)),
        report: r,
    }
}

fn inverse<V: FixtureBase>(
    name: &str,
    of: &Opfibration<V>,
    over: Option<&Arc<OrdinaryCategory>>,
    r: &mut VerificationReport,
) -> Option<InverseGrothendieck<V>> {
    let built = match over {
        Some(b) => inverse_grothendieck_free(of, b),
        None => inverse_grothendieck(of),
    };
    match built {
        Ok(ig) => Some(ig),
        Err(e) => {
            r.fail(format!("I.{name}"), LAW_CONSTRUCTION, e.to_string());
            None
        }
    }
}

type Verified<V> = (String, Opfibration<V>, Option<Arc<OrdinaryCategory>>);

/// Verifies every opfibration, recording the checks, and returns those that
/// passed.
fn verified_opfibrations<V: FixtureBase>(doc: &Document<V>, r: &mut VerificationReport) -> Vec<Verified<V>> {
    let mut out = Vec::new();
    for o in &doc.opfibrations {
        let mut of = o.opfibration.as_ref().clone();
        match verify_opfibration(&mut of) {
            Ok(rep) => r.extend_scoped(&o.name, rep),
            Err(e) => {
                r.fail(o.name.clone(), LAW_CONSTRUCTION, e.to_string());
                continue;
            }
        }
        if of.is_verified() {
            out.push((o.name.clone(), of, o.over.clone()));
        }
    }
    out
}

/// Every applicable law checker on every declared cell.
pub fn validate<V: FixtureBase>(doc: &Document<V>, r: &mut VerificationReport) {
    for (name, _) in &doc.registry.categories {
        r.pass(name.clone(), "category.valid");
    }
    for (name, c) in &doc.vcategories {
        r.extend_scoped(name, check_vcategory(c));
    }
    for (name, f) in &doc.vfunctors {
        r.extend_scoped(name, check_vfunctor(f));
    }
    for (name, a) in &doc.vnats {
        r.extend_scoped(name, check_vnat(a));
    }
    for (name, p) in &doc.pseudofunctors {
        r.extend_scoped(name, check_pseudofunctor(p));
    }
    for (name, t) in &doc.transformations {
        r.extend_scoped(name, check_pseudonatural(t));
    }
    for (name, m) in &doc.modifications {
        r.extend_scoped(name, check_modification(m));
    }
    for o in &doc.opfibrations {
        let mut of = o.opfibration.as_ref().clone();
        match verify_opfibration(&mut of) {
            Ok(rep) => r.extend_scoped(&o.name, rep),
            Err(e) => r.fail(o.name.clone(), "opfibration.lifts", e.to_string()),
        }
        if let Some(b) = &o.over {
            let verdict = recognize_free(of.base_category(), b)
                .map(|_| ())
                .map_err(|e| e.to_string());
            r.record(o.name.clone(), "opfibration.free_base", verdict);
        }
    }
}

/// `verify_equivalence` once per base category named in the document.
pub fn roundtrip<V: FixtureBase>(doc: &Document<V>, r: &mut VerificationReport) {
    let mut bases: Vec<Arc<OrdinaryCategory>> = Vec::new();
    let mut note = |b: &Arc<OrdinaryCategory>| {
        if !bases.iter().any(|x| x == b) {
            bases.push(b.clone());
        }
    };
    for (_, p) in &doc.pseudofunctors {
        note(&p.base);
    }
    for o in &doc.opfibrations {
        match &o.over {
            Some(b) => note(b),
            None => r.fail(
                o.name.clone(),
                LAW_CONSTRUCTION,
                Error::BaseNotFree("opfibration declares no `over` category".into()).to_string(),
            ),
        }
    }
    for base in bases {
        let mut fx = EquivalenceFixtures::new(base.clone());
        fx.pseudofunctors = doc
            .pseudofunctors
            .iter()
            .filter(|(_, p)| p.base == base)
            .map(|(_, p)| p.clone())
            .collect();
        fx.transformations = doc
            .transformations
            .iter()
            .filter(|(_, t)| t.source.base == base)
            .map(|(_, t)| t.clone())
            .collect();
        for (_, m) in doc.modifications.iter().filter(|(_, m)| m.source.source.base == base) {
            let pos = |t| fx.transformations.iter().position(|x| x.as_ref() == t);
            if let (Some(i), Some(j)) = (pos(m.source.as_ref()), pos(m.target.as_ref())) {
                fx.modifications.push((m.as_ref().clone(), i, j));
            }
        }
        fx.opfibrations = doc
            .opfibrations
            .iter()
            .filter(|o| o.over.as_ref() == Some(&base))
            .map(|o| o.opfibration.as_ref().clone())
            .collect();
        let scope = doc.category_name(&base).unwrap_or("B").to_string();
        r.extend_scoped(&scope, verify_equivalence(&fx));
    }
}
