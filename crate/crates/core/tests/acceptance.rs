//! Acceptance suite: one line per criterion, thresholds pinned below. Exits
//! non-zero when any criterion fails.

mod common;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use grothendieck::cli::{run_command, Command, Options, EXIT_FAIL, EXIT_PARSE, EXIT_PASS};
use grothendieck::corpus::{
    base_library, block_fixtures, max_fixtures, random_base, shipped_fixtures, BlockPseudofunctor, BlockShape,
};
use grothendieck::correspondence::{verify_equivalence, EquivalenceFixtures};
use grothendieck::enriched::{check_vcategory, check_vfunctor, VCategory};
use grothendieck::fixture::parse_fixture;
use grothendieck::freeunder::OrdinaryCategory;
use grothendieck::gr::grothendieck;
use grothendieck::opfib::{lemma_suite, verify_opfibration, Lift, Opfibration};
use grothendieck::pseudo::check_pseudofunctor;
use grothendieck::report::VerificationReport;
use grothendieck::vbase::{verify_base_properties, BaseCategory, FinCat, FinSet, FiniteCategory, SetMor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{classical_opcartesian, set_category_lawful, Classical};

const BASE_BUDGET: usize = 50;
const BASE_LIMIT: Duration = Duration::from_secs(10);
const ORACLE_SAMPLES: usize = 100;
const ORACLE_LIMIT: Duration = Duration::from_secs(60);
const MAX_FIBER: usize = 3;
const OPFIB_LIMIT: Duration = Duration::from_secs(60);
const ROUNDTRIP_LIMIT: Duration = Duration::from_secs(120);
const MUTATIONS_PER_KIND: usize = 5;
const MUTATIONS: usize = 4 * MUTATIONS_PER_KIND;
const ENRICHED_FIXTURES: usize = 10;
const ENRICHED_LIMIT: Duration = Duration::from_secs(120);
const SEED: u64 = 2024;
/// Block fixtures per library base in the randomized corpus.
const CORPUS_ROUNDS: usize = 3;

type Outcome = Result<String, String>;

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn first_failure(r: &VerificationReport) -> String {
    r.failures()
        .next()
        .map(|c| format!("{} [{}]: {}", c.id, c.law, c.witness.clone().unwrap_or_default()))
        .unwrap_or_default()
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    if t < limit {
        Ok(())
    } else {
        Err(format!("took {t:.2?}, limit {limit:?}"))
    }
}

fn block_corpus<V: BaseCategory>(v: &V, seed: u64) -> Result<Vec<(&'static str, EquivalenceFixtures<V>)>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lib = base_library();
    (0..CORPUS_ROUNDS * lib.len())
        .map(|i| {
            let (name, b) = lib[i % lib.len()].clone();
            block_fixtures(v, &Arc::new(b), &mut rng, MAX_FIBER)
                .map(|fx| (name, fx))
                .map_err(|e| format!("{name}: {e}"))
        })
        .collect()
}

fn max_corpus(seed: u64, count: usize) -> Result<Vec<(&'static str, EquivalenceFixtures<FinCat>)>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lib = base_library();
    (0..count)
        .map(|i| {
            let (name, b) = lib[i % lib.len()].clone();
            max_fixtures(&Arc::new(b), &mut rng, MAX_FIBER)
                .map(|fx| (name, fx))
                .map_err(|e| format!("{name}: {e}"))
        })
        .collect()
}

fn base_properties() -> Outcome {
    let start = Instant::now();
    for (name, r) in [
        ("finset", verify_base_properties(&FinSet::new(), BASE_BUDGET, SEED)),
        ("fincat", verify_base_properties(&FinCat::new(), BASE_BUDGET, SEED)),
    ] {
        if !r.all_passed() {
            return Err(format!("{name}: {}", first_failure(&r)));
        }
    }
    let options = Options {
        budget: BASE_BUDGET,
        seed: SEED,
    };
    let mut caught = Vec::new();
    for file in [
        "hostile-nonterminal-unit.fx",
        "hostile-disconnected-unit.fx",
        "hostile-fake-coproduct.fx",
    ] {
        let out = run_command(Command::BaseCheck, &fixtures_dir().join(file), &options);
        if out.code != EXIT_FAIL {
            return Err(format!("{file}: exit {}", out.code));
        }
        if out.report.failures().any(|c| c.witness.is_none()) {
            return Err(format!("{file}: failure without witness"));
        }
        caught.push(format!("{file}: {}", out.report.failed_count()));
    }
    within(BASE_LIMIT, start)?;
    Ok(format!("both bases pass; hostile failures {}", caught.join(", ")))
}

fn classical_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let v = FinSet::new();
    for k in 0..ORACLE_SAMPLES {
        let (name, base) = random_base(&mut rng);
        if base.num_objects() > 3 || base.num_arrows() > 6 {
            return Err(format!("library base {name} is outside the sampled range"));
        }
        let shape = BlockShape::random(&base, &mut rng, MAX_FIBER);
        let op = BlockPseudofunctor::random(&shape, &mut rng, MAX_FIBER).ordinary;
        if op.fibers.iter().any(|d| d.num_objects() > MAX_FIBER) {
            return Err(format!("sample {k}: fiber exceeds {MAX_FIBER} objects"));
        }
        let enriched = op.enrich(&v).map_err(|e| format!("sample {k}: {e}"))?;
        let gr = grothendieck(&enriched.pseudofunctor).map_err(|e| format!("sample {k}: {e}"))?;
        let oracle = Classical::new(&op);
        let pf = &enriched.pseudofunctor;
        let labels: Vec<(String, String)> = gr
            .objects
            .iter()
            .map(|&(x, b)| (pf.fibers[b].label(x).to_string(), pf.base.object_label(b).to_string()))
            .collect();
        let mut sorted_gr = labels.clone();
        let mut sorted_oracle = oracle.objects.clone();
        sorted_gr.sort();
        sorted_oracle.sort();
        if sorted_gr != sorted_oracle {
            return Err(format!("sample {k} over {name}: object sets differ"));
        }
        let index: Vec<usize> = labels
            .iter()
            .map(|l| oracle.objects.iter().position(|o| o == l).expect("same object set"))
            .collect();
        for i in 0..gr.len() {
            for j in 0..gr.len() {
                let got = gr.category.hom(i, j).len();
                let want = oracle.homs[&(index[i], index[j])].len();
                if got != want {
                    return Err(format!("sample {k} over {name}: |hom({i},{j})| = {got}, oracle {want}"));
                }
            }
        }
        let inject = |i: usize, j: usize, (f, u): (usize, usize)| {
            let c = pf.base.arrow(f).cod;
            gr.inject(i, j, f, &enriched.frees[c].arrow_element(u))
        };
        for i in 0..gr.len() {
            for j in 0..gr.len() {
                for l in 0..gr.len() {
                    for &a in &oracle.homs[&(index[i], index[j])] {
                        for &b in &oracle.homs[&(index[j], index[l])] {
                            let run = || -> grothendieck::error::Result<bool> {
                                let got = gr.category.compose_elements(&inject(j, l, b)?, &inject(i, j, a)?)?;
                                Ok(got == inject(i, l, oracle.compose(&op, index[i], b, a))?)
                            };
                            if !run().map_err(|e| format!("sample {k}: {e}"))? {
                                return Err(format!("sample {k} over {name}: composite {b:?} ∘ {a:?} differs"));
                            }
                        }
                    }
                }
            }
        }
    }
    within(ORACLE_LIMIT, start)?;
    Ok(format!(
        "{ORACLE_SAMPLES} samples agree on objects, hom sizes and composites"
    ))
}

fn opfibrations_verify<V: BaseCategory>(corpus: &[(&str, EquivalenceFixtures<V>)]) -> Result<usize, String> {
    let mut count = 0;
    for (name, fx) in corpus {
        for of in &fx.opfibrations {
            let mut of = of.clone();
            let r = verify_opfibration(&mut of).map_err(|e| format!("{name}: {e}"))?;
            if !r.all_passed() || !of.is_verified() {
                return Err(format!("{name}: {}", first_failure(&r)));
            }
            count += 1;
        }
    }
    Ok(count)
}

fn gr_opfibrations() -> Outcome {
    let start = Instant::now();
    let sets = opfibrations_verify(&block_corpus(&FinSet::new(), SEED)?)?;
    let cats = opfibrations_verify(&block_corpus(&FinCat::new(), SEED + 1)?)?;
    let maxes = opfibrations_verify(&max_corpus(SEED + 2, ENRICHED_FIXTURES)?)?;
    within(OPFIB_LIMIT, start)?;
    Ok(format!("{sets} over finset, {} over fincat", cats + maxes))
}

fn lemmas_hold<V: BaseCategory>(corpus: &[(&str, EquivalenceFixtures<V>)]) -> Result<usize, String> {
    let mut checks = 0;
    for (name, fx) in corpus {
        for of in &fx.opfibrations {
            let r = lemma_suite(of).map_err(|e| format!("{name}: {e}"))?;
            if !r.all_passed() {
                return Err(format!("{name}: {}", first_failure(&r)));
            }
            checks += r.checks.len();
        }
    }
    Ok(checks)
}

fn lemma_suite_on_corpus() -> Outcome {
    let sets = lemmas_hold(&block_corpus(&FinSet::new(), SEED)?)?;
    let maxes = lemmas_hold(&max_corpus(SEED + 2, ENRICHED_FIXTURES)?)?;
    Ok(format!("{} checks", sets + maxes))
}

fn equivalence_holds<V: BaseCategory>(corpus: &[(&str, EquivalenceFixtures<V>)]) -> Result<usize, String> {
    let mut checks = 0;
    for (name, fx) in corpus {
        let r = verify_equivalence(fx);
        if !r.all_passed() {
            return Err(format!("{name}: {}", first_failure(&r)));
        }
        checks += r.checks.len();
    }
    Ok(checks)
}

fn round_trip() -> Outcome {
    let start = Instant::now();
    let sets = equivalence_holds(&block_corpus(&FinSet::new(), SEED)?)?;
    let cats = equivalence_holds(&block_corpus(&FinCat::new(), SEED + 1)?)?;
    within(ROUNDTRIP_LIMIT, start)?;
    Ok(format!(
        "{} checks over {} fixtures",
        sets + cats,
        2 * CORPUS_ROUNDS * base_library().len()
    ))
}

/// Failures exist, each carries a witness, and every failing law has the
/// given prefix.
fn caught_by(r: &VerificationReport, prefix: &str) -> Result<(), String> {
    if r.all_passed() {
        return Err("mutation passed silently".into());
    }
    if let Some(c) = r.failures().find(|c| c.witness.is_none()) {
        return Err(format!("{} [{}] has no witness", c.id, c.law));
    }
    if let Some(c) = r.failures().find(|c| !c.law.starts_with(prefix)) {
        return Err(format!("unexpected failure {} [{}]", c.id, c.law));
    }
    Ok(())
}

fn colored_block(base: &Arc<OrdinaryCategory>, c: &str, rng: &mut ChaCha8Rng) -> BlockPseudofunctor {
    let c = base_library()
        .into_iter()
        .find(|(n, _)| *n == c)
        .expect("library category")
        .1;
    let shape = BlockShape {
        base: base.clone(),
        points: vec![1; base.num_objects()],
        action: vec![vec![0]; base.num_arrows()],
        c: Arc::new(c),
    };
    BlockPseudofunctor::random(&shape, rng, 2)
}

/// A non-identity endomorphism of the `C` coordinate.
fn nontrivial_endo(c: &FiniteCategory) -> usize {
    (0..c.num_arrows())
        .find(|&u| !c.is_identity(u) && c.arrow(u).dom == c.arrow(u).cod)
        .expect("non-identity endomorphism")
}

fn coherence_mutations(rng: &mut ChaCha8Rng, theta: bool) -> Result<usize, String> {
    let lib = base_library();
    let v = FinSet::new();
    let mut caught = 0;
    for k in 0..MUTATIONS_PER_KIND {
        let (name, b) = lib[k % lib.len()].clone();
        let base = Arc::new(b);
        let block = colored_block(&base, if k % 2 == 0 { "z2" } else { "idempotent" }, rng);
        let u = nontrivial_endo(&block.shape.c);
        let mut op = block.ordinary.clone();
        let o = rng.random_range(0..base.num_objects());
        let x = rng.random_range(0..op.fibers[o].num_objects());
        if theta {
            let id = base.identity(o);
            let pairs: Vec<(usize, usize)> = base
                .composable_pairs()
                .into_iter()
                .filter(|&(f, g)| (f == id || base.is_identity(g)) && base.arrow(f).dom == o)
                .collect();
            let pair = pairs[rng.random_range(0..pairs.len())];
            let old = op.theta[&pair][x];
            op.theta.get_mut(&pair).expect("pair")[x] =
                block.recolor(base.arrow(pair.1).cod, old, u).ok_or("recolor")?;
        } else {
            let old = op.xi[o][x];
            op.xi[o][x] = block.recolor(o, old, u).ok_or("recolor")?;
        }
        let pf = op.enrich(&v).map_err(|e| e.to_string())?.pseudofunctor;
        let original = block.ordinary.enrich(&v).map_err(|e| e.to_string())?.pseudofunctor;
        if !check_pseudofunctor(&original).all_passed() {
            return Err(format!("{name}: unmutated fixture fails"));
        }
        caught_by(&check_pseudofunctor(&pf), "pseudofunctor.").map_err(|e| format!("{name}: {e}"))?;
        caught += 1;
    }
    Ok(caught)
}

fn mutate_entry(m: &SetMor, k: usize, value: usize) -> SetMor {
    let mut table = m.table.clone();
    table[k] = value;
    SetMor::new(m.dom.clone(), m.cod.clone(), table).expect("same type")
}

fn composition_mutations(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let v = FinSet::new();
    let lib = base_library();
    let mut caught = 0;
    let mut attempts = 0;
    while caught < MUTATIONS_PER_KIND {
        attempts += 1;
        if attempts > 200 {
            return Err(format!("only {caught} lawless mutations found"));
        }
        let base = Arc::new(lib[rng.random_range(0..lib.len())].1.clone());
        let block = colored_block(&base, "arrow", rng);
        let pf = block.ordinary.enrich(&v).map_err(|e| e.to_string())?.pseudofunctor;
        let gr = grothendieck(&pf).map_err(|e| e.to_string())?;
        let e: &VCategory<FinSet> = &gr.category;
        let n = e.len();
        let (c, d, z) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
        let m = e.composition(c, d, z);
        if m.table.is_empty() || m.cod.len() < 2 {
            continue;
        }
        let k = rng.random_range(0..m.table.len());
        let value = (m.table[k] + rng.random_range(1..m.cod.len())) % m.cod.len();
        let mutated = e
            .with_composition(c, d, z, mutate_entry(m, k, value))
            .map_err(|e| e.to_string())?;
        if set_category_lawful(&mutated) {
            continue;
        }
        caught_by(&check_vcategory(&mutated), "vcategory.")?;
        caught += 1;
    }
    Ok(caught)
}

fn lift_mutations(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let v = FinSet::new();
    let lib = base_library();
    let mut caught = 0;
    let mut attempts = 0;
    while caught < MUTATIONS_PER_KIND {
        attempts += 1;
        if attempts > 200 {
            return Err(format!("only {caught} non-opcartesian substitutes found"));
        }
        let base = Arc::new(lib[rng.random_range(0..lib.len())].1.clone());
        let c = if attempts % 2 == 0 { "arrow" } else { "idempotent" };
        let block = colored_block(&base, c, rng);
        let pf = block.ordinary.enrich(&v).map_err(|e| e.to_string())?.pseudofunctor;
        let gr = grothendieck(&pf).map_err(|e| e.to_string())?;
        let (_, of) = grothendieck::gr::gr_projection(&pf, &gr).map_err(|e| e.to_string())?;
        let e = rng.random_range(0..gr.len());
        let lifts = &of.lifts()[e];
        let l = &lifts[rng.random_range(0..lifts.len())];
        let mut substitutes = Vec::new();
        for d in 0..gr.len() {
            for chi in of.total().underlying_hom(e, d).map_err(|e| e.to_string())? {
                if of.p.map_element(&chi).map_err(|e| e.to_string())? == l.arrow && !classical_opcartesian(&of, &chi) {
                    substitutes.push(chi);
                }
            }
        }
        if substitutes.is_empty() {
            continue;
        }
        let chi = substitutes.swap_remove(rng.random_range(0..substitutes.len()));
        let lift = Lift {
            arrow: l.arrow.clone(),
            object: chi.cod,
            chi,
        };
        let mut mutated: Opfibration<FinSet> = of.with_lift(e, lift).map_err(|e| e.to_string())?;
        for (what, r) in [
            ("total", check_vcategory(mutated.total())),
            ("base", check_vcategory(mutated.base_category())),
            ("projection", check_vfunctor(&mutated.p)),
        ] {
            if !r.all_passed() {
                return Err(format!(
                    "{what} checker fails on a lift mutation: {}",
                    first_failure(&r)
                ));
            }
        }
        let r = verify_opfibration(&mut mutated).map_err(|e| e.to_string())?;
        caught_by(&r, "opfibration.")?;
        if mutated.is_verified() {
            return Err("refuted opfibration marked verified".into());
        }
        caught += 1;
    }
    Ok(caught)
}

fn mutations_caught() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let xi = coherence_mutations(&mut rng, false).map_err(|e| format!("ξ: {e}"))?;
    let theta = coherence_mutations(&mut rng, true).map_err(|e| format!("θ: {e}"))?;
    let comp = composition_mutations(&mut rng).map_err(|e| format!("composition: {e}"))?;
    let lifts = lift_mutations(&mut rng).map_err(|e| format!("lifts: {e}"))?;
    let total = xi + theta + comp + lifts;
    if total != MUTATIONS {
        return Err(format!("{total} of {MUTATIONS} caught"));
    }
    Ok(format!("ξ {xi}, θ {theta}, composition {comp}, lifts {lifts}"))
}

fn enriched_coverage() -> Outcome {
    let start = Instant::now();
    let corpus = max_corpus(SEED + 3, ENRICHED_FIXTURES)?;
    let opfibs = opfibrations_verify(&corpus)?;
    lemmas_hold(&corpus)?;
    let checks = equivalence_holds(&corpus)?;
    let non_discrete = corpus.iter().any(|(_, fx)| {
        fx.pseudofunctors.iter().any(|pf| {
            pf.fibers.iter().any(|c| {
                (0..c.len()).any(|x| {
                    (0..c.len()).any(|y| {
                        let h = c.hom(x, y);
                        h.num_arrows() > h.num_objects()
                    })
                })
            })
        })
    });
    if !non_discrete {
        return Err("every hom category is discrete".into());
    }
    within(ENRICHED_LIMIT, start)?;
    Ok(format!(
        "{} fixtures, {opfibs} opfibrations, {checks} checks",
        corpus.len()
    ))
}

fn binary(args: &[&str]) -> Result<i32, String> {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_grothendieck"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    out.status.code().ok_or_else(|| "terminated by signal".into())
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn cli_contract() -> Outcome {
    let shipped = shipped_fixtures().map_err(|e| e.to_string())?;
    for f in &shipped {
        let path = fixtures_dir().join(f.file);
        let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", f.file))?;
        let emitted = parse_fixture(&text).map_err(|e| format!("{}: {e}", f.file))?.write();
        let again = parse_fixture(&emitted).map_err(|e| format!("{}: {e}", f.file))?.write();
        if again != emitted {
            return Err(format!("{}: emission is not stable", f.file));
        }
        let code = binary(&["validate", &path_str(&path)])?;
        if code != f.validate_code {
            return Err(format!(
                "{}: validate exit {code}, expected {}",
                f.file, f.validate_code
            ));
        }
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bad = dir.path().join("bad.fx");
    std::fs::write(&bad, "base: finset\n\n[category C]\nobjects: [a\n").map_err(|e| e.to_string())?;
    let cases = [
        (
            vec!["validate".to_string(), path_str(&fixtures_dir().join("one.fx"))],
            EXIT_PASS,
        ),
        (
            vec![
                "validate".to_string(),
                path_str(&fixtures_dir().join("mutated-composition.fx")),
            ],
            EXIT_FAIL,
        ),
        (vec!["validate".to_string(), path_str(&bad)], EXIT_PARSE),
        (
            vec!["validate".to_string(), path_str(&dir.path().join("missing.fx"))],
            EXIT_PARSE,
        ),
    ];
    for (args, want) in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let got = binary(&args)?;
        if got != *want {
            return Err(format!("{args:?}: exit {got}, expected {want}"));
        }
    }
    let emitted = dir.path().join("gr.fx");
    let walking = path_str(&fixtures_dir().join("walking-arrow.fx"));
    for (args, want) in [
        (
            vec!["gr", walking.as_str(), "--emit", emitted.to_str().unwrap()],
            EXIT_PASS,
        ),
        (vec!["igr", emitted.to_str().unwrap()], EXIT_PASS),
        (vec!["roundtrip", emitted.to_str().unwrap()], EXIT_PASS),
    ] {
        let got = binary(&args)?;
        if got != want {
            return Err(format!("{args:?}: exit {got}, expected {want}"));
        }
    }
    Ok(format!(
        "{} shipped fixtures round-trip; exit codes 0/1/2 as specified",
        shipped.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Outcome); 8] = [
        (
            "base properties",
            "budget 50, 3 hostile bases refuted, < 10 s",
            base_properties,
        ),
        ("classical oracle", "100 samples, exact, < 60 s", classical_oracle),
        ("Gr projections are opfibrations", "exact, < 60 s", gr_opfibrations),
        ("opcartesian lemma suite", "exact", lemma_suite_on_corpus),
        ("round trip", "exact, < 120 s", round_trip),
        ("mutations caught", "20 of 20", mutations_caught),
        (
            "enriched coverage",
            "10 fixtures over fincat, < 120 s",
            enriched_coverage,
        ),
        ("CLI contract", "lossless, exit codes 0/1/2", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, threshold, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({threshold}) {detail} [{t:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({threshold}) {detail} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
