use std::sync::Arc;

use grothendieck::corpus::{base_library, block_fixtures, max_fixtures};
use grothendieck::correspondence::verify_equivalence;
use grothendieck::vbase::FinSet;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn block_fixtures_pass_over_every_library_base() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, base) in base_library() {
        let base = Arc::new(base);
        let fx = block_fixtures(&FinSet::new(), &base, &mut rng, 3).unwrap();
        let r = verify_equivalence(&fx);
        assert!(r.all_passed(), "{name}: {:?}", r.failures().take(3).collect::<Vec<_>>());
    }
}

#[test]
fn max_fixtures_pass_over_every_library_base() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (name, base) in base_library() {
        let base = Arc::new(base);
        let fx = max_fixtures(&base, &mut rng, 3).unwrap();
        let r = verify_equivalence(&fx);
        assert!(r.all_passed(), "{name}: {:?}", r.failures().take(3).collect::<Vec<_>>());
    }
}

#[test]
fn report_covers_every_stage() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let base = Arc::new(grothendieck::vbase::FiniteCategory::walking_arrow());
    let fx = block_fixtures(&FinSet::new(), &base, &mut rng, 3).unwrap();
    let r = verify_equivalence(&fx);
    let mut laws: Vec<&str> = r.checks.iter().map(|c| c.law.as_str()).collect();
    laws.sort();
    laws.dedup();
    eprintln!("{} checks; laws {:?}", r.checks.len(), laws);
    for pf in &fx.pseudofunctors {
        eprintln!("fibers {:?}", pf.fibers.iter().map(|f| f.len()).collect::<Vec<_>>());
    }
}
