use std::sync::Arc;

mod common;

use grothendieck::corpus::{base_library, max_fixtures, natural_transformations};
use grothendieck::pseudo::{
    check_modification, check_pseudofunctor, check_pseudonatural, compose_modification, compose_pseudonatural,
    whisker_modification_left, whisker_modification_right, Modification, Pseudofunctor, Pseudonatural,
};
use grothendieck::vbase::{BaseCategory, FinCat, FinSet, FiniteCategory};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{cells, library, modification};

fn coherent<V: BaseCategory>(pf: &Pseudofunctor<V>) {
    assert!(check_pseudofunctor(pf).all_passed());
    let b = &pf.base;
    for o in 0..b.num_objects() {
        for x in 0..pf.fibers[o].len() {
            assert!(pf.fibers[o].is_iso_underlying(&pf.xi_at(o, x)).is_ok());
        }
    }
    for (f, g) in b.composable_pairs() {
        let fib = &pf.fibers[b.arrow(g).cod];
        for x in 0..pf.fibers[b.arrow(f).dom].len() {
            assert!(fib.is_iso_underlying(&pf.theta_at(f, g, x)).is_ok());
        }
    }
}

#[test]
fn corpus_pseudofunctors_are_coherent_with_invertible_constraints() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for (name, _) in base_library() {
        for c in ["z2", "idempotent", "arrow"] {
            let cs = cells(&FinSet::new(), name, c, &mut rng);
            for e in &cs.enriched {
                coherent(&e.pseudofunctor);
            }
        }
        let fx = max_fixtures(&Arc::new(library(name)), &mut rng, 3).unwrap();
        for pf in &fx.pseudofunctors {
            coherent(pf);
        }
    }
}

#[test]
fn transformations_compose_lawfully() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for (name, _) in base_library() {
        let cs = cells(&FinSet::new(), name, "idempotent", &mut rng);
        for (_, _, a) in &cs.fg {
            assert!(check_pseudonatural(a).all_passed(), "{name}");
            let ba = compose_pseudonatural(&cs.gh, a).unwrap();
            assert!(check_pseudonatural(&ba).all_passed(), "{name}");
            let id_f = Pseudonatural::identity(&a.source);
            let id_g = Pseudonatural::identity(&a.target);
            assert_eq!(&compose_pseudonatural(a, &id_f).unwrap(), a.as_ref(), "{name}");
            assert_eq!(&compose_pseudonatural(&id_g, a).unwrap(), a.as_ref(), "{name}");
        }
    }
}

fn compose_tau(c: &FiniteCategory, second: &[usize], first: &[usize]) -> Vec<usize> {
    first
        .iter()
        .zip(second)
        .map(|(&f, &g)| c.compose(g, f).unwrap())
        .collect()
}

fn modification_algebra<V: BaseCategory>(v: &V, base: &str, c: &str, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cs = cells(v, base, c, &mut rng);
    let n = cs.fg.len();
    let taus = |i: usize, j: usize| natural_transformations(&cs.fg[i].0, &cs.fg[j].0);
    for i in 0..n {
        let id = Modification::identity(&cs.fg[i].2);
        assert!(check_modification(&id).all_passed());
        for j in 0..n {
            for t1 in taus(i, j) {
                let m1 = modification(&cs, i, j, &t1);
                assert!(check_modification(&m1).all_passed());
                assert_eq!(compose_modification(&m1, &id).unwrap(), m1);
                assert_eq!(
                    compose_modification(&Modification::identity(&cs.fg[j].2), &m1).unwrap(),
                    m1
                );
                let left = whisker_modification_left(&cs.gh, &m1).unwrap();
                assert!(check_modification(&left).all_passed());
                let id_f = Arc::new(Pseudonatural::identity(&cs.enriched[0].pseudofunctor));
                let right = whisker_modification_right(&m1, &id_f).unwrap();
                assert!(check_modification(&right).all_passed());
                assert_eq!(right.components, m1.components);
                for k in 0..n {
                    for t2 in taus(j, k) {
                        let m2 = modification(&cs, j, k, &t2);
                        let m21 = compose_modification(&m2, &m1).unwrap();
                        assert_eq!(m21, modification(&cs, i, k, &compose_tau(&cs.c, &t2, &t1)));
                        for l in 0..n {
                            for t3 in taus(k, l) {
                                let m3 = modification(&cs, k, l, &t3);
                                assert_eq!(
                                    compose_modification(&m3, &m21).unwrap(),
                                    compose_modification(&compose_modification(&m3, &m2).unwrap(), &m1).unwrap()
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn modifications_compose_associatively_and_whisker_lawfully() {
    modification_algebra(&FinSet::new(), "arrow", "idempotent", 43);
    modification_algebra(&FinSet::new(), "span", "arrow", 44);
    modification_algebra(&FinCat::new(), "z2", "arrow", 45);
}

#[test]
fn non_parallel_modifications_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let cs = cells(&FinSet::new(), "arrow", "terminal", &mut rng);
    let a = &cs.fg[0].2;
    let comps = Modification::identity(a).components;
    assert!(Modification::new(a.clone(), cs.gh.clone(), comps).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_constraint_recolouring_is_detected(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lib = base_library();
        let name = lib[rng.random_range(0..lib.len())].0;
        let cs = cells(&FinSet::new(), name, "z2", &mut rng);
        let block = &cs.blocks[0];
        let mut op = block.ordinary.clone();
        let o = rng.random_range(0..op.base.num_objects());
        let x = rng.random_range(0..op.fibers[o].num_objects());
        let s = (0..cs.c.num_arrows()).find(|&u| !cs.c.is_identity(u)).unwrap();
        op.xi[o][x] = block.recolor(o, op.xi[o][x], s).unwrap();
        let pf = op.enrich(&FinSet::new()).unwrap().pseudofunctor;
        let r = check_pseudofunctor(&pf);
        prop_assert!(!r.all_passed());
        prop_assert!(r.failures().all(|c| c.law.starts_with("pseudofunctor.") && c.witness.is_some()));
    }
}
