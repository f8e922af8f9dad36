mod common;

use std::sync::Arc;

use grothendieck::corpus::{base_library, max_fixtures, natural_transformations, walking_arrow_ordinary};
use grothendieck::enriched::{check_vcategory, vcomp, VFunctor, VNatTrans};
use grothendieck::gr::{gr_bundle, gr_on_modification, gr_on_transformation, grothendieck, GrBundle};
use grothendieck::pseudo::{compose_modification, compose_pseudonatural, Modification, Pseudofunctor, Pseudonatural};
use grothendieck::vbase::{BaseCategory, FinCat, FinSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{cells, modification, Classical};

fn shape_invariants<V: BaseCategory>(pf: &Pseudofunctor<V>) {
    let gr = grothendieck(pf).unwrap();
    let total: usize = pf.fibers.iter().map(|f| f.len()).sum();
    assert_eq!(gr.len(), total);
    assert!(check_vcategory(&gr.category).all_passed());
    for (i, &(x, b)) in gr.objects.iter().enumerate() {
        let xi = gr.inject(i, i, pf.base.identity(b), &pf.xi_at(b, x)).unwrap();
        assert_eq!(gr.category.identity_element(i), xi);
        for (j, &(_, c)) in gr.objects.iter().enumerate() {
            assert_eq!(gr.summand_arrows(i, j), pf.base.hom(b, c).as_slice());
        }
    }
}

#[test]
fn objects_identities_and_summands_follow_the_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for (name, b) in base_library() {
        for c in ["z2", "arrow"] {
            let cs = cells(&FinSet::new(), name, c, &mut rng);
            for e in &cs.enriched {
                shape_invariants(&e.pseudofunctor);
            }
        }
        for pf in &max_fixtures(&Arc::new(b), &mut rng, 3).unwrap().pseudofunctors {
            shape_invariants(pf);
        }
    }
}

#[test]
fn walking_arrow_example_has_the_expected_homs() {
    let op = walking_arrow_ordinary();
    let pf = op.enrich(&FinSet::new()).unwrap().pseudofunctor;
    let gr = grothendieck(&pf).unwrap();
    assert_eq!(gr.len(), 5);
    let oracle = Classical::new(&op);
    let total: usize = oracle.homs.values().map(Vec::len).sum();
    let mut got = 0;
    for i in 0..gr.len() {
        for j in 0..gr.len() {
            got += gr.category.hom(i, j).len();
        }
    }
    assert_eq!(got, total);
    assert_eq!(total, 5 + 2);
}

fn bundle<V: BaseCategory>(pf: &Arc<Pseudofunctor<V>>) -> GrBundle<V> {
    let b = gr_bundle(pf).unwrap();
    assert!(b.report.all_passed());
    b
}

fn gr_alpha<V: BaseCategory>(a: &Pseudonatural<V>, s: &GrBundle<V>, t: &GrBundle<V>) -> VFunctor<V> {
    gr_on_transformation(a, (&s.total, &s.opfibration), (&t.total, &t.opfibration))
        .unwrap()
        .k
}

fn two_functoriality<V: BaseCategory>(v: &V, base: &str, c: &str, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cs = cells(v, base, c, &mut rng);
    let [f, g, h] = [0, 1, 2].map(|i| bundle(&cs.enriched[i].pseudofunctor));
    let id = Pseudonatural::identity(&cs.enriched[0].pseudofunctor);
    assert_eq!(gr_alpha(&id, &f, &f), VFunctor::identity(&f.total.category));
    for (_, _, a) in &cs.fg {
        let ka = gr_alpha(a, &f, &g);
        let kb = gr_alpha(&cs.gh, &g, &h);
        let composite = compose_pseudonatural(&cs.gh, a).unwrap();
        assert_eq!(gr_alpha(&composite, &f, &h), kb.after(&ka).unwrap());
    }
    let n = cs.fg.len();
    let gr_mod = |m: &Modification<V>| {
        let ka = gr_on_transformation(&m.source, (&f.total, &f.opfibration), (&g.total, &g.opfibration)).unwrap();
        let kb = gr_on_transformation(&m.target, (&f.total, &f.opfibration), (&g.total, &g.opfibration)).unwrap();
        gr_on_modification(m, &f.total, &g.total, &ka, &kb).unwrap()
    };
    for i in 0..n {
        let ident = gr_mod(&Modification::identity(&cs.fg[i].2));
        assert_eq!(ident, VNatTrans::identity(&ident.source));
        for j in 0..n {
            for t1 in natural_transformations(&cs.fg[i].0, &cs.fg[j].0) {
                let m1 = modification(&cs, i, j, &t1);
                for k in 0..n {
                    for t2 in natural_transformations(&cs.fg[j].0, &cs.fg[k].0) {
                        let m2 = modification(&cs, j, k, &t2);
                        let m21 = compose_modification(&m2, &m1).unwrap();
                        assert_eq!(gr_mod(&m21), vcomp(&gr_mod(&m2), &gr_mod(&m1)).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn gr_is_a_strict_two_functor_on_fixtures() {
    two_functoriality(&FinSet::new(), "arrow", "idempotent", 52);
    two_functoriality(&FinSet::new(), "cospan", "arrow", 53);
    two_functoriality(&FinSet::new(), "z2", "z2", 54);
    two_functoriality(&FinCat::new(), "span", "arrow", 55);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hom_cardinalities_follow_the_coproduct_formula(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, base) = grothendieck::corpus::random_base(&mut rng);
        let shape = grothendieck::corpus::BlockShape::random(&base, &mut rng, 3);
        let op = grothendieck::corpus::BlockPseudofunctor::random(&shape, &mut rng, 3).ordinary;
        let pf = op.enrich(&FinSet::new()).unwrap().pseudofunctor;
        let gr = grothendieck(&pf).unwrap();
        for (i, &(x, b)) in gr.objects.iter().enumerate() {
            for (j, &(y, c)) in gr.objects.iter().enumerate() {
                let want: usize = pf.base.hom(b, c).iter()
                    .map(|&f| pf.fibers[c].hom(pf.functors[f].map_object(x), y).len())
                    .sum();
                prop_assert_eq!(gr.category.hom(i, j).len(), want);
            }
        }
    }
}
