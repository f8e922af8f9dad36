mod common;

use std::sync::Arc;

use grothendieck::corpus::{base_library, block_fixtures, max_fixtures, natural_transformations};
use grothendieck::enriched::vcomp;
use grothendieck::gr::{gr_bundle, gr_on_modification, gr_on_transformation, GrBundle};
use grothendieck::igr::{i_on_2cell, i_on_opfibered, inverse_grothendieck_free, InverseGrothendieck};
use grothendieck::opfib::{verify_opfibration, OpfiberedFunctor, Opfibration};
use grothendieck::pseudo::{check_pseudofunctor, compose_modification, compose_pseudonatural, Pseudonatural};
use grothendieck::vbase::{BaseCategory, FinCat, FinSet, FiniteCategory};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{cells, modification};

fn inverse<V: BaseCategory>(
    of: &Opfibration<V>,
    base: &Arc<FiniteCategory>,
) -> (Opfibration<V>, InverseGrothendieck<V>) {
    let mut of = of.clone();
    assert!(verify_opfibration(&mut of).unwrap().all_passed());
    let ig = inverse_grothendieck_free(&of, base).unwrap();
    (of, ig)
}

/// `ξ ∘ χ(1, e) = 1_e` and `θ ∘ χ(gf, e) = χ(g, f↑e) ∘ χ(f, e)`, with every
/// constraint invertible.
fn constraints_are_epsilons<V: BaseCategory>(of: &Opfibration<V>, ig: &InverseGrothendieck<V>) {
    let pf = &ig.pseudofunctor;
    assert!(check_pseudofunctor(pf).all_passed());
    let e_cat = of.total();
    let b = &pf.base;
    for o in 0..b.num_objects() {
        let fb = &ig.fibers[o];
        for (k, &e) in fb.objects.iter().enumerate() {
            assert!(pf.fibers[o].is_iso_underlying(&pf.xi_at(o, k)).is_ok());
            let xi = fb.include(&pf.xi_at(o, k)).unwrap();
            let chi = &of.lift(e, &ig.arrow_elements[b.identity(o)]).unwrap().chi;
            assert_eq!(e_cat.compose_elements(&xi, chi).unwrap(), e_cat.identity_element(e));
        }
    }
    for (f, g) in b.composable_pairs() {
        let gf = b.compose(g, f).unwrap();
        let (src, d) = (b.arrow(f).dom, b.arrow(g).cod);
        for (k, &e) in ig.fibers[src].objects.iter().enumerate() {
            let theta = pf.theta_at(f, g, k);
            assert!(pf.fibers[d].is_iso_underlying(&theta).is_ok());
            let theta = ig.fibers[d].include(&theta).unwrap();
            let first = of.lift(e, &ig.arrow_elements[f]).unwrap();
            let second = of.lift(first.object, &ig.arrow_elements[g]).unwrap();
            let direct = &of.lift(e, &ig.arrow_elements[gf]).unwrap().chi;
            assert_eq!(
                e_cat.compose_elements(&theta, direct).unwrap(),
                e_cat.compose_elements(&second.chi, &first.chi).unwrap()
            );
        }
    }
}

#[test]
fn inverse_constraints_are_the_induced_epsilons() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for (_, b) in base_library() {
        let b = Arc::new(b);
        for of in &block_fixtures(&FinSet::new(), &b, &mut rng, 3).unwrap().opfibrations {
            let (of, ig) = inverse(of, &b);
            constraints_are_epsilons(&of, &ig);
        }
        for of in &max_fixtures(&b, &mut rng, 3).unwrap().opfibrations {
            let (of, ig) = inverse(of, &b);
            constraints_are_epsilons(&of, &ig);
        }
    }
}

fn bundle<V: BaseCategory>(pf: &Arc<grothendieck::pseudo::Pseudofunctor<V>>) -> (GrBundle<V>, InverseGrothendieck<V>) {
    let g = gr_bundle(pf).unwrap();
    let ig = inverse_grothendieck_free(&g.opfibration, &pf.base).unwrap();
    (g, ig)
}

fn gr_alpha<V: BaseCategory>(a: &Pseudonatural<V>, s: &GrBundle<V>, t: &GrBundle<V>) -> OpfiberedFunctor<V> {
    gr_on_transformation(a, (&s.total, &s.opfibration), (&t.total, &t.opfibration)).unwrap()
}

fn preserves_cells<V: BaseCategory>(v: &V, base: &str, c: &str, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cs = cells(v, base, c, &mut rng);
    let [(f, i_f), (g, i_g), (h, i_h)] = [0, 1, 2].map(|i| bundle(&cs.enriched[i].pseudofunctor));
    let id = OpfiberedFunctor::identity(&f.opfibration);
    assert_eq!(
        i_on_opfibered(&id, &i_f, &i_f).unwrap(),
        Pseudonatural::identity(&i_f.pseudofunctor)
    );
    let kb = gr_alpha(&cs.gh, &g, &h);
    let ib = i_on_opfibered(&kb, &i_g, &i_h).unwrap();
    for (_, _, a) in &cs.fg {
        let ka = gr_alpha(a, &f, &g);
        let ia = i_on_opfibered(&ka, &i_f, &i_g).unwrap();
        let composite = i_on_opfibered(&kb.after(&ka).unwrap(), &i_f, &i_h).unwrap();
        assert_eq!(composite, compose_pseudonatural(&ib, &ia).unwrap());
    }
    let n = cs.fg.len();
    let images: Vec<_> = cs
        .fg
        .iter()
        .map(|(_, _, a)| {
            let k = gr_alpha(a, &f, &g);
            let ia = Arc::new(i_on_opfibered(&k, &i_f, &i_g).unwrap());
            (k, ia)
        })
        .collect();
    let two_cell = |i: usize, j: usize, tau: &[usize]| {
        let m = modification(&cs, i, j, tau);
        let gm = gr_on_modification(&m, &f.total, &g.total, &images[i].0, &images[j].0).unwrap();
        (gm, m)
    };
    for i in 0..n {
        for j in 0..n {
            for t1 in natural_transformations(&cs.fg[i].0, &cs.fg[j].0) {
                let (g1, _) = two_cell(i, j, &t1);
                let i1 = i_on_2cell(&g1, &g.opfibration, &images[i].1, &images[j].1, &i_f, &i_g).unwrap();
                for k in 0..n {
                    for t2 in natural_transformations(&cs.fg[j].0, &cs.fg[k].0) {
                        let (g2, _) = two_cell(j, k, &t2);
                        let i2 = i_on_2cell(&g2, &g.opfibration, &images[j].1, &images[k].1, &i_f, &i_g).unwrap();
                        let both = vcomp(&g2, &g1).unwrap();
                        let i21 = i_on_2cell(&both, &g.opfibration, &images[i].1, &images[k].1, &i_f, &i_g).unwrap();
                        assert_eq!(i21, compose_modification(&i2, &i1).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn inverse_preserves_identities_and_composites() {
    preserves_cells(&FinSet::new(), "arrow", "idempotent", 62);
    preserves_cells(&FinSet::new(), "chain3", "arrow", 63);
    preserves_cells(&FinCat::new(), "z2", "z2", 64);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fibers_and_transports_match_the_classical_construction(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, base) = grothendieck::corpus::random_base(&mut rng);
        let shape = grothendieck::corpus::BlockShape::random(&base, &mut rng, 3);
        let op = grothendieck::corpus::BlockPseudofunctor::random(&shape, &mut rng, 3).ordinary;
        let pf = op.enrich(&FinSet::new()).unwrap().pseudofunctor;
        let (g, ig) = bundle(&pf);
        for o in 0..base.num_objects() {
            let fb = &ig.fibers[o];
            prop_assert_eq!(fb.objects.len(), op.fibers[o].num_objects());
            let id = base.identity(o);
            for (k, &e) in fb.objects.iter().enumerate() {
                let (x, b) = g.total.objects[e];
                prop_assert_eq!(b, o);
                for (l, &e2) in fb.objects.iter().enumerate() {
                    let y = g.total.objects[e2].0;
                    let want = op.fibers[o].hom(op.functors[id].objects[x], y).len();
                    prop_assert_eq!(fb.category.hom(k, l).len(), want);
                }
            }
        }
        for f in 0..base.num_arrows() {
            let (src, dst) = (base.arrow(f).dom, base.arrow(f).cod);
            let t = &ig.pseudofunctor.functors[f];
            for (k, &e) in ig.fibers[src].objects.iter().enumerate() {
                let x = g.total.objects[e].0;
                let image = ig.fibers[dst].objects[t.map_object(k)];
                prop_assert_eq!(g.total.objects[image], (op.functors[f].objects[x], dst));
            }
        }
    }
}
