use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use grothendieck::vbase::*;

fn set(labels: &[&str]) -> SetObj {
    SetObj::new(labels.iter().copied()).unwrap()
}

fn table(dom: &SetObj, cod: &SetObj, t: &[usize]) -> SetMor {
    SetMor::new(dom.clone(), cod.clone(), t.to_vec()).unwrap()
}

#[test]
fn compose_identity_and_constant() {
    let v = FinSet::new();
    let x = set(&["p", "q", "r"]);
    let id = v.identity(&x);
    assert_eq!(v.compose(&id, &id).unwrap(), id);

    let a = set(&["a"]);
    let two = set(&["0", "1"]);
    let u = set(&["u"]);
    let f = SetMor::from_pairs(a.clone(), two.clone(), &[("a", "0")]).unwrap();
    let g = table(&two, &u, &[0, 0]);
    let gf = v.compose(&g, &f).unwrap();
    assert_eq!(gf.table, vec![0]);
    assert_eq!(gf.dom, a);
    assert_eq!(gf.cod, u);
}

#[test]
fn compose_matches_substitution() {
    let v = FinSet::new();
    let x = set(&["a", "b", "c"]);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let f: Vec<usize> = (0..3).map(|_| rng.random_range(0..3)).collect();
        let g: Vec<usize> = (0..3).map(|_| rng.random_range(0..3)).collect();
        let expected: Vec<usize> = f.iter().map(|&i| g[i]).collect();
        let got = v.compose(&table(&x, &x, &g), &table(&x, &x, &f)).unwrap();
        assert_eq!(got.table, expected);
    }
}

#[test]
fn compose_rejects_mismatch() {
    let v = FinSet::new();
    let x = set(&["a"]);
    let y = set(&["b", "c"]);
    assert!(v.compose(&v.identity(&x), &v.identity(&y)).is_err());
}

#[test]
fn tensor_sizes_and_unitors() {
    let v = FinSet::new();
    let x = set(&["a", "b"]);
    let y = set(&["0", "1", "2"]);
    assert_eq!(v.tensor(&x, &y).len(), 6);
    let ru = v.right_unitor(&x);
    assert_eq!(v.dom(&ru), v.tensor(&x, &v.unit()));
    assert!(v.invert(&ru).is_ok());
    let back = v.compose(&ru, &v.right_unitor_inv(&x)).unwrap();
    assert_eq!(back, v.identity(&x));
}

#[test]
fn tensor_distributes_over_coproducts() {
    let v = FinSet::new();
    let a = v.coproduct(&[set(&["a"]), set(&["b", "c"])]);
    let b = v.coproduct(&[set(&["x", "y"]), set(&[]), set(&["z"])]);
    let (pairs, iso) = distributor(&v, &a, &b).unwrap();
    assert_eq!(pairs.summands.len(), 6);
    assert_eq!(pairs.apex.len(), 9);
    // an explicit bijection, built independently: enumerate pairs in both orders
    let inv = v.invert(&iso).unwrap();
    for (k, inj) in pairs.injections.iter().enumerate() {
        let (i, j) = (k / 3, k % 3);
        let via = v.compose(&inv, inj).unwrap();
        let direct = v.tensor_mor(&a.injections[i], &b.injections[j]);
        assert_eq!(via, direct);
    }
}

#[test]
fn coproduct_examples() {
    let v = FinSet::new();
    let cone = v.coproduct(&[set(&["1", "2"]), set(&["3"])]);
    assert_eq!(cone.apex.len(), 3);
    assert_eq!(cone.injections.len(), 2);
    let mut hit = vec![0; 3];
    for inj in &cone.injections {
        for &t in &inj.table {
            hit[t] += 1;
        }
    }
    assert_eq!(hit, vec![1, 1, 1]);

    let two = v.coproduct(&[v.unit(), v.unit()]);
    assert_eq!(two.apex.len(), 2);
    assert_eq!(elements(&v, &two.apex).unwrap().len(), 2);

    let names: Vec<String> = ["f", "g", "h"].iter().map(|s| s.to_string()).collect();
    let copower = v.copower_unit(&names);
    assert_eq!(copower.apex.labels(), names.as_slice());
}

#[test]
fn pullback_examples() {
    let v = FinSet::new();
    let z = set(&["p", "q"]);
    let id = v.identity(&z);
    let p = v.pullback(&id, &id).unwrap();
    assert!(v.invert(&p.proj_left).is_ok());

    let ab = set(&["a", "b"]);
    let two = set(&["0", "1"]);
    let c = set(&["c"]);
    let f = table(&ab, &two, &[0, 1]);
    let g = table(&c, &two, &[0]);
    let p = v.pullback(&f, &g).unwrap();
    assert_eq!(p.apex.labels(), &["(a,c)".to_string()]);
    assert!(v.pullback(&f, &v.identity(&c)).is_err());
}

#[test]
fn pullback_preserves_decompositions() {
    let v = FinSet::new();
    let cone = v.coproduct(&[set(&["a", "b"]), set(&["c"])]);
    let y = set(&["y0", "y1", "y2", "y3"]);
    let g = table(&y, &cone.apex, &[2, 0, 0, 1]);
    let whole = v.pullback(&g, &v.identity(&cone.apex)).unwrap();
    let parts: Vec<_> = cone.injections.iter().map(|inj| v.pullback(&g, inj).unwrap()).collect();
    let total: usize = parts.iter().map(|p| p.apex.len()).sum();
    assert_eq!(total, whole.apex.len());
}

#[test]
fn pullback_square_verdicts() {
    let v = FinSet::new();
    let ab = set(&["a", "b"]);
    let two = set(&["0", "1"]);
    let cd = set(&["c", "d"]);
    let f = table(&ab, &two, &[0, 1]);
    let g = table(&cd, &two, &[0, 0]);
    let p = v.pullback(&f, &g).unwrap();
    assert_eq!(is_pullback_square(&v, &cone_square(&p)).unwrap(), Ok(()));

    let id = v.identity(&ab);
    let sq = Square::<FinSet> {
        top: id.clone(),
        left: id.clone(),
        right: id.clone(),
        bottom: id,
    };
    assert_eq!(is_pullback_square(&v, &sq).unwrap(), Ok(()));

    // corner P ⊔ 1, the extra point sent to the first element of P
    let corner = v.coproduct(&[p.apex.clone(), v.unit()]);
    let first = const_map(&v, &v.unit(), &table(&v.unit(), &p.apex, &[0])).unwrap();
    let to_p = v.copair(&corner, &[v.identity(&p.apex), first], &p.apex).unwrap();
    let sq = Square::<FinSet> {
        top: v.compose(&p.proj_left, &to_p).unwrap(),
        left: v.compose(&p.proj_right, &to_p).unwrap(),
        right: f.clone(),
        bottom: g.clone(),
    };
    let verdict = is_pullback_square(&v, &sq).unwrap();
    assert!(verdict.unwrap_err().contains("merged"));

    let bad = Square::<FinSet> {
        top: p.proj_left.clone(),
        left: v.compose(&table(&cd, &cd, &[1, 0]), &p.proj_right).unwrap(),
        right: f,
        bottom: table(&cd, &two, &[0, 1]),
    };
    assert!(is_pullback_square(&v, &bad).is_err());
}

#[test]
fn universal_into_pullback_examples() {
    let v = FinSet::new();
    let ab = set(&["a", "b"]);
    let two = set(&["0", "1"]);
    let cd = set(&["c", "d"]);
    let f = table(&ab, &two, &[0, 1]);
    let g = table(&cd, &two, &[0, 1]);
    let p = v.pullback(&f, &g).unwrap();
    let u = v.universal_into_pullback(&p, &p.proj_left, &p.proj_right).unwrap();
    assert_eq!(u, v.identity(&p.apex));

    let one = v.unit();
    let pick = v
        .universal_into_pullback(&p, &table(&one, &ab, &[1]), &table(&one, &cd, &[1]))
        .unwrap();
    assert_eq!(p.apex.label(pick.table[0]), "(b,d)");
    let err = v.universal_into_pullback(&p, &table(&one, &ab, &[1]), &table(&one, &cd, &[0]));
    assert!(matches!(err, Err(BaseError::NonCommuting(_))));
}

#[test]
fn copair_and_invert_witnesses() {
    let v = FinSet::new();
    let x = set(&["a", "b"]);
    let y = set(&["u"]);
    let w = v.invert(&table(&x, &y, &[0, 0])).unwrap_err();
    assert!(w.contains("merged"), "{w}");
    let w = v.invert(&table(&y, &x, &[0])).unwrap_err();
    assert!(w.contains("missed"), "{w}");
}

fn cat(c: FiniteCategory) -> Arc<FiniteCategory> {
    Arc::new(c)
}

#[test]
fn finite_category_validation() {
    assert!(FiniteCategory::from_names(&["a", "b"], &[("f", "a", "b"), ("g", "b", "a")], &[]).is_err());
    let iso = FiniteCategory::from_names(
        &["a", "b"],
        &[("f", "a", "b"), ("g", "b", "a")],
        &[("g", "f", "1a"), ("f", "g", "1b")],
    )
    .unwrap();
    assert_eq!(iso.num_arrows(), 4);
    let z2 = FiniteCategory::monoid(&["e", "s"], &[vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!(z2.compose(1, 1), Some(0));
    assert!(FiniteCategory::monoid(&["e", "s"], &[vec![0, 1], vec![1, 1]]).is_ok());
    assert!(FiniteCategory::monoid(&["e", "s", "t"], &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 2, 2]]).is_err());
}

#[test]
fn fincat_hom_counts() {
    let v = FinCat::new();
    let arrow = cat(FiniteCategory::walking_arrow());
    let two = cat(FiniteCategory::discrete(&["p".into(), "q".into()]));
    // functors 2 -> arrow: one per object pair
    assert_eq!(v.hom_set(&two, &arrow).unwrap().len(), 4);
    // functors arrow -> arrow: the monotone maps of {0<1}
    assert_eq!(v.hom_set(&arrow, &arrow).unwrap().len(), 3);
    let chain3 = cat(FiniteCategory::chain(3));
    assert_eq!(v.hom_set(&chain3, &chain3).unwrap().len(), 10);
    assert_eq!(v.hom_set(&chain3, &v.unit()).unwrap().len(), 1);
}

#[test]
fn fincat_products_and_pullbacks() {
    let v = FinCat::new();
    let arrow = cat(FiniteCategory::walking_arrow());
    let sq = v.tensor(&arrow, &arrow);
    assert_eq!(sq.num_objects(), 4);
    assert_eq!(sq.num_arrows(), 9);
    sq.validate().unwrap();
    let p = v.pullback(&v.to_unit(&arrow), &v.to_unit(&arrow)).unwrap();
    assert_eq!(p.apex.num_arrows(), 9);
    assert_eq!(is_pullback_square(&v, &cone_square(&p)).unwrap(), Ok(()));
    let cone = v.coproduct(&[arrow.clone(), v.unit()]);
    cone.apex.validate().unwrap();
    assert_eq!(cone.apex.num_objects(), 3);
    let back = v
        .copair(
            &cone,
            &[
                v.identity(&arrow),
                const_map(&v, &v.unit(), &v.hom_set(&v.unit(), &arrow).unwrap()[0]).unwrap(),
            ],
            &arrow,
        )
        .unwrap();
    back.validate().unwrap();
}

#[test]
fn finset_satisfies_base_properties() {
    let r = verify_base_properties(&FinSet::new(), 50, 1);
    assert!(r.all_passed(), "{r}");
}

#[test]
fn fincat_satisfies_base_properties() {
    let r = verify_base_properties(&FinCat::new(), 50, 2);
    assert!(r.all_passed(), "{r}");
}

#[test]
fn hostile_bases_are_rejected() {
    let r = verify_base_properties(&hostile::nonterminal_unit(), 10, 3);
    assert!(r.law_failed("base.unit.terminal"), "{r}");
    let r = verify_base_properties(&hostile::disconnected_unit(), 10, 3);
    assert!(r.law_failed("base.unit.connected"), "{r}");
    assert!(!r.law_failed("base.unit.terminal"), "{r}");
    let r = verify_base_properties(&hostile::junk_coproducts(), 10, 3);
    assert!(r.law_failed("base.distributivity"), "{r}");
}

fn coproduct_laws<V: BaseCategory>(v: &V, rng: &mut ChaCha8Rng) {
    let parts: Vec<V::Obj> = (0..rng.random_range(0..4)).map(|_| v.sample_object(rng, 4)).collect();
    let cone = v.coproduct(&parts);
    assert_eq!(v.size(&cone.apex), parts.iter().map(|x| v.size(x)).sum::<usize>());
    assert_eq!(cone.injections.len(), parts.len());
    for (inj, x) in cone.injections.iter().zip(&parts) {
        assert_eq!(&v.dom(inj), x);
        assert_eq!(v.cod(inj), cone.apex);
    }
}

fn pullback_laws<V: BaseCategory>(v: &V, rng: &mut ChaCha8Rng) {
    let (a, b, c, d) = (
        v.sample_object(rng, 4),
        v.sample_object(rng, 4),
        v.sample_object(rng, 3),
        v.sample_object(rng, 3),
    );
    let (Some(f), Some(g), Some(h)) = (
        v.sample_morphism(rng, &a, &c),
        v.sample_morphism(rng, &b, &c),
        v.sample_morphism(rng, &d, &b),
    ) else {
        return;
    };
    let inner = v.pullback(&f, &g).unwrap();
    assert_eq!(is_pullback_square(v, &cone_square(&inner)).unwrap(), Ok(()));
    let outer = v.pullback(&inner.proj_right, &h).unwrap();
    let pasted = Square {
        top: v.compose(&inner.proj_left, &outer.proj_left).unwrap(),
        left: outer.proj_right.clone(),
        right: f.clone(),
        bottom: v.compose(&g, &h).unwrap(),
    };
    assert_eq!(is_pullback_square(v, &pasted).unwrap(), Ok(()));
}

fn unit_laws<V: BaseCategory>(v: &V, rng: &mut ChaCha8Rng) {
    let x = v.sample_object(rng, 6);
    assert_eq!(v.hom_set(&x, &v.unit()).unwrap().len(), 1);
    let n = rng.random_range(0..=6);
    let names: Vec<String> = (0..n).map(|i| format!("i{i}")).collect();
    let copower = v.copower_unit(&names);
    assert_eq!(v.hom_set(&v.unit(), &copower.apex).unwrap().len(), n);
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn finset_cones_and_unit(seed in 0u64..100_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v = FinSet::new();
            coproduct_laws(&v, &mut rng);
            pullback_laws(&v, &mut rng);
            unit_laws(&v, &mut rng);
        }

        #[test]
        fn fincat_cones_and_unit(seed in 0u64..100_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v = FinCat::new();
            coproduct_laws(&v, &mut rng);
            pullback_laws(&v, &mut rng);
            unit_laws(&v, &mut rng);
        }

        #[test]
        fn finset_injections_are_disjoint_and_jointly_surjective(sizes in proptest::collection::vec(0usize..4, 0..4)) {
            let v = FinSet::new();
            let parts: Vec<SetObj> = sizes
                .iter()
                .enumerate()
                .map(|(k, &n)| SetObj::new((0..n).map(|i| format!("{k}.{i}"))).unwrap())
                .collect();
            let cone = v.coproduct(&parts);
            let mut hits = vec![0; cone.apex.len()];
            for inj in &cone.injections {
                for &t in &inj.table {
                    hits[t] += 1;
                }
            }
            prop_assert!(hits.iter().all(|&h| h == 1));
        }
    }
}
