use std::sync::Arc;

use grothendieck::corpus::{base_library, max_enriched, walking_arrow_ordinary};
use grothendieck::enriched::{check_vcategory, check_vfunctor, VCategory, VFunctor};
use grothendieck::freeunder::{
    counit_sigma, free_functor, free_vcategory, iota_from, recognize_free, underlying_category, underlying_functor,
    unit_iota,
};
use grothendieck::gr::grothendieck;
use grothendieck::vbase::{BaseCategory, FinCat, FinFunctor, FinSet, FiniteCategory};

fn library() -> Vec<(&'static str, Arc<FiniteCategory>)> {
    base_library().into_iter().map(|(n, c)| (n, Arc::new(c))).collect()
}

fn unit_is_iso<V: BaseCategory>(v: &V) {
    for (name, b) in library() {
        let iota = unit_iota(&b, v).unwrap();
        assert_eq!(iota.verdict, Ok(()), "{name}");
        let under = underlying_category(&free_vcategory(&b, v).unwrap().vcat).unwrap();
        assert_eq!(under.category.num_objects(), b.num_objects(), "{name}");
        assert_eq!(under.category.num_arrows(), b.num_arrows(), "{name}");
    }
}

#[test]
fn underlying_of_free_is_the_original_category() {
    unit_is_iso(&FinSet::new());
    unit_is_iso(&FinCat::new());
}

fn first_triangle<V: BaseCategory>(v: &V) {
    for (name, b) in library() {
        let free = free_vcategory(&b, v).unwrap();
        assert!(check_vcategory(&free.vcat).all_passed(), "{name}");
        let (free2, under, sigma) = counit_sigma(&free.vcat).unwrap();
        assert!(check_vfunctor(&sigma).all_passed(), "{name}");
        let iota = iota_from(&free, &under).unwrap();
        let iota_v = free_functor(&iota.functor, &free, &free2).unwrap();
        assert_eq!(sigma.after(&iota_v).unwrap(), VFunctor::identity(&free.vcat), "{name}");
    }
}

#[test]
fn sigma_after_free_iota_is_the_identity() {
    first_triangle(&FinSet::new());
    first_triangle(&FinCat::new());
}

fn second_triangle<V: BaseCategory>(c: &Arc<VCategory<V>>) {
    let (free, under, sigma) = counit_sigma(c).unwrap();
    let under_free = underlying_category(&free.vcat).unwrap();
    let iota = iota_from(&free, &under_free).unwrap();
    assert_eq!(iota.verdict, Ok(()));
    let sigma0 = underlying_functor(&sigma, &under_free, &under).unwrap();
    assert_eq!(
        sigma0.after(&iota.functor).unwrap(),
        FinFunctor::identity(&under.category)
    );
}

#[test]
fn underlying_sigma_after_iota_is_the_identity() {
    let pf = walking_arrow_ordinary().enrich(&FinSet::new()).unwrap().pseudofunctor;
    second_triangle(&grothendieck(&pf).unwrap().category);
    second_triangle(&max_enriched(3, 2, 2).unwrap());
    for (_, b) in library() {
        second_triangle(&free_vcategory(&b, &FinCat::new()).unwrap().vcat);
    }
}

#[test]
fn free_preserves_coproducts() {
    let v = FinSet::new();
    let lib = library();
    for (na, a) in &lib {
        for (nb, b) in &lib {
            let sum = Arc::new(FiniteCategory::coproduct(&[a, b]));
            let (fs, fa, fb) = (
                free_vcategory(&sum, &v).unwrap(),
                free_vcategory(a, &v).unwrap(),
                free_vcategory(b, &v).unwrap(),
            );
            let (m, n) = (a.num_objects(), b.num_objects());
            assert_eq!(fs.vcat.len(), m + n);
            for x in 0..m + n {
                for y in 0..m + n {
                    let want = match (x < m, y < m) {
                        (true, true) => fa.vcat.hom(x, y).len(),
                        (false, false) => fb.vcat.hom(x - m, y - m).len(),
                        _ => 0,
                    };
                    assert_eq!(fs.vcat.hom(x, y).len(), want, "{na} + {nb}");
                }
            }
        }
    }
}

#[test]
fn recognition_accepts_free_and_rejects_enriched_homs() {
    let v = FinCat::new();
    for (name, b) in library() {
        let free = free_vcategory(&b, &v).unwrap();
        assert!(recognize_free(&free.vcat, &b).is_ok(), "{name}");
    }
    let max = max_enriched(1, 1, 2).unwrap();
    let under = underlying_category(&max).unwrap();
    assert!(recognize_free(&max, &under.category).is_err());
}

#[test]
fn empty_homs_are_initial() {
    let v = FinSet::new();
    let b = Arc::new(FiniteCategory::walking_arrow());
    let free = free_vcategory(&b, &v).unwrap();
    let (bo, co) = (b.object_position("b").unwrap(), b.object_position("c").unwrap());
    assert!(free.vcat.hom(co, bo).is_empty());
    assert!(free.vcat.composition(co, bo, co).table.is_empty());
}
