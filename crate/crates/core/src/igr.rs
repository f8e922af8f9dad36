//! The inverse Grothendieck construction: fibers and transports of an
//! opfibration assembled into a pseudofunctor, with its action on opfibered
//! functors and 2-cells over the base.
//!
//! * `ξ_e = ε_{1_e}`
//! * `θ(f,g)_e = ε_{χ(g, f↑e) ∘ χ(f, e)}`
//! * `(κ_f)_e = ε_{k χ(f, e)}`

use std::sync::Arc;

use crate::enriched::{UMor, VFunctor, VNatTrans};
use crate::error::{shape, Error, Result};
use crate::freeunder::{recognize_free, underlying_category, OrdinaryCategory};
use crate::opfib::{
    check_2cell_over_base, epsilon_chi, fiber, is_opfibered, transport, FiberCategory, OpfiberedFunctor, Opfibration,
};
use crate::pseudo::{Modification, Pseudofunctor, Pseudonatural};
use crate::vbase::{pipe, BaseCategory};

/// `I(p)` together with the fibers it was built from.
#[derive(Clone, Debug)]
pub struct InverseGrothendieck<V: BaseCategory> {
    pub pseudofunctor: Arc<Pseudofunctor<V>>,
    pub fibers: Vec<FiberCategory<V>>,
    /// The underlying morphism of the base named by each arrow.
    pub arrow_elements: Vec<UMor<V>>,
}

/// `I(p)` over the underlying category of the base.
pub fn inverse_grothendieck<V: BaseCategory>(of: &Opfibration<V>) -> Result<InverseGrothendieck<V>> {
    let under = underlying_category(of.base_category())?;
    let arrows = (0..under.category.num_arrows())
        .map(|a| {
            let arrow = under.category.arrow(a);
            of.base_category()
                .element(arrow.dom, arrow.cod, under.elements[a].clone())
        })
        .collect::<Result<Vec<_>>>()?;
    build(of, under.category.clone(), arrows)
}

/// `I(p)` over `B` itself, for `p` over the free V-category `B_V`.
pub fn inverse_grothendieck_free<V: BaseCategory>(
    of: &Opfibration<V>,
    base: &Arc<OrdinaryCategory>,
) -> Result<InverseGrothendieck<V>> {
    let free = recognize_free(of.base_category(), base)?;
    let arrows = (0..base.num_arrows()).map(|f| free.arrow_element(f)).collect();
    build(of, base.clone(), arrows)
}

fn build<V: BaseCategory>(
    of: &Opfibration<V>,
    base: Arc<OrdinaryCategory>,
    arrow_elements: Vec<UMor<V>>,
) -> Result<InverseGrothendieck<V>> {
    if !of.is_verified() {
        return Err(Error::Unverified(
            "the inverse construction requires a verified opfibration".into(),
        ));
    }
    let fibers = (0..base.num_objects())
        .map(|b| fiber(of, b))
        .collect::<Result<Vec<_>>>()?;
    let functors = (0..base.num_arrows())
        .map(|f| {
            let a = base.arrow(f);
            transport(of, &arrow_elements[f], &fibers[a.dom], &fibers[a.cod])
        })
        .collect::<Result<Vec<_>>>()?;
    let e_cat = of.total();
    let mut xi = Vec::with_capacity(base.num_objects());
    for fb in &fibers {
        let mut comps = Vec::with_capacity(fb.objects.len());
        for &e in &fb.objects {
            let eps = epsilon_chi(of, &e_cat.identity_element(e))?;
            comps.push(fb.restrict(&eps)?.elem);
        }
        xi.push(comps);
    }
    let mut theta = std::collections::BTreeMap::new();
    for (f, g) in base.composable_pairs() {
        let (b, d) = (base.arrow(f).dom, base.arrow(g).cod);
        let mut comps = Vec::with_capacity(fibers[b].objects.len());
        for &e in &fibers[b].objects {
            let first = of.lift(e, &arrow_elements[f])?;
            let second = of.lift(first.object, &arrow_elements[g])?;
            let composite = e_cat.compose_elements(&second.chi, &first.chi)?;
            let eps = epsilon_chi(of, &composite)?;
            comps.push(fibers[d].restrict(&eps)?.elem);
        }
        theta.insert((f, g), comps);
    }
    let pf = Pseudofunctor::new(
        base,
        fibers.iter().map(|f| f.category.clone()).collect(),
        functors,
        xi,
        theta,
    )?;
    Ok(InverseGrothendieck {
        pseudofunctor: Arc::new(pf),
        fibers,
        arrow_elements,
    })
}

/// Restriction `k_b: E_b → F_b` of `k` to the fibers over `b`.
pub fn restrict_to_fibers<V: BaseCategory>(
    k: &VFunctor<V>,
    source: &FiberCategory<V>,
    target: &FiberCategory<V>,
) -> Result<VFunctor<V>> {
    let v = k.source.base();
    let n = source.objects.len();
    let obj_map = source
        .objects
        .iter()
        .map(|&e| {
            target
                .index_of(k.map_object(e))
                .ok_or_else(|| Error::NotOverBase("k leaves the fiber".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut hom_maps = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let into = pipe(
                v,
                &[
                    &source.cone(i, j).proj_left,
                    k.hom_map(source.objects[i], source.objects[j]),
                ],
            )?;
            let hom = source.category.hom(i, j);
            hom_maps.push(v.universal_into_pullback(target.cone(obj_map[i], obj_map[j]), &into, &v.to_unit(hom))?);
        }
    }
    VFunctor::new(source.category.clone(), target.category.clone(), obj_map, hom_maps)
}

/// `I(k)`: fiberwise restrictions with squares `ε_{k χ(f,e)}`.
pub fn i_on_opfibered<V: BaseCategory>(
    k: &OpfiberedFunctor<V>,
    source: &InverseGrothendieck<V>,
    target: &InverseGrothendieck<V>,
) -> Result<Pseudonatural<V>> {
    is_opfibered(&k.k, &k.source, &k.target)?.map_err(Error::NotOpfibered)?;
    let base = &source.pseudofunctor.base;
    if base != &target.pseudofunctor.base || source.arrow_elements != target.arrow_elements {
        return Err(shape("inverse constructions over different bases"));
    }
    let components = (0..base.num_objects())
        .map(|b| restrict_to_fibers(&k.k, &source.fibers[b], &target.fibers[b]))
        .collect::<Result<Vec<_>>>()?;
    let mut squares = Vec::with_capacity(base.num_arrows());
    for f in 0..base.num_arrows() {
        let c = base.arrow(f).cod;
        let mut comps = Vec::new();
        for &e in &source.fibers[base.arrow(f).dom].objects {
            let lift = k.source.lift(e, &source.arrow_elements[f])?;
            let image = k.k.map_element(&lift.chi)?;
            let eps = epsilon_chi(&k.target, &image)?;
            comps.push(target.fibers[c].restrict(&eps)?.elem);
        }
        squares.push(comps);
    }
    Pseudonatural::new(
        source.pseudofunctor.clone(),
        target.pseudofunctor.clone(),
        components,
        squares,
    )
}

/// `I(γ)`: the components of `γ: h ⇒ k` restricted to the fibers.
pub fn i_on_2cell<V: BaseCategory>(
    gamma: &VNatTrans<V>,
    target_of: &Opfibration<V>,
    lambda: &Arc<Pseudonatural<V>>,
    kappa: &Arc<Pseudonatural<V>>,
    source: &InverseGrothendieck<V>,
    target: &InverseGrothendieck<V>,
) -> Result<Modification<V>> {
    check_2cell_over_base(gamma, &target_of.p)?.map_err(Error::NotOverBase)?;
    let mut components = Vec::with_capacity(source.fibers.len());
    for (b, fb) in source.fibers.iter().enumerate() {
        let comps = fb
            .objects
            .iter()
            .map(|&e| Ok(target.fibers[b].restrict(&gamma.component(e))?.elem))
            .collect::<Result<Vec<_>>>()?;
        components.push(comps);
    }
    Modification::new(lambda.clone(), kappa.clone(), components)
}
