//! The unit `η_F: F ⇒ I(Gr F)` and counit `ε_p: Gr(I p) → p` of the
//! correspondence between pseudofunctors on `B` and opfibrations over `B_V`,
//! their inverses, and the naturality suites.

use std::sync::Arc;

use crate::enriched::{check_vfunctor, VCategory, VFunctor, VNatTrans};
use crate::error::{shape, Error, Result};
use crate::freeunder::OrdinaryCategory;
use crate::gr::{gr_bundle, gr_on_modification, gr_on_transformation, GrBundle};
use crate::igr::{i_on_2cell, i_on_opfibered, inverse_grothendieck_free, InverseGrothendieck};
use crate::opfib::{verify_opfibration, OpfiberedFunctor, Opfibration};
use crate::pseudo::{
    check_pseudofunctor, check_pseudonatural, compose_pseudonatural, Modification, Pseudofunctor, Pseudonatural,
};
use crate::report::VerificationReport;
use crate::vbase::{pipe, BaseCategory};

type Verdict = std::result::Result<(), String>;

/// `ε_p` with its inverse, and the intermediate `I(p)` and `Gr(I p)`.
#[derive(Clone, Debug)]
pub struct Counit<V: BaseCategory> {
    pub opfibration: Arc<Opfibration<V>>,
    pub inverse: InverseGrothendieck<V>,
    pub gr: GrBundle<V>,
    /// `ε_p: Gr(I p) → E`, `(e, pe) ↦ e`.
    pub epsilon: OpfiberedFunctor<V>,
    /// `ε_p⁻¹: E → Gr(I p)`.
    pub epsilon_inverse: OpfiberedFunctor<V>,
}

/// `ε_p`: on the `f` summand, `E_c(f↑e, e') ⊂ E(f↑e, e') --(- ∘ χ(f,e))--> E(e, e')`.
pub fn epsilon_p<V: BaseCategory>(of: &Arc<Opfibration<V>>, base: &Arc<OrdinaryCategory>) -> Result<Counit<V>> {
    let inverse = inverse_grothendieck_free(of, base)?;
    let gr = gr_bundle(&inverse.pseudofunctor)?;
    let e_cat = of.total();
    let v = e_cat.base();
    let total = &gr.total;
    let n = total.len();
    let obj_map: Vec<usize> = total
        .objects
        .iter()
        .map(|&(x, b)| inverse.fibers[b].objects[x])
        .collect();
    let mut hom_maps = Vec::with_capacity(n * n);
    for (i, &(x, _)) in total.objects.iter().enumerate() {
        for (j, &(y, c)) in total.objects.iter().enumerate() {
            let (e, e2) = (obj_map[i], obj_map[j]);
            let fc = &inverse.fibers[c];
            let mut legs = Vec::new();
            for &f in total.summand_arrows(i, j) {
                let lift = of.lift(e, &inverse.arrow_elements[f])?;
                let fx = inverse.pseudofunctor.functors[f].map_object(x);
                if fc.objects[fx] != lift.object {
                    return Err(shape("transport disagrees with the chosen lift"));
                }
                let pre = e_cat.precompose(&lift.chi, e2)?;
                legs.push(pipe(v, &[&fc.cone(fx, y).proj_left, &pre])?);
            }
            hom_maps.push(v.copair(total.cone(i, j), &legs, e_cat.hom(e, e2))?);
        }
    }
    let k = VFunctor::new(total.category.clone(), e_cat.clone(), obj_map.clone(), hom_maps)?;
    let epsilon = OpfiberedFunctor::new(gr.opfibration.clone(), of.clone(), k)?;

    let mut back_obj = vec![0; e_cat.len()];
    for (i, &e) in obj_map.iter().enumerate() {
        back_obj[e] = i;
    }
    if (0..e_cat.len()).any(|e| obj_map[back_obj[e]] != e) || obj_map.len() != e_cat.len() {
        return Err(Error::LawFailure("ε_p is not bijective on objects".into()));
    }
    let mut back_homs = Vec::with_capacity(n * n);
    for e in 0..e_cat.len() {
        for e2 in 0..e_cat.len() {
            let m = epsilon.k.hom_map(back_obj[e], back_obj[e2]);
            back_homs.push(
                v.invert(m)
                    .map_err(|w| Error::LawFailure(format!("ε_p hom map is not invertible: {w}")))?,
            );
        }
    }
    let kinv = VFunctor::new(e_cat.clone(), total.category.clone(), back_obj, back_homs)?;
    let epsilon_inverse = OpfiberedFunctor::new(of.clone(), gr.opfibration.clone(), kinv)?;
    Ok(Counit {
        opfibration: of.clone(),
        inverse,
        gr,
        epsilon,
        epsilon_inverse,
    })
}

fn is_identity<V: BaseCategory>(f: &VFunctor<V>, c: &Arc<VCategory<V>>) -> Verdict {
    f.diff(&VFunctor::identity(c))
}

/// `ε_p` and `ε_p⁻¹` are V-functors and mutually inverse.
pub fn check_counit<V: BaseCategory>(c: &Counit<V>) -> VerificationReport {
    let mut r = VerificationReport::new();
    r.extend_scoped("epsilon", check_vfunctor(&c.epsilon.k));
    r.extend_scoped("epsilon_inverse", check_vfunctor(&c.epsilon_inverse.k));
    let left = c.epsilon_inverse.k.after(&c.epsilon.k).map_err(|e| e.to_string());
    r.record(
        "inverse.left",
        "counit.inverse",
        left.and_then(|f| is_identity(&f, &c.gr.total.category)),
    );
    let right = c.epsilon.k.after(&c.epsilon_inverse.k).map_err(|e| e.to_string());
    r.record(
        "inverse.right",
        "counit.inverse",
        right.and_then(|f| is_identity(&f, c.opfibration.total())),
    );
    r.extend_scoped("gr", c.gr.report.clone());
    r
}

/// `η_F` with its inverse, and the intermediate `Gr F` and `I(Gr F)`.
#[derive(Clone, Debug)]
pub struct Unit<V: BaseCategory> {
    pub gr: GrBundle<V>,
    pub inverse: InverseGrothendieck<V>,
    pub eta: Arc<Pseudonatural<V>>,
    pub eta_inverse: Arc<Pseudonatural<V>>,
}

/// `η_b: x ↦ (x, b)`, on homs `F_b(x,y) --(- ∘ ξ_x)--> F_b(F_{1_b} x, y) ⊂ Gr F((x,b),(y,b))`
/// restricted to the fiber; every `η_f` is an identity.
pub fn eta_f<V: BaseCategory>(pf: &Arc<Pseudofunctor<V>>) -> Result<Unit<V>> {
    let gr = gr_bundle(pf)?;
    if !gr.opfibration.is_verified() {
        return Err(Error::Unverified("Gr F failed to verify as an opfibration".into()));
    }
    let inverse = inverse_grothendieck_free(&gr.opfibration, &pf.base)?;
    let base = &pf.base;
    let igr = &inverse.pseudofunctor;
    let mut components = Vec::with_capacity(base.num_objects());
    let mut back = Vec::with_capacity(base.num_objects());
    for b in 0..base.num_objects() {
        let fb = &pf.fibers[b];
        let fiber = &inverse.fibers[b];
        let v = fb.base();
        let obj_map: Vec<usize> = (0..fb.len())
            .map(|x| fiber.index_of(gr.total.object(x, b)).expect("(x,b) lies over b"))
            .collect();
        let mut homs = Vec::with_capacity(fb.len() * fb.len());
        for x in 0..fb.len() {
            for y in 0..fb.len() {
                let (i, j) = (gr.total.object(x, b), gr.total.object(y, b));
                let k = gr.total.summand(i, j, base.identity(b)).expect("identity summand");
                let into = pipe(
                    v,
                    &[&fb.precompose(&pf.xi_at(b, x), y)?, &gr.total.cone(i, j).injections[k]],
                )?;
                let cone = fiber.cone(obj_map[x], obj_map[y]);
                homs.push(v.universal_into_pullback(cone, &into, &v.to_unit(fb.hom(x, y)))?);
            }
        }
        let eta_b = VFunctor::new(fb.clone(), fiber.category.clone(), obj_map.clone(), homs)?;
        let mut back_obj = vec![usize::MAX; fiber.objects.len()];
        for (x, &o) in obj_map.iter().enumerate() {
            back_obj[o] = x;
        }
        if back_obj.contains(&usize::MAX) {
            return Err(Error::LawFailure(format!(
                "η at `{}` is not surjective on objects",
                base.object_label(b)
            )));
        }
        let mut back_homs = Vec::new();
        for i in 0..fiber.objects.len() {
            for j in 0..fiber.objects.len() {
                let m = eta_b.hom_map(back_obj[i], back_obj[j]);
                back_homs.push(
                    v.invert(m)
                        .map_err(|w| Error::LawFailure(format!("η hom map is not invertible: {w}")))?,
                );
            }
        }
        back.push(VFunctor::new(fiber.category.clone(), fb.clone(), back_obj, back_homs)?);
        components.push(eta_b);
    }
    let squares = (0..base.num_arrows())
        .map(|f| {
            let a = base.arrow(f);
            (0..pf.fibers[a.dom].len())
                .map(|x| {
                    let o = components[a.cod].map_object(pf.functors[f].map_object(x));
                    igr.fibers[a.cod].identity(o).clone()
                })
                .collect()
        })
        .collect();
    let eta = Pseudonatural::new(pf.clone(), igr.clone(), components, squares)?;
    let back_squares = (0..base.num_arrows())
        .map(|f| {
            let a = base.arrow(f);
            (0..igr.fibers[a.dom].len())
                .map(|y| {
                    let o = back[a.cod].map_object(igr.functors[f].map_object(y));
                    pf.fibers[a.cod].identity(o).clone()
                })
                .collect()
        })
        .collect();
    let eta_inverse = Pseudonatural::new(igr.clone(), pf.clone(), back, back_squares)?;
    Ok(Unit {
        gr,
        inverse,
        eta: Arc::new(eta),
        eta_inverse: Arc::new(eta_inverse),
    })
}

/// Pseudonaturality of `η` and `η⁻¹`, identity squares, componentwise
/// isomorphisms and `η⁻¹ η = 1`, `η η⁻¹ = 1`.
pub fn check_unit<V: BaseCategory>(u: &Unit<V>) -> VerificationReport {
    let mut r = VerificationReport::new();
    let eta = &u.eta;
    let base = &eta.source.base;
    r.extend_scoped("eta", check_pseudonatural(eta));
    r.extend_scoped("eta_inverse", check_pseudonatural(&u.eta_inverse));
    for b in 0..base.num_objects() {
        let c = &eta.components[b];
        let v = c.source.base();
        let mut outcome = Ok(());
        let mut seen = vec![false; c.target.len()];
        for &o in &c.obj_map {
            seen[o] = true;
        }
        if c.obj_map.len() != c.target.len() || seen.contains(&false) {
            outcome = Err("not bijective on objects".to_string());
        }
        for m in &c.hom_maps {
            if outcome.is_ok() {
                outcome = v.invert(m).map(|_| ());
            }
        }
        r.record(
            format!("component({})", base.object_label(b)),
            "unit.component_iso",
            outcome,
        );
    }
    for f in 0..base.num_arrows() {
        let a = base.arrow(f);
        let target = &eta.target.fibers[a.cod];
        for x in 0..eta.source.fibers[a.dom].len() {
            let sq = eta.square_at(f, x);
            let outcome = if sq.dom == sq.cod && &sq.elem == target.identity(sq.dom) {
                Ok(())
            } else {
                Err(format!(
                    "η_{} at `{}` is {}",
                    base.arrow_name(f),
                    eta.source.fibers[a.dom].label(x),
                    target.describe(&sq)
                ))
            };
            r.record(
                format!("square({},{})", base.arrow_name(f), eta.source.fibers[a.dom].label(x)),
                "unit.square_identity",
                outcome,
            );
        }
    }
    let left = compose_pseudonatural(&u.eta_inverse, eta)
        .map_err(|e| e.to_string())
        .and_then(|t| t.diff(&Pseudonatural::identity(&eta.source)));
    r.record("inverse.left", "unit.inverse", left);
    let right = compose_pseudonatural(eta, &u.eta_inverse)
        .map_err(|e| e.to_string())
        .and_then(|t| t.diff(&Pseudonatural::identity(&eta.target)));
    r.record("inverse.right", "unit.inverse", right);
    r.extend_scoped("gr", u.gr.report.clone());
    r
}

/// `η_{F'} · α = IGr(α) · η_F`, and for `Γ: α ⇛ β`,
/// `η_{F'} · Γ = IGr(Γ) · η_F`.
pub fn naturality_eta<V: BaseCategory>(
    alpha: &Pseudonatural<V>,
    gamma: Option<(&Modification<V>, &Pseudonatural<V>)>,
    source: &Unit<V>,
    target: &Unit<V>,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::new();
    let src = (&source.gr.total, &source.gr.opfibration);
    let tgt = (&target.gr.total, &target.gr.opfibration);
    let gr_alpha = gr_on_transformation(alpha, src, tgt)?;
    let igr_alpha = Arc::new(i_on_opfibered(&gr_alpha, &source.inverse, &target.inverse)?);
    let lhs = compose_pseudonatural(&target.eta, alpha)?;
    let rhs = compose_pseudonatural(&igr_alpha, &source.eta)?;
    r.record("1cell", "naturality.eta.1cell", lhs.diff(&rhs));
    if let Some((gamma, beta)) = gamma {
        let gr_beta = gr_on_transformation(beta, src, tgt)?;
        let igr_beta = Arc::new(i_on_opfibered(&gr_beta, &source.inverse, &target.inverse)?);
        let gr_gamma = gr_on_modification(gamma, &source.gr.total, &target.gr.total, &gr_alpha, &gr_beta)?;
        let igr_gamma = i_on_2cell(
            &gr_gamma,
            &target.gr.opfibration,
            &igr_alpha,
            &igr_beta,
            &source.inverse,
            &target.inverse,
        )?;
        let base = &alpha.source.base;
        for b in 0..base.num_objects() {
            let fb = &alpha.source.fibers[b];
            for x in 0..fb.len() {
                let left = target.eta.components[b].map_element(&gamma.at(b, x))?;
                let right = igr_gamma.at(b, source.eta.components[b].map_object(x));
                let outcome = if left == right {
                    Ok(())
                } else {
                    let cat = &target.eta.target.fibers[b];
                    Err(format!("{} vs {}", cat.describe(&left), cat.describe(&right)))
                };
                r.record(
                    format!("2cell({},{})", base.object_label(b), fb.label(x)),
                    "naturality.eta.2cell",
                    outcome,
                );
            }
        }
    }
    Ok(r)
}

/// `ε_{p'} ∘ GrI(k) = k ∘ ε_p`, and for `γ: k ⇒ k'`,
/// `ε_{p'} GrI(γ) = γ ε_p`.
pub fn naturality_epsilon<V: BaseCategory>(
    k: &OpfiberedFunctor<V>,
    gamma: Option<(&VNatTrans<V>, &OpfiberedFunctor<V>)>,
    source: &Counit<V>,
    target: &Counit<V>,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::new();
    let src = (&source.gr.total, &source.gr.opfibration);
    let tgt = (&target.gr.total, &target.gr.opfibration);
    let ik = Arc::new(i_on_opfibered(k, &source.inverse, &target.inverse)?);
    let grik = gr_on_transformation(&ik, src, tgt)?;
    let lhs = target.epsilon.k.after(&grik.k)?;
    let rhs = k.k.after(&source.epsilon.k)?;
    r.record("1cell", "naturality.epsilon.1cell", lhs.diff(&rhs));
    if let Some((gamma, k2)) = gamma {
        let ik2 = Arc::new(i_on_opfibered(k2, &source.inverse, &target.inverse)?);
        let grik2 = gr_on_transformation(&ik2, src, tgt)?;
        let igamma = i_on_2cell(gamma, &k.target, &ik, &ik2, &source.inverse, &target.inverse)?;
        let grigamma = gr_on_modification(&igamma, &source.gr.total, &target.gr.total, &grik, &grik2)?;
        let cat = k.target.total();
        for o in 0..source.gr.total.len() {
            let left = target.epsilon.k.map_element(&grigamma.component(o))?;
            let right = gamma.component(source.epsilon.k.map_object(o));
            let outcome = if left == right {
                Ok(())
            } else {
                Err(format!("{} vs {}", cat.describe(&left), cat.describe(&right)))
            };
            r.record(
                format!("2cell({})", source.gr.total.category.label(o)),
                "naturality.epsilon.2cell",
                outcome,
            );
        }
    }
    Ok(r)
}

/// Cells over one base: pseudofunctors, transformations between them,
/// modifications between those, and further opfibrations over `B_V`.
#[derive(Clone, Debug)]
pub struct EquivalenceFixtures<V: BaseCategory> {
    pub base: Arc<OrdinaryCategory>,
    pub pseudofunctors: Vec<Arc<Pseudofunctor<V>>>,
    pub transformations: Vec<Arc<Pseudonatural<V>>>,
    /// `(Γ, index of its source, index of its target)` into `transformations`.
    pub modifications: Vec<(Modification<V>, usize, usize)>,
    pub opfibrations: Vec<Opfibration<V>>,
}

impl<V: BaseCategory> EquivalenceFixtures<V> {
    pub fn new(base: Arc<OrdinaryCategory>) -> Self {
        EquivalenceFixtures {
            base,
            pseudofunctors: Vec::new(),
            transformations: Vec::new(),
            modifications: Vec::new(),
            opfibrations: Vec::new(),
        }
    }
}

fn build_failure(r: &mut VerificationReport, id: String, e: Error) {
    r.fail(id, "equivalence.build", e.to_string());
}

fn find_unit<'a, V: BaseCategory>(
    units: &'a [(Arc<Pseudofunctor<V>>, Option<Unit<V>>)],
    pf: &Pseudofunctor<V>,
) -> Option<&'a Unit<V>> {
    units
        .iter()
        .find(|(p, _)| p.as_ref() == pf)
        .and_then(|(_, u)| u.as_ref())
}

/// Unit and counit round trips on every fixture, then both naturality suites
/// on every transformation and modification and on their images under `Gr`.
pub fn verify_equivalence<V: BaseCategory>(fx: &EquivalenceFixtures<V>) -> VerificationReport {
    let mut r = VerificationReport::new();
    let mut units: Vec<(Arc<Pseudofunctor<V>>, Option<Unit<V>>)> = Vec::new();
    let mut counits: Vec<Option<Counit<V>>> = Vec::new();
    for (i, pf) in fx.pseudofunctors.iter().enumerate() {
        let id = format!("F{i}");
        if pf.base != fx.base {
            build_failure(&mut r, id, shape("pseudofunctor over a different base"));
            units.push((pf.clone(), None));
            counits.push(None);
            continue;
        }
        r.extend_scoped(&id, check_pseudofunctor(pf));
        match eta_f(pf) {
            Ok(u) => {
                r.extend_scoped(&id, check_unit(&u));
                match epsilon_p(&u.gr.opfibration, &fx.base) {
                    Ok(c) => {
                        r.extend_scoped(&format!("Gr{id}"), check_counit(&c));
                        counits.push(Some(c));
                    }
                    Err(e) => {
                        build_failure(&mut r, format!("Gr{id}"), e);
                        counits.push(None);
                    }
                }
                units.push((pf.clone(), Some(u)));
            }
            Err(e) => {
                build_failure(&mut r, id, e);
                units.push((pf.clone(), None));
                counits.push(None);
            }
        }
    }
    for (j, of) in fx.opfibrations.iter().enumerate() {
        let id = format!("p{j}");
        let mut of = of.clone();
        match verify_opfibration(&mut of) {
            Ok(rep) => r.extend_scoped(&id, rep),
            Err(e) => {
                build_failure(&mut r, id, e);
                continue;
            }
        }
        let of = Arc::new(of);
        match epsilon_p(&of, &fx.base) {
            Ok(c) => {
                r.extend_scoped(&id, check_counit(&c));
                let idk = OpfiberedFunctor::identity(&of);
                let idg = VNatTrans::identity(&idk.k);
                match naturality_epsilon(&idk, Some((&idg, &idk)), &c, &c) {
                    Ok(rep) => r.extend_scoped(&format!("{id}.identity"), rep),
                    Err(e) => build_failure(&mut r, format!("{id}.identity"), e),
                }
            }
            Err(e) => build_failure(&mut r, id, e),
        }
    }
    let counit_of = |pf: &Pseudofunctor<V>| {
        units
            .iter()
            .position(|(p, _)| p.as_ref() == pf)
            .and_then(|i| counits.get(i).and_then(|c| c.as_ref()))
    };
    for (t, alpha) in fx.transformations.iter().enumerate() {
        let id = format!("alpha{t}");
        r.extend_scoped(&id, check_pseudonatural(alpha));
        let (Some(su), Some(tu)) = (find_unit(&units, &alpha.source), find_unit(&units, &alpha.target)) else {
            build_failure(&mut r, id, shape("endpoints are not corpus pseudofunctors"));
            continue;
        };
        match naturality_eta(alpha, None, su, tu) {
            Ok(rep) => r.extend_scoped(&id, rep),
            Err(e) => build_failure(&mut r, id.clone(), e),
        }
        if let (Some(sc), Some(tc)) = (counit_of(&alpha.source), counit_of(&alpha.target)) {
            match gr_on_transformation(
                alpha,
                (&su.gr.total, &su.gr.opfibration),
                (&tu.gr.total, &tu.gr.opfibration),
            )
            .and_then(|k| naturality_epsilon(&k, None, sc, tc))
            {
                Ok(rep) => r.extend_scoped(&format!("Gr{id}"), rep),
                Err(e) => build_failure(&mut r, format!("Gr{id}"), e),
            }
        }
    }
    for (m, (gamma, s, t)) in fx.modifications.iter().enumerate() {
        let id = format!("Gamma{m}");
        r.extend_scoped(&id, crate::pseudo::check_modification(gamma));
        let (alpha, beta) = (&fx.transformations[*s], &fx.transformations[*t]);
        let (Some(su), Some(tu)) = (find_unit(&units, &alpha.source), find_unit(&units, &alpha.target)) else {
            build_failure(&mut r, id, shape("endpoints are not corpus pseudofunctors"));
            continue;
        };
        match naturality_eta(alpha, Some((gamma, beta)), su, tu) {
            Ok(rep) => r.extend_scoped(&id, rep),
            Err(e) => build_failure(&mut r, id.clone(), e),
        }
        if let (Some(sc), Some(tc)) = (counit_of(&alpha.source), counit_of(&alpha.target)) {
            let run = || -> Result<VerificationReport> {
                let src = (&su.gr.total, &su.gr.opfibration);
                let tgt = (&tu.gr.total, &tu.gr.opfibration);
                let ka = gr_on_transformation(alpha, src, tgt)?;
                let kb = gr_on_transformation(beta, src, tgt)?;
                let g = gr_on_modification(gamma, &su.gr.total, &tu.gr.total, &ka, &kb)?;
                naturality_epsilon(&ka, Some((&g, &kb)), sc, tc)
            };
            match run() {
                Ok(rep) => r.extend_scoped(&format!("Gr{id}"), rep),
                Err(e) => build_failure(&mut r, format!("Gr{id}"), e),
            }
        }
    }
    r
}
