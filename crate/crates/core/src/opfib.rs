//! Opcartesian morphisms, opfibrations with chosen lifts, opfibered functors,
//! fibers and transport.
//!
//! Every "unique morphism" is found by exhaustive search over the finite
//! underlying hom-set, and uniqueness is asserted.

use std::sync::Arc;

use crate::enriched::{UMor, VCategory, VFunctor, VNatTrans};
use crate::error::{shape, Error, Result};
use crate::report::VerificationReport;
use crate::vbase::{const_map, is_pullback_square, pipe, BaseCategory, PullbackCone, Square};

type Verdict = std::result::Result<(), String>;

pub const LAW_OPCARTESIAN: &str = "opfibration.opcartesian";

/// Verification state of an opfibration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Unchecked,
    Verified,
    Refuted(String),
}

/// A chosen lift `χ(f,e): e → f↑e` over `f: pe → b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lift<V: BaseCategory> {
    /// `f` in the base.
    pub arrow: UMor<V>,
    /// `f↑e`
    pub object: usize,
    /// `χ(f,e)` in the total category.
    pub chi: UMor<V>,
}

/// A V-functor `p: E → B` with a chosen lift for every `e` and every
/// underlying morphism out of `pe`.
#[derive(Clone, Debug, PartialEq)]
pub struct Opfibration<V: BaseCategory> {
    pub p: VFunctor<V>,
    /// `lifts[e]`, one entry per chosen `f` out of `pe`.
    lifts: Vec<Vec<Lift<V>>>,
    status: Status,
}

impl<V: BaseCategory> Opfibration<V> {
    /// Type-checks every lift: `χ: e → f↑e` with `p χ = f`.
    pub fn new(p: VFunctor<V>, lifts: Vec<Vec<Lift<V>>>) -> Result<Self> {
        let e_cat = p.source.clone();
        if lifts.len() != e_cat.len() {
            return Err(shape("one lift list per object of the total category is required"));
        }
        for (e, ls) in lifts.iter().enumerate() {
            for l in ls {
                if l.arrow.dom != p.map_object(e) || l.chi.dom != e || l.chi.cod != l.object {
                    return Err(shape(format!("lift at `{}` has the wrong endpoints", e_cat.label(e))));
                }
                e_cat.element(l.chi.dom, l.chi.cod, l.chi.elem.clone())?;
                p.target.element(l.arrow.dom, l.arrow.cod, l.arrow.elem.clone())?;
                if p.map_object(l.object) != l.arrow.cod {
                    return Err(Error::NotOverBase(format!(
                        "`{}` is not over the codomain",
                        e_cat.label(l.object)
                    )));
                }
                if p.map_element(&l.chi)? != l.arrow {
                    return Err(Error::NotOverBase(format!(
                        "lift {} does not lie over {}",
                        e_cat.describe(&l.chi),
                        p.target.describe(&l.arrow)
                    )));
                }
            }
        }
        Ok(Opfibration {
            p,
            lifts,
            status: Status::Unchecked,
        })
    }

    pub fn total(&self) -> &Arc<VCategory<V>> {
        &self.p.source
    }

    pub fn base_category(&self) -> &Arc<VCategory<V>> {
        &self.p.target
    }

    pub fn status(&self) -> &Status {
        &self.status
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn lifts(&self) -> &[Vec<Lift<V>>] {
        &self.lifts
    }

    /// The chosen lift of `f` at `e`.
    pub fn lift(&self, e: usize, f: &UMor<V>) -> Result<&Lift<V>> {
        self.lifts
            .get(e)
            .and_then(|ls| ls.iter().find(|l| &l.arrow == f))
            .ok_or_else(|| Error::IncompleteLifts {
                object: self.total().label(e).to_string(),
                arrow: self.base_category().describe(f),
            })
    }

    /// Replaces one chosen lift without re-verifying.
    pub fn with_lift(&self, e: usize, lift: Lift<V>) -> Result<Self> {
        let mut lifts = self.lifts.clone();
        let slot = lifts[e]
            .iter_mut()
            .find(|l| l.arrow == lift.arrow)
            .ok_or_else(|| shape("no lift to replace"))?;
        *slot = lift;
        Opfibration::new(self.p.clone(), lifts)
    }

    /// The lifts table is total over all `(e, f)` with `dom f = pe`.
    pub fn check_total(&self) -> Result<()> {
        let b = self.base_category();
        for e in 0..self.total().len() {
            let pe = self.p.map_object(e);
            for c in 0..b.len() {
                for f in b.underlying_hom(pe, c)? {
                    self.lift(e, &f)?;
                }
            }
        }
        Ok(())
    }
}

/// The opcartesian square at `d`:
///
/// ```text
///  E(e',d) --(-∘χ)--> E(e,d)
///    |p                 |p
///  B(pe',pd) -(-∘pχ)-> B(pe,pd)
/// ```
pub fn is_opcartesian_at<V: BaseCategory>(p: &VFunctor<V>, chi: &UMor<V>, d: usize) -> Verdict {
    let e_cat = &p.source;
    let b_cat = &p.target;
    let run = || -> Result<Verdict> {
        let pchi = p.map_element(chi)?;
        let sq = Square {
            top: e_cat.precompose(chi, d)?,
            left: p.hom_map(chi.cod, d).clone(),
            right: p.hom_map(chi.dom, d).clone(),
            bottom: b_cat.precompose(&pchi, p.map_object(d))?,
        };
        Ok(is_pullback_square(e_cat.base(), &sq)?)
    };
    match run() {
        Ok(Ok(())) => Ok(()),
        Ok(Err(w)) => Err(format!("square at d = `{}` is not a pullback: {w}", e_cat.label(d))),
        Err(e) => Err(format!("square at d = `{}`: {e}", e_cat.label(d))),
    }
}

/// `χ` is `p`-opcartesian; the witness names the first failing `d`.
pub fn is_opcartesian<V: BaseCategory>(p: &VFunctor<V>, chi: &UMor<V>) -> Verdict {
    (0..p.source.len()).try_for_each(|d| is_opcartesian_at(p, chi, d))
}

/// Checks every chosen lift against every `d` and records the outcome.
pub fn verify_opfibration<V: BaseCategory>(of: &mut Opfibration<V>) -> Result<VerificationReport> {
    of.check_total()?;
    let mut report = VerificationReport::new();
    let e_cat = of.total().clone();
    let b_cat = of.base_category().clone();
    for (e, ls) in of.lifts.iter().enumerate() {
        for l in ls {
            for d in 0..e_cat.len() {
                report.record(
                    format!("({}, {}, {})", e_cat.label(e), b_cat.describe(&l.arrow), e_cat.label(d)),
                    LAW_OPCARTESIAN,
                    is_opcartesian_at(&of.p, &l.chi, d),
                );
            }
        }
    }
    of.status = match report.failures().next() {
        None => Status::Verified,
        Some(c) => Status::Refuted(format!("{}: {}", c.id, c.witness.clone().unwrap_or_default())),
    };
    Ok(report)
}

/// The unique `g̃: f↑e → d` with `p g̃ = g` and `g̃ ∘ χ = φ`.
pub fn induced_map<V: BaseCategory>(
    of: &Opfibration<V>,
    lift: &Lift<V>,
    phi: &UMor<V>,
    g: &UMor<V>,
) -> Result<UMor<V>> {
    let e_cat = of.total();
    let b_cat = of.base_category();
    if phi.dom != lift.chi.dom || g.dom != lift.arrow.cod || g.cod != of.p.map_object(phi.cod) {
        return Err(shape("induced_map: endpoints do not match"));
    }
    if of.p.map_element(phi)? != b_cat.compose_elements(g, &lift.arrow)? {
        return Err(Error::NotOverBase("p φ differs from g ∘ f".into()));
    }
    let mut found = Vec::new();
    for cand in e_cat.underlying_hom(lift.object, phi.cod)? {
        if &of.p.map_element(&cand)? == g && &e_cat.compose_elements(&cand, &lift.chi)? == phi {
            found.push(cand);
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one candidate")),
        0 => Err(Error::NotFound(format!("no map induced by {}", e_cat.describe(phi)))),
        count => Err(Error::NotUnique {
            what: format!("map induced by {}", e_cat.describe(phi)),
            count,
        }),
    }
}

/// `ε_χ: (pχ)↑e → e'` over the identity, with `ε_χ ∘ χ(pχ, e) = χ`.
pub fn epsilon_chi<V: BaseCategory>(of: &Opfibration<V>, chi: &UMor<V>) -> Result<UMor<V>> {
    let f = of.p.map_element(chi)?;
    let lift = of.lift(chi.dom, &f)?;
    let id = of.base_category().identity_element(f.cod);
    induced_map(of, lift, chi, &id)
}

/// The fiber of `p` over `b`, with its hom pullbacks along `1_b`.
#[derive(Clone, Debug)]
pub struct FiberCategory<V: BaseCategory> {
    pub over: usize,
    pub category: Arc<VCategory<V>>,
    /// Fiber index → total index.
    pub objects: Vec<usize>,
    /// `cones[i*n + j]`: pullback of `p_{e_i,e_j}` along `1_b`.
    cones: Vec<PullbackCone<V>>,
    /// Inclusion into the total category.
    pub inclusion: VFunctor<V>,
}

impl<V: BaseCategory> FiberCategory<V> {
    pub fn cone(&self, i: usize, j: usize) -> &PullbackCone<V> {
        &self.cones[i * self.objects.len() + j]
    }

    /// Fiber index of a total object.
    pub fn index_of(&self, e: usize) -> Option<usize> {
        self.objects.iter().position(|&x| x == e)
    }

    /// Restricts a total morphism over `1_b` to the fiber.
    pub fn restrict(&self, m: &UMor<V>) -> Result<UMor<V>> {
        let (i, j) = match (self.index_of(m.dom), self.index_of(m.cod)) {
            (Some(i), Some(j)) => (i, j),
            _ => return Err(Error::NotOverBase("endpoints outside the fiber".into())),
        };
        let v = self.category.base();
        let u = v.unit();
        let elem = v.universal_into_pullback(self.cone(i, j), &m.elem, &v.identity(&u))?;
        Ok(UMor { dom: i, cod: j, elem })
    }

    /// Includes a fiber morphism in the total category.
    pub fn include(&self, m: &UMor<V>) -> Result<UMor<V>> {
        self.inclusion.map_element(m)
    }
}

/// The fiber over `b`: objects `pe = b`, homs pulled back along `1_b`.
pub fn fiber<V: BaseCategory>(of: &Opfibration<V>, b: usize) -> Result<FiberCategory<V>> {
    let e_cat = of.total();
    let b_cat = of.base_category();
    let v = e_cat.base().clone();
    let u = v.unit();
    let objects: Vec<usize> = (0..e_cat.len()).filter(|&e| of.p.map_object(e) == b).collect();
    let n = objects.len();
    let id_b = b_cat.identity(b).clone();
    let mut cones = Vec::with_capacity(n * n);
    for &ei in &objects {
        for &ej in &objects {
            cones.push(v.pullback(of.p.hom_map(ei, ej), &id_b)?);
        }
    }
    let cone = |i: usize, j: usize| &cones[i * n + j];
    let mut identities = Vec::with_capacity(n);
    for (i, &ei) in objects.iter().enumerate() {
        identities.push(v.universal_into_pullback(cone(i, i), e_cat.identity(ei), &v.identity(&u))?);
    }
    let mut compositions = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let pair = v.tensor_mor(&cone(j, k).proj_left, &cone(i, j).proj_left);
                let into = pipe(&v, &[&pair, e_cat.composition(objects[i], objects[j], objects[k])])?;
                let dom = v.dom(&pair);
                compositions.push(v.universal_into_pullback(cone(i, k), &into, &v.to_unit(&dom))?);
            }
        }
    }
    let labels = objects.iter().map(|&e| e_cat.label(e).to_string()).collect();
    let homs = cones.iter().map(|c| c.apex.clone()).collect();
    let category = Arc::new(VCategory::new(v, labels, homs, identities, compositions)?);
    let inclusion = VFunctor::new(
        category.clone(),
        e_cat.clone(),
        objects.clone(),
        cones.iter().map(|c| c.proj_left.clone()).collect(),
    )?;
    Ok(FiberCategory {
        over: b,
        category,
        objects,
        cones,
        inclusion,
    })
}

/// Transport `f↑: E_b → E_{b'}` along an underlying morphism `f: b → b'`.
///
/// On homs, `E_b(e,e') → E(e,e') → E(e, f↑e')` by postcomposition with
/// `χ(f,e')` factors through the opcartesian pullback at `χ(f,e)` and then
/// through the fiber pullback over `1_{b'}`.
pub fn transport<V: BaseCategory>(
    of: &Opfibration<V>,
    f: &UMor<V>,
    source: &FiberCategory<V>,
    target: &FiberCategory<V>,
) -> Result<VFunctor<V>> {
    if !of.is_verified() {
        return Err(Error::Unverified("transport requires a verified opfibration".into()));
    }
    if source.over != f.dom || target.over != f.cod {
        return Err(shape("transport: fibers do not match the arrow"));
    }
    let e_cat = of.total();
    let b_cat = of.base_category();
    let v = e_cat.base();
    let n = source.objects.len();
    let mut obj_map = Vec::with_capacity(n);
    let mut lifts = Vec::with_capacity(n);
    for &e in &source.objects {
        let l = of.lift(e, f)?;
        obj_map.push(
            target
                .index_of(l.object)
                .ok_or_else(|| Error::NotOverBase("lift outside the fiber".into()))?,
        );
        lifts.push(l);
    }
    let id_target = b_cat.identity(f.cod).clone();
    let mut hom_maps = Vec::with_capacity(n * n);
    for i in 0..n {
        let (le, chi_e) = (lifts[i].object, &lifts[i].chi);
        for j in 0..n {
            let (le2, chi_e2) = (lifts[j].object, &lifts[j].chi);
            let hom = source.category.hom(i, j);
            let post = e_cat.postcompose(chi_e2, source.objects[i])?;
            let left = pipe(v, &[&source.cone(i, j).proj_left, &post])?;
            let right = const_map(v, hom, &id_target)?;
            let opcart = v.pullback(of.p.hom_map(source.objects[i], le2), &b_cat.precompose(f, f.cod)?)?;
            let into_opcart = v.universal_into_pullback(&opcart, &left, &right)?;
            let comparison =
                v.universal_into_pullback(&opcart, &e_cat.precompose(chi_e, le2)?, of.p.hom_map(le, le2))?;
            let back = v
                .invert(&comparison)
                .map_err(|w| Error::NotOpfibered(format!("chosen lift is not opcartesian: {w}")))?;
            let into_total = pipe(v, &[&into_opcart, &back])?;
            let cone = target.cone(obj_map[i], obj_map[j]);
            hom_maps.push(v.universal_into_pullback(cone, &into_total, &v.to_unit(hom))?);
        }
    }
    VFunctor::new(source.category.clone(), target.category.clone(), obj_map, hom_maps)
}

/// An opfibered functor `k: E → F` with `q k = p`.
#[derive(Clone, Debug, PartialEq)]
pub struct OpfiberedFunctor<V: BaseCategory> {
    pub source: Arc<Opfibration<V>>,
    pub target: Arc<Opfibration<V>>,
    pub k: VFunctor<V>,
}

impl<V: BaseCategory> OpfiberedFunctor<V> {
    /// Checks `q k = p` strictly and that chosen lifts go to opcartesian maps.
    pub fn new(source: Arc<Opfibration<V>>, target: Arc<Opfibration<V>>, k: VFunctor<V>) -> Result<Self> {
        is_opfibered(&k, &source, &target)?.map_err(Error::NotOpfibered)?;
        Ok(OpfiberedFunctor { source, target, k })
    }

    /// Skips the opcartesian check; `q k = p` is still enforced.
    pub fn new_unchecked(source: Arc<Opfibration<V>>, target: Arc<Opfibration<V>>, k: VFunctor<V>) -> Result<Self> {
        over_base(&k, &source, &target)?;
        Ok(OpfiberedFunctor { source, target, k })
    }

    pub fn identity(of: &Arc<Opfibration<V>>) -> Self {
        OpfiberedFunctor {
            source: of.clone(),
            target: of.clone(),
            k: VFunctor::identity(of.total()),
        }
    }

    pub fn after(&self, first: &OpfiberedFunctor<V>) -> Result<Self> {
        if first.target != self.source {
            return Err(shape("opfibered functors are not composable"));
        }
        Ok(OpfiberedFunctor {
            source: first.source.clone(),
            target: self.target.clone(),
            k: self.k.after(&first.k)?,
        })
    }
}

fn over_base<V: BaseCategory>(k: &VFunctor<V>, source: &Opfibration<V>, target: &Opfibration<V>) -> Result<()> {
    let qk = target.p.after(k)?;
    qk.diff(&source.p)
        .map_err(|w| Error::NotOverBase(format!("q k differs from p: {w}")))
}

/// `k` sends every chosen `p`-lift to a `q`-opcartesian map. `q k ≠ p` is an
/// error.
pub fn is_opfibered<V: BaseCategory>(
    k: &VFunctor<V>,
    source: &Opfibration<V>,
    target: &Opfibration<V>,
) -> Result<Verdict> {
    over_base(k, source, target)?;
    for (e, ls) in source.lifts().iter().enumerate() {
        for l in ls {
            let image = k.map_element(&l.chi)?;
            if let Err(w) = is_opcartesian(&target.p, &image) {
                return Ok(Err(format!(
                    "image of χ({}, {}) is not opcartesian: {w}",
                    source.base_category().describe(&l.arrow),
                    source.total().label(e)
                )));
            }
        }
    }
    Ok(Ok(()))
}

/// Every component of `γ`, pushed down by `q`, is an identity.
pub fn check_2cell_over_base<V: BaseCategory>(gamma: &VNatTrans<V>, q: &VFunctor<V>) -> Result<Verdict> {
    if gamma.source.target != q.source || gamma.target.target != q.source {
        return Err(shape("2-cell does not land in the source of q"));
    }
    let qk = q.after(&gamma.source)?;
    let qk2 = q.after(&gamma.target)?;
    qk.diff(&qk2)
        .map_err(|w| Error::NotOverBase(format!("q k differs from q k': {w}")))?;
    let b_cat = &q.target;
    for c in 0..gamma.source.source.len() {
        let pushed = q.map_element(&gamma.component(c))?;
        let id = b_cat.identity_element(pushed.dom);
        if pushed != id {
            return Ok(Err(format!(
                "component at `{}` lies over {} instead of an identity",
                gamma.source.source.label(c),
                b_cat.describe(&pushed)
            )));
        }
    }
    Ok(Ok(()))
}

pub const LAW_COMPOSITE: &str = "opcartesian.composite";
pub const LAW_IDENTITY_LIFT: &str = "opcartesian.identity_lift_iso";
pub const LAW_INDUCED: &str = "opcartesian.induced";
pub const LAW_EPSILON: &str = "opcartesian.epsilon";

/// Exhaustive checks of the basic facts about opcartesian maps:
///
/// * composites of opcartesian maps are opcartesian;
/// * `χ(1_{pe}, e)` is an isomorphism;
/// * for a chosen lift `χ` of `f`, `φ = g̃ ∘ χ` with `p g̃ = g`, `φ` is
///   opcartesian iff `g̃` is;
/// * every opcartesian `χ` factors as `ε_χ ∘ χ(pχ, e)` with a unique `ε_χ`
///   over the identity, which is invertible, and is the identity when `χ` is
///   the chosen lift.
pub fn lemma_suite<V: BaseCategory>(of: &Opfibration<V>) -> Result<VerificationReport> {
    let e_cat = of.total();
    let b_cat = of.base_category();
    let mut r = VerificationReport::new();
    let mut cart: Vec<Vec<UMor<V>>> = vec![Vec::new(); e_cat.len()];
    for e in 0..e_cat.len() {
        for d in 0..e_cat.len() {
            for m in e_cat.underlying_hom(e, d)? {
                if is_opcartesian(&of.p, &m).is_ok() {
                    cart[e].push(m);
                }
            }
        }
    }
    for (e, outs) in cart.iter().enumerate() {
        for chi in outs {
            for chi2 in &cart[chi.cod] {
                let comp = e_cat.compose_elements(chi2, chi)?;
                r.record(
                    format!("{} then {}", e_cat.describe(chi), e_cat.describe(chi2)),
                    LAW_COMPOSITE,
                    is_opcartesian(&of.p, &comp),
                );
            }
        }
        let id = b_cat.identity_element(of.p.map_object(e));
        let lift = of.lift(e, &id)?;
        r.record(
            e_cat.label(e).to_string(),
            LAW_IDENTITY_LIFT,
            e_cat.is_iso_underlying(&lift.chi).map(|_| ()),
        );
    }
    for e in 0..e_cat.len() {
        for lift in of.lifts()[e].iter() {
            for d in 0..e_cat.len() {
                let pd = of.p.map_object(d);
                for phi in e_cat.underlying_hom(e, d)? {
                    let pphi = of.p.map_element(&phi)?;
                    for g in b_cat.underlying_hom(lift.arrow.cod, pd)? {
                        if b_cat.compose_elements(&g, &lift.arrow)? != pphi {
                            continue;
                        }
                        let id = format!(
                            "{} via {} and {}",
                            e_cat.describe(&phi),
                            e_cat.describe(&lift.chi),
                            b_cat.describe(&g)
                        );
                        let outcome = induced_map(of, lift, &phi, &g)
                            .map_err(|e| e.to_string())
                            .and_then(|gt| {
                                let a = is_opcartesian(&of.p, &phi).is_ok();
                                let b = is_opcartesian(&of.p, &gt).is_ok();
                                if a == b {
                                    Ok(())
                                } else {
                                    Err(format!(
                                        "φ opcartesian: {a}, induced {} opcartesian: {b}",
                                        e_cat.describe(&gt)
                                    ))
                                }
                            });
                        r.record(id, LAW_INDUCED, outcome);
                    }
                }
            }
        }
    }
    for outs in &cart {
        for chi in outs {
            let outcome = (|| -> std::result::Result<(), String> {
                let eps = epsilon_chi(of, chi).map_err(|e| e.to_string())?;
                let over = of.p.map_element(&eps).map_err(|e| e.to_string())?;
                if over != b_cat.identity_element(over.dom) {
                    return Err(format!(
                        "ε = {} lies over {}",
                        e_cat.describe(&eps),
                        b_cat.describe(&over)
                    ));
                }
                e_cat.is_iso_underlying(&eps)?;
                let f = of.p.map_element(chi).map_err(|e| e.to_string())?;
                let lift = of.lift(chi.dom, &f).map_err(|e| e.to_string())?;
                if &lift.chi == chi && eps != e_cat.identity_element(chi.cod) {
                    return Err(format!("chosen lift with non-identity ε = {}", e_cat.describe(&eps)));
                }
                Ok(())
            })();
            r.record(e_cat.describe(chi), LAW_EPSILON, outcome);
        }
    }
    Ok(r)
}
