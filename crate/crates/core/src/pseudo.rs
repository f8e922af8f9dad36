//! Pseudofunctors from an ordinary category into V-categories, pseudonatural
//! transformations and modifications, with coherence checkers.
//!
//! Conventions for `f: b → c`, `g: c → d`, `h: d → e`:
//!
//! * `ξ_x: F_{1_b} x → x` in `F_b`
//! * `θ(f,g)_x: F_{gf} x → F_g F_f x` in `F_d`
//! * `(α_f)_x: G_f α_b x → α_c F_f x` in `G_c`
//! * `Γ_{b,x}: α_b x → β_b x` in `G_b`
//!
//! The two pseudonaturality axioms are the elementwise unit and composition
//! laws
//!
//! ```text
//! α_b(ξ^F_x) ∘ (α_{1_b})_x = ξ^G_{α_b x}
//! α_d(θ^F(f,g)_x) ∘ (α_{gf})_x = (α_g)_{F_f x} ∘ G_g((α_f)_x) ∘ θ^G(f,g)_{α_b x}
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::enriched::{check_vcategory, check_vfunctor, check_vnat, UMor, VCategory, VFunctor, VNatTrans};
use crate::error::{shape, Result};
use crate::freeunder::OrdinaryCategory;
use crate::report::VerificationReport;
use crate::vbase::BaseCategory;

type Verdict = std::result::Result<(), String>;

fn same<V: BaseCategory>(cat: &VCategory<V>, a: &UMor<V>, b: &UMor<V>) -> Verdict {
    if a.dom != b.dom || a.cod != b.cod {
        return Err(format!(
            "elements have different types `{}` -> `{}` and `{}` -> `{}`",
            cat.label(a.dom),
            cat.label(a.cod),
            cat.label(b.dom),
            cat.label(b.cod)
        ));
    }
    if a.elem != b.elem {
        return Err(format!(
            "{} differs from {}: {}",
            cat.describe(a),
            cat.describe(b),
            cat.base().diff_witness(&a.elem, &b.elem)
        ));
    }
    Ok(())
}

fn attempt(r: Result<Verdict>) -> Verdict {
    r.unwrap_or_else(|e| Err(e.to_string()))
}

/// `g ∘ f` followed by any further maps, in diagrammatic order.
fn chain<V: BaseCategory>(cat: &VCategory<V>, maps: &[&UMor<V>]) -> Result<UMor<V>> {
    let (first, rest) = maps.split_first().ok_or_else(|| shape("empty composite"))?;
    let mut acc = (*first).clone();
    for m in rest {
        acc = cat.compose_elements(m, &acc)?;
    }
    Ok(acc)
}

/// A pseudofunctor `F: B → V-Cat` on a finite ordinary category `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pseudofunctor<V: BaseCategory> {
    pub base: Arc<OrdinaryCategory>,
    /// `F_b` per object of `B`.
    pub fibers: Vec<Arc<VCategory<V>>>,
    /// `F_f` per arrow of `B`.
    pub functors: Vec<VFunctor<V>>,
    /// `xi[b][x] = ξ_x`
    pub xi: Vec<Vec<V::Mor>>,
    /// `theta[(f, g)][x] = θ(f,g)_x` for every composable pair.
    pub theta: BTreeMap<(usize, usize), Vec<V::Mor>>,
}

impl<V: BaseCategory> Pseudofunctor<V> {
    /// Builds a pseudofunctor after type-checking all data. Coherence is
    /// checked by [`check_pseudofunctor`].
    pub fn new(
        base: Arc<OrdinaryCategory>,
        fibers: Vec<Arc<VCategory<V>>>,
        functors: Vec<VFunctor<V>>,
        xi: Vec<Vec<V::Mor>>,
        theta: BTreeMap<(usize, usize), Vec<V::Mor>>,
    ) -> Result<Self> {
        if fibers.len() != base.num_objects() || functors.len() != base.num_arrows() || xi.len() != fibers.len() {
            return Err(shape("pseudofunctor tables have the wrong size"));
        }
        for (f, a) in base.arrows().iter().enumerate() {
            let ff = &functors[f];
            if ff.source != fibers[a.dom] || ff.target != fibers[a.cod] {
                return Err(shape(format!("F_{} has the wrong source or target", a.name)));
            }
        }
        let pf = Pseudofunctor {
            base,
            fibers,
            functors,
            xi,
            theta,
        };
        for b in 0..pf.base.num_objects() {
            let fb = &pf.fibers[b];
            if pf.xi[b].len() != fb.len() {
                return Err(shape(format!(
                    "ξ at `{}` needs one component per object",
                    pf.base.object_label(b)
                )));
            }
            let id = &pf.functors[pf.base.identity(b)];
            for x in 0..fb.len() {
                fb.element(id.map_object(x), x, pf.xi[b][x].clone())?;
            }
        }
        for (f, g) in pf.base.composable_pairs() {
            let comps = pf.theta.get(&(f, g)).ok_or_else(|| {
                shape(format!(
                    "θ missing for ({}, {})",
                    pf.base.arrow_name(f),
                    pf.base.arrow_name(g)
                ))
            })?;
            let b = pf.base.arrow(f).dom;
            let d = pf.base.arrow(g).cod;
            if comps.len() != pf.fibers[b].len() {
                return Err(shape("θ needs one component per object"));
            }
            let gf = pf.base.compose(g, f).expect("composable");
            for x in 0..pf.fibers[b].len() {
                let src = pf.functors[gf].map_object(x);
                let tgt = pf.functors[g].map_object(pf.functors[f].map_object(x));
                pf.fibers[d].element(src, tgt, comps[x].clone())?;
            }
        }
        if pf.theta.len() != pf.base.composable_pairs().len() {
            return Err(shape("θ given for a non-composable pair"));
        }
        Ok(pf)
    }

    /// A strict functor: `F_{1_b} = 1`, `F_{gf} = F_g F_f`, and `ξ`, `θ`
    /// are identities.
    pub fn strict(
        base: Arc<OrdinaryCategory>,
        fibers: Vec<Arc<VCategory<V>>>,
        functors: Vec<VFunctor<V>>,
    ) -> Result<Self> {
        let xi = fibers
            .iter()
            .map(|c| (0..c.len()).map(|x| c.identity(x).clone()).collect())
            .collect();
        let mut theta = BTreeMap::new();
        for (f, g) in base.composable_pairs() {
            let b = base.arrow(f).dom;
            let d = base.arrow(g).cod;
            let fd = &fibers[d];
            let comps = (0..fibers[b].len())
                .map(|x| fd.identity(functors[g].map_object(functors[f].map_object(x))).clone())
                .collect();
            theta.insert((f, g), comps);
        }
        Pseudofunctor::new(base, fibers, functors, xi, theta)
    }

    pub fn fiber(&self, b: usize) -> &Arc<VCategory<V>> {
        &self.fibers[b]
    }

    pub fn functor(&self, f: usize) -> &VFunctor<V> {
        &self.functors[f]
    }

    /// `ξ_x` in `F_b`.
    pub fn xi_at(&self, b: usize, x: usize) -> UMor<V> {
        UMor {
            dom: self.functors[self.base.identity(b)].map_object(x),
            cod: x,
            elem: self.xi[b][x].clone(),
        }
    }

    /// `θ(f,g)_x` in `F_d`.
    pub fn theta_at(&self, f: usize, g: usize, x: usize) -> UMor<V> {
        let gf = self.base.compose(g, f).expect("composable pair");
        UMor {
            dom: self.functors[gf].map_object(x),
            cod: self.functors[g].map_object(self.functors[f].map_object(x)),
            elem: self.theta[&(f, g)][x].clone(),
        }
    }

    /// `ξ(b): F_{1_b} ⇒ 1`
    pub fn xi_transformation(&self, b: usize) -> VNatTrans<V> {
        VNatTrans {
            source: self.functors[self.base.identity(b)].clone(),
            target: VFunctor::identity(&self.fibers[b]),
            components: self.xi[b].clone(),
        }
    }

    /// `θ(f,g): F_{gf} ⇒ F_g F_f`
    pub fn theta_transformation(&self, f: usize, g: usize) -> Result<VNatTrans<V>> {
        let gf = self.base.compose(g, f).ok_or_else(|| shape("non-composable pair"))?;
        Ok(VNatTrans {
            source: self.functors[gf].clone(),
            target: self.functors[g].after(&self.functors[f])?,
            components: self.theta[&(f, g)].clone(),
        })
    }

    pub fn num_objects_total(&self) -> usize {
        self.fibers.iter().map(|c| c.len()).sum()
    }

    /// Where two pseudofunctors differ, if anywhere.
    pub fn diff(&self, other: &Pseudofunctor<V>) -> Verdict {
        if self.base != other.base {
            return Err("base categories differ".into());
        }
        for b in 0..self.base.num_objects() {
            if self.fibers[b] != other.fibers[b] {
                return Err(format!("fibers over `{}` differ", self.base.object_label(b)));
            }
            if self.xi[b] != other.xi[b] {
                return Err(format!("ξ over `{}` differs", self.base.object_label(b)));
            }
        }
        for f in 0..self.base.num_arrows() {
            self.functors[f]
                .diff(&other.functors[f])
                .map_err(|w| format!("F_{}: {w}", self.base.arrow_name(f)))?;
        }
        for (k, v) in &self.theta {
            if other.theta.get(k) != Some(v) {
                return Err(format!(
                    "θ({}, {}) differs",
                    self.base.arrow_name(k.0),
                    self.base.arrow_name(k.1)
                ));
            }
        }
        Ok(())
    }
}

/// Fibers, functors, naturality and invertibility of `ξ`, `θ`, and the
/// unit and associativity coherence laws.
pub fn check_pseudofunctor<V: BaseCategory>(pf: &Pseudofunctor<V>) -> VerificationReport {
    let mut report = VerificationReport::new();
    let b = &pf.base;
    for o in 0..b.num_objects() {
        report.extend_scoped(&format!("F[{}]", b.object_label(o)), check_vcategory(&pf.fibers[o]));
    }
    for f in 0..b.num_arrows() {
        report.extend_scoped(&format!("F[{}]", b.arrow_name(f)), check_vfunctor(&pf.functors[f]));
    }
    for o in 0..b.num_objects() {
        let ol = b.object_label(o);
        report.extend_scoped(
            &format!("xi[{ol}]"),
            relabel(check_vnat(&pf.xi_transformation(o)), "pseudofunctor.xi.natural"),
        );
        let fb = &pf.fibers[o];
        for x in 0..fb.len() {
            let outcome = fb.is_iso_underlying(&pf.xi_at(o, x)).map(|_| ());
            report.record(
                format!("xi[{ol}]({})", fb.label(x)),
                "pseudofunctor.xi.invertible",
                outcome,
            );
        }
    }
    for (f, g) in b.composable_pairs() {
        let pair = format!("theta[{},{}]", b.arrow_name(f), b.arrow_name(g));
        match pf.theta_transformation(f, g) {
            Ok(t) => report.extend_scoped(&pair, relabel(check_vnat(&t), "pseudofunctor.theta.natural")),
            Err(e) => report.fail(pair.clone(), "pseudofunctor.theta.natural", e.to_string()),
        }
        let src = b.arrow(f).dom;
        let fd = &pf.fibers[b.arrow(g).cod];
        for x in 0..pf.fibers[src].len() {
            let outcome = fd.is_iso_underlying(&pf.theta_at(f, g, x)).map(|_| ());
            report.record(
                format!("{pair}({})", pf.fibers[src].label(x)),
                "pseudofunctor.theta.invertible",
                outcome,
            );
        }
    }
    for f in 0..b.num_arrows() {
        let (src, tgt) = (b.arrow(f).dom, b.arrow(f).cod);
        let (fb, fc) = (&pf.fibers[src], &pf.fibers[tgt]);
        let ff = &pf.functors[f];
        for x in 0..fb.len() {
            let id = |y: usize| fc.identity_element(y);
            let left = attempt((|| {
                let t = pf.theta_at(b.identity(src), f, x);
                let fxi = ff.map_element(&pf.xi_at(src, x))?;
                Ok(same(fc, &chain(fc, &[&t, &fxi])?, &id(ff.map_object(x))))
            })());
            report.record(
                format!("unit_left({},{})", b.arrow_name(f), fb.label(x)),
                "pseudofunctor.unit_left",
                left,
            );
            let right = attempt((|| {
                let t = pf.theta_at(f, b.identity(tgt), x);
                let xi = pf.xi_at(tgt, ff.map_object(x));
                Ok(same(fc, &chain(fc, &[&t, &xi])?, &id(ff.map_object(x))))
            })());
            report.record(
                format!("unit_right({},{})", b.arrow_name(f), fb.label(x)),
                "pseudofunctor.unit_right",
                right,
            );
        }
    }
    for (f, g) in b.composable_pairs() {
        let gf = b.compose(g, f).expect("composable");
        for h in 0..b.num_arrows() {
            if b.arrow(h).dom != b.arrow(g).cod {
                continue;
            }
            let hg = b.compose(h, g).expect("composable");
            let src = b.arrow(f).dom;
            let fe = &pf.fibers[b.arrow(h).cod];
            for x in 0..pf.fibers[src].len() {
                let outcome = attempt((|| {
                    let fx = pf.functors[f].map_object(x);
                    let lhs = chain(fe, &[&pf.theta_at(f, hg, x), &pf.theta_at(g, h, fx)])?;
                    let fh_theta = pf.functors[h].map_element(&pf.theta_at(f, g, x))?;
                    let rhs = chain(fe, &[&pf.theta_at(gf, h, x), &fh_theta])?;
                    Ok(same(fe, &lhs, &rhs))
                })());
                report.record(
                    format!(
                        "assoc({},{},{},{})",
                        b.arrow_name(f),
                        b.arrow_name(g),
                        b.arrow_name(h),
                        pf.fibers[src].label(x)
                    ),
                    "pseudofunctor.associativity",
                    outcome,
                );
            }
        }
    }
    report
}

fn relabel(mut r: VerificationReport, law: &str) -> VerificationReport {
    for c in &mut r.checks {
        c.law = law.to_string();
    }
    r
}

/// A pseudonatural transformation `α: F ⇒ G`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pseudonatural<V: BaseCategory> {
    pub source: Arc<Pseudofunctor<V>>,
    pub target: Arc<Pseudofunctor<V>>,
    /// `α_b: F_b → G_b`
    pub components: Vec<VFunctor<V>>,
    /// `squares[f][x] = (α_f)_x`
    pub squares: Vec<Vec<V::Mor>>,
}

impl<V: BaseCategory> Pseudonatural<V> {
    pub fn new(
        source: Arc<Pseudofunctor<V>>,
        target: Arc<Pseudofunctor<V>>,
        components: Vec<VFunctor<V>>,
        squares: Vec<Vec<V::Mor>>,
    ) -> Result<Self> {
        let b = source.base.clone();
        if b != target.base {
            return Err(shape("pseudofunctors over different bases"));
        }
        if components.len() != b.num_objects() || squares.len() != b.num_arrows() {
            return Err(shape("pseudonatural tables have the wrong size"));
        }
        for o in 0..b.num_objects() {
            if components[o].source != source.fibers[o] || components[o].target != target.fibers[o] {
                return Err(shape(format!("α_{} has the wrong type", b.object_label(o))));
            }
        }
        let t = Pseudonatural {
            source,
            target,
            components,
            squares,
        };
        for f in 0..b.num_arrows() {
            let (src, tgt) = (b.arrow(f).dom, b.arrow(f).cod);
            if t.squares[f].len() != t.source.fibers[src].len() {
                return Err(shape(format!("α_{} needs one component per object", b.arrow_name(f))));
            }
            for x in 0..t.squares[f].len() {
                let (d, c) = t.square_type(f, x);
                t.target.fibers[tgt].element(d, c, t.squares[f][x].clone())?;
            }
        }
        Ok(t)
    }

    fn square_type(&self, f: usize, x: usize) -> (usize, usize) {
        let b = &self.source.base;
        let (src, tgt) = (b.arrow(f).dom, b.arrow(f).cod);
        let g_f = &self.target.functors[f];
        (
            g_f.map_object(self.components[src].map_object(x)),
            self.components[tgt].map_object(self.source.functors[f].map_object(x)),
        )
    }

    /// `(α_f)_x` in `G_c`.
    pub fn square_at(&self, f: usize, x: usize) -> UMor<V> {
        let (dom, cod) = self.square_type(f, x);
        UMor {
            dom,
            cod,
            elem: self.squares[f][x].clone(),
        }
    }

    /// `α_f: G_f α_b ⇒ α_c F_f`
    pub fn square_transformation(&self, f: usize) -> Result<VNatTrans<V>> {
        let b = &self.source.base;
        let (src, tgt) = (b.arrow(f).dom, b.arrow(f).cod);
        Ok(VNatTrans {
            source: self.target.functors[f].after(&self.components[src])?,
            target: self.components[tgt].after(&self.source.functors[f])?,
            components: self.squares[f].clone(),
        })
    }

    pub fn identity(pf: &Arc<Pseudofunctor<V>>) -> Self {
        let components = pf.fibers.iter().map(VFunctor::identity).collect();
        let squares = (0..pf.base.num_arrows())
            .map(|f| {
                let a = pf.base.arrow(f);
                let fc = &pf.fibers[a.cod];
                (0..pf.fibers[a.dom].len())
                    .map(|x| fc.identity(pf.functors[f].map_object(x)).clone())
                    .collect()
            })
            .collect();
        Pseudonatural {
            source: pf.clone(),
            target: pf.clone(),
            components,
            squares,
        }
    }

    pub fn diff(&self, other: &Pseudonatural<V>) -> Verdict {
        let b = &self.source.base;
        for o in 0..b.num_objects() {
            self.components[o]
                .diff(&other.components[o])
                .map_err(|w| format!("component at `{}`: {w}", b.object_label(o)))?;
        }
        for f in 0..b.num_arrows() {
            if self.squares[f] != other.squares[f] {
                return Err(format!("square at `{}` differs", b.arrow_name(f)));
            }
        }
        Ok(())
    }
}

/// Component functors, naturality and invertibility of every square, and the
/// unit and composition axioms.
pub fn check_pseudonatural<V: BaseCategory>(t: &Pseudonatural<V>) -> VerificationReport {
    let mut report = VerificationReport::new();
    let b = &t.source.base;
    let (fp, gp) = (&t.source, &t.target);
    for o in 0..b.num_objects() {
        report.extend_scoped(
            &format!("alpha[{}]", b.object_label(o)),
            check_vfunctor(&t.components[o]),
        );
    }
    for f in 0..b.num_arrows() {
        let name = format!("alpha[{}]", b.arrow_name(f));
        match t.square_transformation(f) {
            Ok(sq) => report.extend_scoped(&name, relabel(check_vnat(&sq), "pseudonatural.square.natural")),
            Err(e) => report.fail(name.clone(), "pseudonatural.square.natural", e.to_string()),
        }
        let a = b.arrow(f);
        let gc = &gp.fibers[a.cod];
        for x in 0..fp.fibers[a.dom].len() {
            let outcome = gc.is_iso_underlying(&t.square_at(f, x)).map(|_| ());
            report.record(
                format!("{name}({})", fp.fibers[a.dom].label(x)),
                "pseudonatural.square.invertible",
                outcome,
            );
        }
    }
    for o in 0..b.num_objects() {
        let gb = &gp.fibers[o];
        let ab = &t.components[o];
        for x in 0..fp.fibers[o].len() {
            let outcome = attempt((|| {
                let lhs = chain(gb, &[&t.square_at(b.identity(o), x), &ab.map_element(&fp.xi_at(o, x))?])?;
                Ok(same(gb, &lhs, &gp.xi_at(o, ab.map_object(x))))
            })());
            report.record(
                format!("unit({},{})", b.object_label(o), fp.fibers[o].label(x)),
                "pseudonatural.unit",
                outcome,
            );
        }
    }
    for (f, g) in b.composable_pairs() {
        let gf = b.compose(g, f).expect("composable");
        let (src, dst) = (b.arrow(f).dom, b.arrow(g).cod);
        let gd = &gp.fibers[dst];
        for x in 0..fp.fibers[src].len() {
            let outcome = attempt((|| {
                let ad = &t.components[dst];
                let lhs = chain(gd, &[&t.square_at(gf, x), &ad.map_element(&fp.theta_at(f, g, x))?])?;
                let ax = t.components[src].map_object(x);
                let gg_af = gp.functors[g].map_element(&t.square_at(f, x))?;
                let fx = fp.functors[f].map_object(x);
                let rhs = chain(gd, &[&gp.theta_at(f, g, ax), &gg_af, &t.square_at(g, fx)])?;
                Ok(same(gd, &lhs, &rhs))
            })());
            report.record(
                format!(
                    "composition({},{},{})",
                    b.arrow_name(f),
                    b.arrow_name(g),
                    fp.fibers[src].label(x)
                ),
                "pseudonatural.composition",
                outcome,
            );
        }
    }
    report
}

/// `β ∘ α` with `(βα)_f x = β_c((α_f)_x) ∘ (β_f)_{α_b x}`.
pub fn compose_pseudonatural<V: BaseCategory>(
    beta: &Pseudonatural<V>,
    alpha: &Pseudonatural<V>,
) -> Result<Pseudonatural<V>> {
    if alpha.target != beta.source {
        return Err(shape("pseudonatural transformations are not composable"));
    }
    let b = &alpha.source.base;
    let components = (0..b.num_objects())
        .map(|o| beta.components[o].after(&alpha.components[o]))
        .collect::<Result<Vec<_>>>()?;
    let mut squares = Vec::with_capacity(b.num_arrows());
    for f in 0..b.num_arrows() {
        let a = b.arrow(f);
        let hc = &beta.target.fibers[a.cod];
        let mut comps = Vec::new();
        for x in 0..alpha.source.fibers[a.dom].len() {
            let first = beta.square_at(f, alpha.components[a.dom].map_object(x));
            let second = beta.components[a.cod].map_element(&alpha.square_at(f, x))?;
            comps.push(chain(hc, &[&first, &second])?.elem);
        }
        squares.push(comps);
    }
    Pseudonatural::new(alpha.source.clone(), beta.target.clone(), components, squares)
}

/// A modification `Γ: α ⇛ β`.
#[derive(Clone, Debug, PartialEq)]
pub struct Modification<V: BaseCategory> {
    pub source: Arc<Pseudonatural<V>>,
    pub target: Arc<Pseudonatural<V>>,
    /// `components[b][x] = Γ_{b,x}`
    pub components: Vec<Vec<V::Mor>>,
}

impl<V: BaseCategory> Modification<V> {
    pub fn new(
        source: Arc<Pseudonatural<V>>,
        target: Arc<Pseudonatural<V>>,
        components: Vec<Vec<V::Mor>>,
    ) -> Result<Self> {
        if source.source != target.source || source.target != target.target {
            return Err(shape("modification between non-parallel transformations"));
        }
        let b = &source.source.base;
        if components.len() != b.num_objects() {
            return Err(shape("modification needs one component per object"));
        }
        for o in 0..b.num_objects() {
            let gb = &source.target.fibers[o];
            if components[o].len() != source.source.fibers[o].len() {
                return Err(shape("modification component has the wrong size"));
            }
            for (x, m) in components[o].iter().enumerate() {
                gb.element(
                    source.components[o].map_object(x),
                    target.components[o].map_object(x),
                    m.clone(),
                )?;
            }
        }
        Ok(Modification {
            source,
            target,
            components,
        })
    }

    pub fn identity(t: &Arc<Pseudonatural<V>>) -> Self {
        let components = (0..t.components.len())
            .map(|o| {
                let gb = &t.target.fibers[o];
                t.components[o]
                    .obj_map
                    .iter()
                    .map(|&y| gb.identity(y).clone())
                    .collect()
            })
            .collect();
        Modification {
            source: t.clone(),
            target: t.clone(),
            components,
        }
    }

    pub fn at(&self, b: usize, x: usize) -> UMor<V> {
        UMor {
            dom: self.source.components[b].map_object(x),
            cod: self.target.components[b].map_object(x),
            elem: self.components[b][x].clone(),
        }
    }

    /// `Γ_b: α_b ⇒ β_b`
    pub fn transformation(&self, b: usize) -> VNatTrans<V> {
        VNatTrans {
            source: self.source.components[b].clone(),
            target: self.target.components[b].clone(),
            components: self.components[b].clone(),
        }
    }
}

/// Naturality of each `Γ_b` and `(Γ_c)_{F_f x} ∘ (α_f)_x = (β_f)_x ∘ G_f(Γ_{b,x})`.
pub fn check_modification<V: BaseCategory>(m: &Modification<V>) -> VerificationReport {
    let mut report = VerificationReport::new();
    let (alpha, beta) = (&m.source, &m.target);
    let b = &alpha.source.base;
    for o in 0..b.num_objects() {
        report.extend_scoped(
            &format!("Gamma[{}]", b.object_label(o)),
            relabel(check_vnat(&m.transformation(o)), "modification.natural"),
        );
    }
    for f in 0..b.num_arrows() {
        let a = b.arrow(f);
        let gc = &alpha.target.fibers[a.cod];
        for x in 0..alpha.source.fibers[a.dom].len() {
            let outcome = attempt((|| {
                let fx = alpha.source.functors[f].map_object(x);
                let lhs = chain(gc, &[&alpha.square_at(f, x), &m.at(a.cod, fx)])?;
                let g_gamma = alpha.target.functors[f].map_element(&m.at(a.dom, x))?;
                let rhs = chain(gc, &[&g_gamma, &beta.square_at(f, x)])?;
                Ok(same(gc, &lhs, &rhs))
            })());
            report.record(
                format!("square({},{})", b.arrow_name(f), alpha.source.fibers[a.dom].label(x)),
                "modification.square",
                outcome,
            );
        }
    }
    report
}

/// Vertical composite `Γ' · Γ`.
pub fn compose_modification<V: BaseCategory>(
    second: &Modification<V>,
    first: &Modification<V>,
) -> Result<Modification<V>> {
    if first.target != second.source {
        return Err(shape("modifications are not composable"));
    }
    let pf = &first.source.target;
    let components = (0..first.components.len())
        .map(|o| {
            (0..first.components[o].len())
                .map(|x| Ok(pf.fibers[o].compose_elements(&second.at(o, x), &first.at(o, x))?.elem))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Modification::new(first.source.clone(), second.target.clone(), components)
}

/// `δ Γ: δα ⇛ δβ` for `Γ: α ⇛ β` and `δ` out of the target of `α`, with
/// components `δ_b(Γ_{b,x})`.
pub fn whisker_modification_left<V: BaseCategory>(
    delta: &Arc<Pseudonatural<V>>,
    gamma: &Modification<V>,
) -> Result<Modification<V>> {
    let source = Arc::new(compose_pseudonatural(delta, &gamma.source)?);
    let target = Arc::new(compose_pseudonatural(delta, &gamma.target)?);
    let components = (0..gamma.components.len())
        .map(|o| {
            (0..gamma.components[o].len())
                .map(|x| Ok(delta.components[o].map_element(&gamma.at(o, x))?.elem))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Modification::new(source, target, components)
}

/// `Γ γ: αγ ⇛ βγ` for `Γ: α ⇛ β` and `γ` into the source of `α`, with
/// components `Γ_{b, γ_b x}`.
pub fn whisker_modification_right<V: BaseCategory>(
    gamma: &Modification<V>,
    g: &Arc<Pseudonatural<V>>,
) -> Result<Modification<V>> {
    let source = Arc::new(compose_pseudonatural(&gamma.source, g)?);
    let target = Arc::new(compose_pseudonatural(&gamma.target, g)?);
    let components = (0..gamma.components.len())
        .map(|o| {
            (0..g.source.fibers[o].len())
                .map(|x| gamma.components[o][g.components[o].map_object(x)].clone())
                .collect()
        })
        .collect();
    Modification::new(source, target, components)
}
