//! The Grothendieck construction of a pseudofunctor, its projection onto the
//! free V-category of the base, and its action on pseudonatural
//! transformations and modifications.
//!
//! Composition on the `(g, f)` summand is
//!
//! ```text
//! F_d(F_g y, z) ⊗ F_c(F_f x, y)
//!   --1 ⊗ F_g-->        F_d(F_g y, z) ⊗ F_d(F_g F_f x, F_g y)
//!   --1 ⊗ (- ∘ θ_x)-->  F_d(F_g y, z) ⊗ F_d(F_{gf} x, F_g y)
//!   --∘-->              F_d(F_{gf} x, z)  ⊂  Gr F((x,b),(z,d))
//! ```
//!
//! extended over the coproducts by the distributor.

use std::collections::HashMap;
use std::sync::Arc;

use crate::enriched::{UMor, VCategory, VFunctor, VNatTrans};
use crate::error::{shape, Result};
use crate::freeunder::{free_vcategory, FreeCategory};
use crate::opfib::{Lift, OpfiberedFunctor, Opfibration};
use crate::pseudo::{Modification, Pseudofunctor, Pseudonatural};
use crate::vbase::{coproduct_map, distributor, elements, pipe, BaseCategory, CoproductCone};

/// `Gr F` with the indexing arrow of every hom summand recorded.
#[derive(Clone, Debug)]
pub struct GrTotalCategory<V: BaseCategory> {
    pub category: Arc<VCategory<V>>,
    /// `(x, b)` per object, `b`-major.
    pub objects: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    /// `cones[i*n + j]` decomposes `hom(i, j)` into summands.
    cones: Vec<CoproductCone<V>>,
    /// `arrows[i*n + j][k]` indexes summand `k` of `hom(i, j)`.
    arrows: Vec<Vec<usize>>,
}

impl<V: BaseCategory> GrTotalCategory<V> {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Index of `(x, b)`.
    pub fn object(&self, x: usize, b: usize) -> usize {
        self.index[&(x, b)]
    }

    pub fn cone(&self, i: usize, j: usize) -> &CoproductCone<V> {
        &self.cones[i * self.len() + j]
    }

    pub fn summand_arrows(&self, i: usize, j: usize) -> &[usize] {
        &self.arrows[i * self.len() + j]
    }

    /// Position of the summand indexed by `f` in `hom(i, j)`.
    pub fn summand(&self, i: usize, j: usize, f: usize) -> Option<usize> {
        self.summand_arrows(i, j).iter().position(|&a| a == f)
    }

    /// `inj_f ∘ m` for `m: F_f x → y` in `F_c`.
    pub fn inject(&self, i: usize, j: usize, f: usize, m: &UMor<V>) -> Result<UMor<V>> {
        let k = self
            .summand(i, j, f)
            .ok_or_else(|| shape("arrow does not index a summand of this hom"))?;
        let v = self.category.base();
        Ok(UMor {
            dom: i,
            cod: j,
            elem: v.compose(&self.cone(i, j).injections[k], &m.elem)?,
        })
    }

    /// The indexing arrow and summand element of a morphism of `Gr F`.
    pub fn decompose(&self, m: &UMor<V>) -> Result<(usize, V::Mor)> {
        let v = self.category.base();
        let cone = self.cone(m.dom, m.cod);
        for (k, inj) in cone.injections.iter().enumerate() {
            for e in elements(v, &cone.summands[k])? {
                if v.compose(inj, &e)? == m.elem {
                    return Ok((self.summand_arrows(m.dom, m.cod)[k], e));
                }
            }
        }
        Err(shape("element lies in no summand"))
    }
}

fn first_base<V: BaseCategory>(pf: &Pseudofunctor<V>) -> Result<V> {
    pf.fibers
        .first()
        .map(|c| c.base().clone())
        .ok_or_else(|| shape("pseudofunctor over an empty base"))
}

/// `Gr F`: objects `(x, b)`, homs `∐_{f: b → c} F_c(F_f x, y)`, identities
/// `ξ_x` at `1_b`.
pub fn grothendieck<V: BaseCategory>(pf: &Pseudofunctor<V>) -> Result<GrTotalCategory<V>> {
    let v = first_base(pf)?;
    let bc = &pf.base;
    let mut objects = Vec::new();
    let mut labels = Vec::new();
    let mut index = HashMap::new();
    for b in 0..bc.num_objects() {
        for x in 0..pf.fibers[b].len() {
            index.insert((x, b), objects.len());
            objects.push((x, b));
            labels.push(format!("({},{})", pf.fibers[b].label(x), bc.object_label(b)));
        }
    }
    let n = objects.len();
    let mut cones = Vec::with_capacity(n * n);
    let mut arrows = Vec::with_capacity(n * n);
    for &(x, b) in &objects {
        for &(y, c) in &objects {
            let hom: Vec<usize> = bc.hom(b, c);
            let summands: Vec<V::Obj> = hom
                .iter()
                .map(|&f| pf.fibers[c].hom(pf.functors[f].map_object(x), y).clone())
                .collect();
            cones.push(v.coproduct(&summands));
            arrows.push(hom);
        }
    }
    let cone = |i: usize, j: usize| &cones[i * n + j];
    let arrow_pos = |i: usize, j: usize, f: usize| arrows[i * n + j].iter().position(|&a| a == f).expect("summand");

    let mut identities = Vec::with_capacity(n);
    for (i, &(x, b)) in objects.iter().enumerate() {
        let k = arrow_pos(i, i, bc.identity(b));
        identities.push(v.compose(&cone(i, i).injections[k], &pf.xi[b][x])?);
    }

    let mut compositions = Vec::with_capacity(n * n * n);
    for (i, &(x, _)) in objects.iter().enumerate() {
        for (j, &(y, _)) in objects.iter().enumerate() {
            for (k, &(z, d)) in objects.iter().enumerate() {
                let (second, first) = (cone(j, k), cone(i, j));
                let (pairs, iso) = distributor(&v, second, first)?;
                let fd = &pf.fibers[d];
                let mut legs = Vec::with_capacity(pairs.summands.len());
                for &g in &arrows[j * n + k] {
                    for &f in &arrows[i * n + j] {
                        let gf = bc.compose(g, f).expect("composable");
                        let fx = pf.functors[f].map_object(x);
                        let (gy, gfx, gfx_c) = (
                            pf.functors[g].map_object(y),
                            pf.functors[g].map_object(fx),
                            pf.functors[gf].map_object(x),
                        );
                        let left = fd.hom(gy, z);
                        let apply_g = v.tensor_mor(&v.identity(left), pf.functors[g].hom_map(fx, y));
                        let theta = pf.theta_at(f, g, x);
                        debug_assert_eq!((theta.dom, theta.cod), (gfx_c, gfx));
                        let pre = v.tensor_mor(&v.identity(left), &fd.precompose(&theta, gy)?);
                        let inj = &cone(i, k).injections[arrow_pos(i, k, gf)];
                        legs.push(pipe(&v, &[&apply_g, &pre, fd.composition(gfx_c, gy, z), inj])?);
                    }
                }
                let copaired = v.copair(&pairs, &legs, &cone(i, k).apex)?;
                compositions.push(v.compose(&copaired, &iso)?);
            }
        }
    }
    let homs = cones.iter().map(|c| c.apex.clone()).collect();
    let category = Arc::new(VCategory::new(v, labels, homs, identities, compositions)?);
    Ok(GrTotalCategory {
        category,
        objects,
        index,
        cones,
        arrows,
    })
}

/// `p: Gr F → B_V` with chosen lifts `f↑(x,b) = (F_f x, c)` and
/// `χ = inj_f(1_{F_f x})`. The result is unchecked; run
/// [`crate::opfib::verify_opfibration`] to verify it.
pub fn gr_projection<V: BaseCategory>(
    pf: &Pseudofunctor<V>,
    gr: &GrTotalCategory<V>,
) -> Result<(FreeCategory<V>, Opfibration<V>)> {
    let v = gr.category.base().clone();
    let free = free_vcategory(&pf.base, &v)?;
    let n = gr.len();
    let mut hom_maps = Vec::with_capacity(n * n);
    for (i, &(_, b)) in gr.objects.iter().enumerate() {
        for (j, &(_, c)) in gr.objects.iter().enumerate() {
            let from = gr.cone(i, j);
            let to = free.hom_cone(b, c);
            let free_arrows = free.hom_arrows(b, c);
            if free_arrows != gr.summand_arrows(i, j) {
                return Err(shape("free category and Gr F index homs differently"));
            }
            let maps: Vec<V::Mor> = from.summands.iter().map(|s| v.to_unit(s)).collect();
            hom_maps.push(coproduct_map(&v, from, to, &maps)?);
        }
    }
    let obj_map = gr.objects.iter().map(|&(_, b)| b).collect();
    let p = VFunctor::new(gr.category.clone(), free.vcat.clone(), obj_map, hom_maps)?;
    let mut lifts = Vec::with_capacity(n);
    for (i, &(x, b)) in gr.objects.iter().enumerate() {
        let mut ls = Vec::new();
        for f in 0..pf.base.num_arrows() {
            let a = pf.base.arrow(f);
            if a.dom != b {
                continue;
            }
            let fx = pf.functors[f].map_object(x);
            let j = gr.object(fx, a.cod);
            let chi = gr.inject(i, j, f, &pf.fibers[a.cod].identity_element(fx))?;
            ls.push(Lift {
                arrow: free.arrow_element(f),
                object: j,
                chi,
            });
        }
        lifts.push(ls);
    }
    let of = Opfibration::new(p, lifts)?;
    Ok((free, of))
}

/// `Gr α: (x,b) ↦ (α_b x, b)`, on the `f` summand `α_c` followed by
/// precomposition with `(α_f)_x`.
pub fn gr_on_transformation<V: BaseCategory>(
    alpha: &Pseudonatural<V>,
    source: (&GrTotalCategory<V>, &Arc<Opfibration<V>>),
    target: (&GrTotalCategory<V>, &Arc<Opfibration<V>>),
) -> Result<OpfiberedFunctor<V>> {
    let (gf, of_f) = source;
    let (gg, of_g) = target;
    let (fp, gp) = (&alpha.source, &alpha.target);
    let v = gf.category.base();
    let n = gf.len();
    let obj_map: Vec<usize> = gf
        .objects
        .iter()
        .map(|&(x, b)| gg.object(alpha.components[b].map_object(x), b))
        .collect();
    let mut hom_maps = Vec::with_capacity(n * n);
    for (i, &(x, _)) in gf.objects.iter().enumerate() {
        for (j, &(y, c)) in gf.objects.iter().enumerate() {
            let (ai, aj) = (obj_map[i], obj_map[j]);
            let tgt_cone = gg.cone(ai, aj);
            let ac = &alpha.components[c];
            let gc = &gp.fibers[c];
            let mut legs = Vec::new();
            for &f in gf.summand_arrows(i, j) {
                let fx = fp.functors[f].map_object(x);
                let pre = gc.precompose(&alpha.square_at(f, x), ac.map_object(y))?;
                let k = gg.summand(ai, aj, f).ok_or_else(|| shape("summand missing in Gr G"))?;
                legs.push(pipe(v, &[ac.hom_map(fx, y), &pre, &tgt_cone.injections[k]])?);
            }
            hom_maps.push(v.copair(gf.cone(i, j), &legs, &tgt_cone.apex)?);
        }
    }
    let k = VFunctor::new(gf.category.clone(), gg.category.clone(), obj_map, hom_maps)?;
    OpfiberedFunctor::new(of_f.clone(), of_g.clone(), k)
}

/// `Gr Γ` with component `inj_{1_b}(Γ_{b,x} ∘ ξ^G_{α_b x})` at `(x, b)`.
pub fn gr_on_modification<V: BaseCategory>(
    gamma: &Modification<V>,
    gr_f: &GrTotalCategory<V>,
    gr_g: &GrTotalCategory<V>,
    gr_alpha: &OpfiberedFunctor<V>,
    gr_beta: &OpfiberedFunctor<V>,
) -> Result<VNatTrans<V>> {
    let gp = &gamma.source.target;
    let mut components = Vec::with_capacity(gr_f.len());
    for (i, &(x, b)) in gr_f.objects.iter().enumerate() {
        let ax = gamma.source.components[b].map_object(x);
        let comp = gp.fibers[b].compose_elements(&gamma.at(b, x), &gp.xi_at(b, ax))?;
        let (si, ti) = (gr_alpha.k.map_object(i), gr_beta.k.map_object(i));
        components.push(gr_g.inject(si, ti, gp.base.identity(b), &comp)?.elem);
    }
    VNatTrans::new(gr_alpha.k.clone(), gr_beta.k.clone(), components)
}

/// `Gr F` with its projection, verified.
#[derive(Clone, Debug)]
pub struct GrBundle<V: BaseCategory> {
    pub pseudofunctor: Arc<Pseudofunctor<V>>,
    pub total: GrTotalCategory<V>,
    pub free: FreeCategory<V>,
    pub opfibration: Arc<Opfibration<V>>,
    pub report: crate::report::VerificationReport,
}

/// Builds `Gr F`, its projection and runs the opfibration check.
pub fn gr_bundle<V: BaseCategory>(pf: &Arc<Pseudofunctor<V>>) -> Result<GrBundle<V>> {
    let total = grothendieck(pf)?;
    let (free, mut of) = gr_projection(pf, &total)?;
    let report = crate::opfib::verify_opfibration(&mut of)?;
    Ok(GrBundle {
        pseudofunctor: pf.clone(),
        total,
        free,
        opfibration: Arc::new(of),
        report,
    })
}
