//! Free V-categories on ordinary categories, underlying categories of
//! V-categories, and the unit and counit relating them.

use std::collections::HashMap;
use std::sync::Arc;

use crate::enriched::{UMor, VCategory, VFunctor};
use crate::error::{shape, Error, Result};
use crate::vbase::{distributor, elements, Arrow, BaseCategory, CoproductCone, FinFunctor, FiniteCategory};

/// Ordinary (Set-enriched) finite categories.
pub type OrdinaryCategory = FiniteCategory;

/// The free V-category `B_V` with `B_V(b,c) = B(b,c) · 1`, together with the
/// coproduct cones that present its homs.
#[derive(Clone, Debug)]
pub struct FreeCategory<V: BaseCategory> {
    pub ordinary: Arc<OrdinaryCategory>,
    pub vcat: Arc<VCategory<V>>,
    /// Per pair `(b,c)`; summand `k` belongs to the arrow `hom_arrows[b*n+c][k]`.
    cones: Vec<CoproductCone<V>>,
    hom_arrows: Vec<Vec<usize>>,
}

impl<V: BaseCategory> PartialEq for FreeCategory<V> {
    fn eq(&self, other: &Self) -> bool {
        self.ordinary == other.ordinary && self.vcat == other.vcat
    }
}

/// Builds `B_V`. Composition is the copairing of `inj_{g∘f}` over the
/// summands of `hom(c,d) ⊗ hom(b,c)`, reached through the distributor.
pub fn free_vcategory<V: BaseCategory>(b: &Arc<OrdinaryCategory>, base: &V) -> Result<FreeCategory<V>> {
    let n = b.num_objects();
    let mut cones = Vec::with_capacity(n * n);
    let mut hom_arrows = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let arrows = b.hom(x, y);
            let names: Vec<String> = arrows.iter().map(|&f| b.arrow_name(f).to_string()).collect();
            cones.push(base.copower_unit(&names));
            hom_arrows.push(arrows);
        }
    }
    let slot = |arrows: &Vec<usize>, f: usize| arrows.iter().position(|&a| a == f).expect("composite lies in its hom");
    let homs: Vec<V::Obj> = cones.iter().map(|c| c.apex.clone()).collect();
    let identities = (0..n)
        .map(|x| {
            let k = slot(&hom_arrows[x * n + x], b.identity(x));
            cones[x * n + x].injections[k].clone()
        })
        .collect();
    let mut compositions = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (g_cone, f_cone) = (&cones[y * n + z], &cones[x * n + y]);
                let (pairs, iso) = distributor(base, g_cone, f_cone)?;
                let target = &cones[x * n + z];
                let mut legs = Vec::with_capacity(pairs.summands.len());
                for &g in &hom_arrows[y * n + z] {
                    for &f in &hom_arrows[x * n + y] {
                        let gf = b
                            .compose(g, f)
                            .ok_or_else(|| shape("ordinary category is not closed under composition"))?;
                        let inj = &target.injections[slot(&hom_arrows[x * n + z], gf)];
                        let summand = &pairs.summands[legs.len()];
                        legs.push(base.compose(inj, &base.to_unit(summand))?);
                    }
                }
                let out = base.copair(&pairs, &legs, &target.apex)?;
                compositions.push(base.compose(&out, &iso)?);
            }
        }
    }
    let vcat = VCategory::new(base.clone(), b.objects().to_vec(), homs, identities, compositions)?;
    Ok(FreeCategory {
        ordinary: b.clone(),
        vcat: Arc::new(vcat),
        cones,
        hom_arrows,
    })
}

impl<V: BaseCategory> FreeCategory<V> {
    pub fn base(&self) -> &V {
        self.vcat.base()
    }

    pub fn hom_cone(&self, b: usize, c: usize) -> &CoproductCone<V> {
        &self.cones[b * self.ordinary.num_objects() + c]
    }

    /// Arrows of `B(b,c)` in summand order.
    pub fn hom_arrows(&self, b: usize, c: usize) -> &[usize] {
        &self.hom_arrows[b * self.ordinary.num_objects() + c]
    }

    fn slot(&self, f: usize) -> (usize, usize, usize) {
        let a = self.ordinary.arrow(f);
        let k = self
            .hom_arrows(a.dom, a.cod)
            .iter()
            .position(|&x| x == f)
            .expect("arrow lies in its hom");
        (a.dom, a.cod, k)
    }

    /// The injection `1 → B_V(b,c)` at `f`.
    pub fn injection(&self, f: usize) -> &V::Mor {
        let (b, c, k) = self.slot(f);
        &self.hom_cone(b, c).injections[k]
    }

    /// `f` as an underlying morphism of `B_V`.
    pub fn arrow_element(&self, f: usize) -> UMor<V> {
        let a = self.ordinary.arrow(f);
        UMor {
            dom: a.dom,
            cod: a.cod,
            elem: self.injection(f).clone(),
        }
    }

    /// The arrow whose injection is `m`, if any.
    pub fn arrow_of(&self, m: &UMor<V>) -> Option<usize> {
        let cone = self.hom_cone(m.dom, m.cod);
        cone.injections
            .iter()
            .position(|inj| inj == &m.elem)
            .map(|k| self.hom_arrows(m.dom, m.cod)[k])
    }

    /// Summand map `X → B_V(b,c)` sending everything to the copy at `f`.
    pub fn constant_at(&self, x: &V::Obj, f: usize) -> Result<V::Mor> {
        let base = self.base();
        Ok(base.compose(self.injection(f), &base.to_unit(x))?)
    }
}

/// Checks that a V-category is (literally) a free one: every hom is presented
/// by its copower cone and the structure maps agree.
pub fn recognize_free<V: BaseCategory>(
    v: &Arc<VCategory<V>>,
    ordinary: &Arc<OrdinaryCategory>,
) -> Result<FreeCategory<V>> {
    let free = free_vcategory(ordinary, v.base())?;
    if free.vcat.as_ref() != v.as_ref() {
        return Err(Error::BaseNotFree(
            "V-category differs from the free V-category on the given category".into(),
        ));
    }
    Ok(FreeCategory {
        vcat: v.clone(),
        ..free
    })
}

/// The underlying ordinary category together with the element behind each arrow.
#[derive(Clone, Debug)]
pub struct Underlying<V: BaseCategory> {
    pub category: Arc<OrdinaryCategory>,
    /// `elements[a]` is the element `1 → hom(dom a, cod a)` for arrow `a`.
    pub elements: Vec<V::Mor>,
}

impl<V: BaseCategory> Underlying<V> {
    pub fn arrow_of(&self, m: &UMor<V>) -> Option<usize> {
        self.category
            .hom(m.dom, m.cod)
            .into_iter()
            .find(|&a| self.elements[a] == m.elem)
    }
}

/// `C_0`: arrows are the elements of the hom-objects, composed in `C`.
/// Arrow names are element labels, made unique with a `#k` suffix.
pub fn underlying_category<V: BaseCategory>(c: &VCategory<V>) -> Result<Underlying<V>> {
    let base = c.base();
    let n = c.len();
    let mut arrows = Vec::new();
    let mut elems = Vec::new();
    let mut by_pair: Vec<Vec<usize>> = Vec::with_capacity(n * n);
    let mut used: HashMap<String, usize> = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            let mut here = Vec::new();
            for e in elements(base, c.hom(x, y))? {
                let label = base.element_label(c.hom(x, y), &e);
                let count = used.entry(label.clone()).or_insert(0);
                let name = if *count == 0 {
                    label.clone()
                } else {
                    format!("{label}#{count}")
                };
                *count += 1;
                here.push(arrows.len());
                arrows.push(Arrow { name, dom: x, cod: y });
                elems.push(e);
            }
            by_pair.push(here);
        }
    }
    let find = |x: usize, y: usize, e: &V::Mor| -> Result<usize> {
        by_pair[x * n + y]
            .iter()
            .copied()
            .find(|&a| &elems[a] == e)
            .ok_or_else(|| shape("composite is not an element"))
    };
    let identities = (0..n).map(|x| find(x, x, c.identity(x))).collect::<Result<Vec<_>>>()?;
    let mut composites = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for &f in &by_pair[x * n + y] {
                    for &g in &by_pair[y * n + z] {
                        let gf = crate::vbase::combine_elements(base, c.composition(x, y, z), &elems[g], &elems[f])?;
                        composites.push((g, f, find(x, z, &gf)?));
                    }
                }
            }
        }
    }
    let category = FiniteCategory::new(c.objects().to_vec(), arrows, identities, &composites)?;
    Ok(Underlying {
        category: Arc::new(category),
        elements: elems,
    })
}

/// `ι_B: B → (B_V)_0` with a verdict on whether it is an isomorphism.
#[derive(Clone, Debug)]
pub struct Iota {
    pub functor: FinFunctor,
    pub verdict: std::result::Result<(), String>,
}

pub fn unit_iota<V: BaseCategory>(b: &Arc<OrdinaryCategory>, base: &V) -> Result<Iota> {
    let free = free_vcategory(b, base)?;
    let under = underlying_category(&free.vcat)?;
    iota_from(&free, &under)
}

/// `ι_B` for an already constructed free category and its underlying category.
pub fn iota_from<V: BaseCategory>(free: &FreeCategory<V>, under: &Underlying<V>) -> Result<Iota> {
    let b = &free.ordinary;
    let arrows = (0..b.num_arrows())
        .map(|f| {
            under
                .arrow_of(&free.arrow_element(f))
                .ok_or_else(|| shape(format!("injection at `{}` is not an element", b.arrow_name(f))))
        })
        .collect::<Result<Vec<_>>>()?;
    let functor = FinFunctor {
        dom: b.clone(),
        cod: under.category.clone(),
        objects: (0..b.num_objects()).collect(),
        arrows,
    };
    let verdict = match functor.validate() {
        Err(e) => Err(e.to_string()),
        Ok(()) => {
            let mut verdict = Ok(());
            for x in 0..b.num_objects() {
                for y in 0..b.num_objects() {
                    let (src, tgt) = (b.hom(x, y).len(), under.category.hom(x, y).len());
                    if src != tgt {
                        verdict = Err(format!(
                            "hom ({}, {}) has {tgt} underlying morphisms but {src} arrows",
                            b.object_label(x),
                            b.object_label(y)
                        ));
                        break;
                    }
                }
                if verdict.is_err() {
                    break;
                }
            }
            if verdict.is_ok() && !functor.is_isomorphism() {
                verdict = Err("ι is not bijective on arrows".into());
            }
            verdict
        }
    };
    Ok(Iota { functor, verdict })
}

/// `σ_C: (C_0)_V → C`, identity on objects and the copairing of the elements
/// themselves on every hom.
pub fn counit_sigma<V: BaseCategory>(c: &Arc<VCategory<V>>) -> Result<(FreeCategory<V>, Underlying<V>, VFunctor<V>)> {
    let under = underlying_category(c)?;
    let free = free_vcategory(&under.category, c.base())?;
    let base = c.base();
    let n = c.len();
    let mut hom_maps = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let legs: Vec<V::Mor> = free
                .hom_arrows(x, y)
                .iter()
                .map(|&a| under.elements[a].clone())
                .collect();
            hom_maps.push(base.copair(free.hom_cone(x, y), &legs, c.hom(x, y))?);
        }
    }
    let sigma = VFunctor::new(free.vcat.clone(), c.clone(), (0..n).collect(), hom_maps)?;
    Ok((free, under, sigma))
}

/// `G_V: A_V → B_V` for an ordinary functor `G: A → B`.
pub fn free_functor<V: BaseCategory>(
    g: &FinFunctor,
    src: &FreeCategory<V>,
    tgt: &FreeCategory<V>,
) -> Result<VFunctor<V>> {
    if g.dom != src.ordinary || g.cod != tgt.ordinary {
        return Err(shape("functor does not match the free categories"));
    }
    let base = src.base();
    let n = src.ordinary.num_objects();
    let mut hom_maps = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let codom = tgt.vcat.hom(g.objects[x], g.objects[y]);
            let legs: Vec<V::Mor> = src
                .hom_arrows(x, y)
                .iter()
                .map(|&f| tgt.injection(g.arrows[f]).clone())
                .collect();
            hom_maps.push(base.copair(src.hom_cone(x, y), &legs, codom)?);
        }
    }
    VFunctor::new(src.vcat.clone(), tgt.vcat.clone(), g.objects.clone(), hom_maps)
}

/// `F_0` on underlying categories.
pub fn underlying_functor<V: BaseCategory>(
    f: &VFunctor<V>,
    src: &Underlying<V>,
    tgt: &Underlying<V>,
) -> Result<FinFunctor> {
    let arrows = (0..src.category.num_arrows())
        .map(|a| {
            let arr = src.category.arrow(a);
            let m = UMor {
                dom: arr.dom,
                cod: arr.cod,
                elem: src.elements[a].clone(),
            };
            let img = f.map_element(&m)?;
            tgt.arrow_of(&img)
                .ok_or_else(|| shape("image is not an underlying morphism"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FinFunctor::new(
        src.category.clone(),
        tgt.category.clone(),
        f.obj_map.clone(),
        arrows,
    )?)
}
