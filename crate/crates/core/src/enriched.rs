//! Finite V-categories, V-functors and V-natural transformations.
//!
//! Hom-objects are stored per ordered pair. Composition at `(c, d, e)` is a
//! base morphism `hom(d,e) ⊗ hom(c,d) → hom(c,e)`. Iterated tensors are
//! nested to the left, and the base associator is inserted wherever a law
//! needs the other bracketing.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{shape, Error, Result};
use crate::report::VerificationReport;
use crate::vbase::{combine_elements, elements, pipe, BaseCategory};

/// A V-category on finitely many labelled objects.
#[derive(Clone)]
pub struct VCategory<V: BaseCategory> {
    base: V,
    objects: Vec<String>,
    index: HashMap<String, usize>,
    homs: Vec<V::Obj>,
    identities: Vec<V::Mor>,
    compositions: Vec<V::Mor>,
}

impl<V: BaseCategory> PartialEq for VCategory<V> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.base == other.base
                && self.objects == other.objects
                && self.homs == other.homs
                && self.identities == other.identities
                && self.compositions == other.compositions)
    }
}

impl<V: BaseCategory> fmt::Debug for VCategory<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VCategory[{}]", self.objects.join(", "))
    }
}

impl<V: BaseCategory> VCategory<V> {
    /// Builds a V-category after checking that every structure map has the
    /// right domain and codomain. Laws are checked by [`check_vcategory`].
    ///
    /// `homs[c*n + d] = hom(c,d)` and
    /// `compositions[(c*n + d)*n + e] = ∘_{c,d,e}`.
    pub fn new(
        base: V,
        objects: Vec<String>,
        homs: Vec<V::Obj>,
        identities: Vec<V::Mor>,
        compositions: Vec<V::Mor>,
    ) -> Result<Self> {
        let n = objects.len();
        let mut index = HashMap::with_capacity(n);
        for (i, o) in objects.iter().enumerate() {
            if index.insert(o.clone(), i).is_some() {
                return Err(shape(format!("duplicate object `{o}`")));
            }
        }
        if homs.len() != n * n || identities.len() != n || compositions.len() != n * n * n {
            return Err(shape("V-category tables have the wrong size"));
        }
        let cat = VCategory {
            base,
            objects,
            index,
            homs,
            identities,
            compositions,
        };
        let unit = cat.base.unit();
        for c in 0..n {
            let id = &cat.identities[c];
            if cat.base.dom(id) != unit || &cat.base.cod(id) != cat.hom(c, c) {
                return Err(shape(format!("identity of `{}` has the wrong type", cat.objects[c])));
            }
        }
        for c in 0..n {
            for d in 0..n {
                for e in 0..n {
                    let m = cat.composition(c, d, e);
                    let dom = cat.base.tensor(cat.hom(d, e), cat.hom(c, d));
                    if cat.base.dom(m) != dom || &cat.base.cod(m) != cat.hom(c, e) {
                        return Err(shape(format!(
                            "composition at ({},{},{}) has the wrong type",
                            cat.objects[c], cat.objects[d], cat.objects[e]
                        )));
                    }
                }
            }
        }
        Ok(cat)
    }

    /// The unit V-category: one object `*` with `hom(*,*) = 1`.
    pub fn unit(base: V) -> Self {
        let u = base.unit();
        let id = base.identity(&u);
        let comp = base.left_unitor(&u);
        VCategory::new(base, vec!["*".into()], vec![u], vec![id], vec![comp]).expect("unit V-category is well formed")
    }

    pub fn base(&self) -> &V {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn label(&self, c: usize) -> &str {
        &self.objects[c]
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::NotFound(format!("object `{label}`")))
    }

    pub fn hom(&self, c: usize, d: usize) -> &V::Obj {
        &self.homs[c * self.len() + d]
    }

    pub fn identity(&self, c: usize) -> &V::Mor {
        &self.identities[c]
    }

    /// `∘_{c,d,e}: hom(d,e) ⊗ hom(c,d) → hom(c,e)`
    pub fn composition(&self, c: usize, d: usize, e: usize) -> &V::Mor {
        let n = self.len();
        &self.compositions[(c * n + d) * n + e]
    }

    /// Copy with one composition map replaced; the type must match.
    pub fn with_composition(&self, c: usize, d: usize, e: usize, m: V::Mor) -> Result<Self> {
        let mut out = self.clone();
        let n = self.len();
        out.compositions[(c * n + d) * n + e] = m;
        VCategory::new(out.base, out.objects, out.homs, out.identities, out.compositions)
    }

    /// Copy with one identity replaced; the type must match.
    pub fn with_identity(&self, c: usize, m: V::Mor) -> Result<Self> {
        let mut out = self.clone();
        out.identities[c] = m;
        VCategory::new(out.base, out.objects, out.homs, out.identities, out.compositions)
    }

    pub fn identity_element(&self, c: usize) -> UMor<V> {
        UMor {
            dom: c,
            cod: c,
            elem: self.identities[c].clone(),
        }
    }

    /// Elements `1 → hom(c,d)`, the underlying morphisms `c → d`.
    pub fn underlying_hom(&self, c: usize, d: usize) -> Result<Vec<UMor<V>>> {
        Ok(elements(&self.base, self.hom(c, d))?
            .into_iter()
            .map(|elem| UMor { dom: c, cod: d, elem })
            .collect())
    }

    /// Checks that `elem` is an element of `hom(dom, cod)`.
    pub fn element(&self, dom: usize, cod: usize, elem: V::Mor) -> Result<UMor<V>> {
        if dom >= self.len() || cod >= self.len() {
            return Err(Error::NotFound("object index out of range".into()));
        }
        if self.base.dom(&elem) != self.base.unit() || &self.base.cod(&elem) != self.hom(dom, cod) {
            return Err(shape(format!(
                "element is not a morphism `{}` -> `{}`",
                self.objects[dom], self.objects[cod]
            )));
        }
        Ok(UMor { dom, cod, elem })
    }

    /// `g ∘ f` of underlying morphisms.
    pub fn compose_elements(&self, g: &UMor<V>, f: &UMor<V>) -> Result<UMor<V>> {
        if f.cod != g.dom {
            return Err(shape("underlying morphisms are not composable"));
        }
        let elem = combine_elements(&self.base, self.composition(f.dom, f.cod, g.cod), &g.elem, &f.elem)?;
        Ok(UMor {
            dom: f.dom,
            cod: g.cod,
            elem,
        })
    }

    /// `- ∘ f: hom(c,d) ≅ hom(c,d) ⊗ 1 → hom(c,d) ⊗ hom(b,c) → hom(b,d)` for `f: b → c`.
    pub fn precompose(&self, f: &UMor<V>, d: usize) -> Result<V::Mor> {
        let (b, c) = (f.dom, f.cod);
        if d >= self.len() {
            return Err(Error::NotFound("object index out of range".into()));
        }
        let v = &self.base;
        let x = self.hom(c, d);
        let ru = v.right_unitor_inv(x);
        let tf = v.tensor_mor(&v.identity(x), &f.elem);
        Ok(pipe(v, &[&ru, &tf, self.composition(b, c, d)])?)
    }

    /// `f ∘ -: hom(a,b) ≅ 1 ⊗ hom(a,b) → hom(b,c) ⊗ hom(a,b) → hom(a,c)` for `f: b → c`.
    pub fn postcompose(&self, f: &UMor<V>, a: usize) -> Result<V::Mor> {
        let (b, c) = (f.dom, f.cod);
        if a >= self.len() {
            return Err(Error::NotFound("object index out of range".into()));
        }
        let v = &self.base;
        let x = self.hom(a, b);
        let lu = v.left_unitor_inv(x);
        let tf = v.tensor_mor(&f.elem, &v.identity(x));
        Ok(pipe(v, &[&lu, &tf, self.composition(a, b, c)])?)
    }

    /// Two-sided inverse of `f`, or a witness that pre- or post-composition
    /// by `f` fails to be invertible.
    pub fn is_iso_underlying(&self, f: &UMor<V>) -> std::result::Result<UMor<V>, String> {
        let v = &self.base;
        for a in 0..self.len() {
            let post = self.postcompose(f, a).map_err(|e| e.to_string())?;
            v.invert(&post)
                .map_err(|w| format!("postcomposition at `{}` is not invertible: {w}", self.objects[a]))?;
            let pre = self.precompose(f, a).map_err(|e| e.to_string())?;
            v.invert(&pre)
                .map_err(|w| format!("precomposition at `{}` is not invertible: {w}", self.objects[a]))?;
        }
        // f ∘ g = 1_c determines g through the inverse of f ∘ - at c
        let post = self.postcompose(f, f.cod).map_err(|e| e.to_string())?;
        let inv = v.invert(&post)?;
        let elem = v.compose(&inv, &self.identities[f.cod]).map_err(|e| e.to_string())?;
        let g = UMor {
            dom: f.cod,
            cod: f.dom,
            elem,
        };
        let gf = self.compose_elements(&g, f).map_err(|e| e.to_string())?;
        if gf.elem != self.identities[f.dom] {
            return Err("right inverse is not a left inverse".into());
        }
        Ok(g)
    }

    pub fn describe(&self, f: &UMor<V>) -> String {
        format!(
            "{}: {} -> {}",
            self.base.element_label(self.hom(f.dom, f.cod), &f.elem),
            self.objects[f.dom],
            self.objects[f.cod]
        )
    }
}

/// An underlying morphism `dom → cod`, i.e. an element `1 → hom(dom, cod)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UMor<V: BaseCategory> {
    pub dom: usize,
    pub cod: usize,
    pub elem: V::Mor,
}

fn diff<V: BaseCategory>(base: &V, a: &V::Mor, b: &V::Mor) -> std::result::Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(base.diff_witness(a, b))
    }
}

fn attempt(r: Result<std::result::Result<(), String>>) -> std::result::Result<(), String> {
    r.unwrap_or_else(|e| Err(e.to_string()))
}

/// Unit laws for every pair and associativity for every quadruple of objects.
pub fn check_vcategory<V: BaseCategory>(c: &VCategory<V>) -> VerificationReport {
    let mut report = VerificationReport::new();
    let v = &c.base;
    let n = c.len();
    let l = |i: usize| c.objects[i].as_str();
    for a in 0..n {
        for b in 0..n {
            let x = c.hom(a, b);
            let left = attempt((|| {
                let m = v.compose(c.composition(a, b, b), &v.tensor_mor(c.identity(b), &v.identity(x)))?;
                Ok(diff(v, &m, &v.left_unitor(x)))
            })());
            report.record(format!("unit_left({},{})", l(a), l(b)), "vcategory.unit_left", left);
            let right = attempt((|| {
                let m = v.compose(c.composition(a, a, b), &v.tensor_mor(&v.identity(x), c.identity(a)))?;
                Ok(diff(v, &m, &v.right_unitor(x)))
            })());
            report.record(format!("unit_right({},{})", l(a), l(b)), "vcategory.unit_right", right);
        }
    }
    for b in 0..n {
        for cc in 0..n {
            for d in 0..n {
                for e in 0..n {
                    let outcome = attempt((|| {
                        let (x, y, z) = (c.hom(d, e), c.hom(cc, d), c.hom(b, cc));
                        // ((x ⊗ y) ⊗ z): compose x,y first
                        let lhs = v.compose(
                            c.composition(b, cc, e),
                            &v.tensor_mor(c.composition(cc, d, e), &v.identity(z)),
                        )?;
                        let rhs = pipe(
                            v,
                            &[
                                &v.associator(x, y, z),
                                &v.tensor_mor(&v.identity(x), c.composition(b, cc, d)),
                                c.composition(b, d, e),
                            ],
                        )?;
                        Ok(diff(v, &lhs, &rhs))
                    })());
                    report.record(
                        format!("assoc({},{},{},{})", l(b), l(cc), l(d), l(e)),
                        "vcategory.associativity",
                        outcome,
                    );
                }
            }
        }
    }
    report
}

/// A V-functor between finite V-categories.
#[derive(Clone, PartialEq)]
pub struct VFunctor<V: BaseCategory> {
    pub source: Arc<VCategory<V>>,
    pub target: Arc<VCategory<V>>,
    pub obj_map: Vec<usize>,
    /// `hom_maps[c*n + d] = F_{c,d}`
    pub hom_maps: Vec<V::Mor>,
}

impl<V: BaseCategory> fmt::Debug for VFunctor<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VFunctor[")?;
        for (i, &o) in self.obj_map.iter().enumerate() {
            write!(f, "{}↦{} ", self.source.label(i), self.target.label(o))?;
        }
        write!(f, "]")
    }
}

impl<V: BaseCategory> VFunctor<V> {
    /// Builds a V-functor after type-checking every hom map.
    pub fn new(
        source: Arc<VCategory<V>>,
        target: Arc<VCategory<V>>,
        obj_map: Vec<usize>,
        hom_maps: Vec<V::Mor>,
    ) -> Result<Self> {
        let n = source.len();
        if obj_map.len() != n || hom_maps.len() != n * n {
            return Err(shape("V-functor tables have the wrong size"));
        }
        if obj_map.iter().any(|&o| o >= target.len()) {
            return Err(shape("V-functor object map out of range"));
        }
        let v = source.base();
        for c in 0..n {
            for d in 0..n {
                let m = &hom_maps[c * n + d];
                if &v.dom(m) != source.hom(c, d) || &v.cod(m) != target.hom(obj_map[c], obj_map[d]) {
                    return Err(shape(format!(
                        "hom map at ({},{}) has the wrong type",
                        source.label(c),
                        source.label(d)
                    )));
                }
            }
        }
        Ok(VFunctor {
            source,
            target,
            obj_map,
            hom_maps,
        })
    }

    pub fn identity(c: &Arc<VCategory<V>>) -> Self {
        let n = c.len();
        let v = c.base();
        let mut hom_maps = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                hom_maps.push(v.identity(c.hom(a, b)));
            }
        }
        VFunctor {
            source: c.clone(),
            target: c.clone(),
            obj_map: (0..n).collect(),
            hom_maps,
        }
    }

    /// `F_{c,d}`
    pub fn hom_map(&self, c: usize, d: usize) -> &V::Mor {
        &self.hom_maps[c * self.source.len() + d]
    }

    pub fn map_object(&self, c: usize) -> usize {
        self.obj_map[c]
    }

    /// Image of an underlying morphism.
    pub fn map_element(&self, f: &UMor<V>) -> Result<UMor<V>> {
        Ok(UMor {
            dom: self.obj_map[f.dom],
            cod: self.obj_map[f.cod],
            elem: self.source.base().compose(self.hom_map(f.dom, f.cod), &f.elem)?,
        })
    }

    /// `self ∘ first`
    pub fn after(&self, first: &VFunctor<V>) -> Result<Self> {
        if first.target != self.source {
            return Err(shape("V-functors are not composable"));
        }
        let v = self.source.base();
        let n = first.source.len();
        let mut hom_maps = Vec::with_capacity(n * n);
        for c in 0..n {
            for d in 0..n {
                hom_maps.push(v.compose(self.hom_map(first.obj_map[c], first.obj_map[d]), first.hom_map(c, d))?);
            }
        }
        Ok(VFunctor {
            source: first.source.clone(),
            target: self.target.clone(),
            obj_map: first.obj_map.iter().map(|&o| self.obj_map[o]).collect(),
            hom_maps,
        })
    }

    /// Copy with one hom map replaced; the type must match.
    pub fn with_hom_map(&self, c: usize, d: usize, m: V::Mor) -> Result<Self> {
        let mut maps = self.hom_maps.clone();
        maps[c * self.source.len() + d] = m;
        VFunctor::new(self.source.clone(), self.target.clone(), self.obj_map.clone(), maps)
    }

    /// Where two V-functors differ, if anywhere.
    pub fn diff(&self, other: &VFunctor<V>) -> std::result::Result<(), String> {
        if self.source != other.source || self.target != other.target {
            return Err("V-functors are not parallel".into());
        }
        let n = self.source.len();
        for c in 0..n {
            if self.obj_map[c] != other.obj_map[c] {
                return Err(format!(
                    "object `{}`: `{}` vs `{}`",
                    self.source.label(c),
                    self.target.label(self.obj_map[c]),
                    self.target.label(other.obj_map[c])
                ));
            }
        }
        let v = self.source.base();
        for c in 0..n {
            for d in 0..n {
                let (a, b) = (self.hom_map(c, d), other.hom_map(c, d));
                if a != b {
                    return Err(format!(
                        "hom map ({},{}) {}",
                        self.source.label(c),
                        self.source.label(d),
                        v.diff_witness(a, b)
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Identity and composition diagrams for every object pair/triple.
pub fn check_vfunctor<V: BaseCategory>(f: &VFunctor<V>) -> VerificationReport {
    let mut report = VerificationReport::new();
    let (s, t) = (&f.source, &f.target);
    let v = s.base();
    let n = s.len();
    for c in 0..n {
        let outcome = attempt((|| {
            let m = v.compose(f.hom_map(c, c), s.identity(c))?;
            Ok(diff(v, &m, t.identity(f.obj_map[c])))
        })());
        report.record(format!("identity({})", s.label(c)), "vfunctor.identity", outcome);
    }
    for c in 0..n {
        for d in 0..n {
            for e in 0..n {
                let outcome = attempt((|| {
                    let lhs = v.compose(f.hom_map(c, e), s.composition(c, d, e))?;
                    let (fc, fd, fe) = (f.obj_map[c], f.obj_map[d], f.obj_map[e]);
                    let rhs = v.compose(
                        t.composition(fc, fd, fe),
                        &v.tensor_mor(f.hom_map(d, e), f.hom_map(c, d)),
                    )?;
                    Ok(diff(v, &lhs, &rhs))
                })());
                report.record(
                    format!("composition({},{},{})", s.label(c), s.label(d), s.label(e)),
                    "vfunctor.composition",
                    outcome,
                );
            }
        }
    }
    report
}

/// A V-natural transformation between parallel V-functors.
#[derive(Clone, Debug, PartialEq)]
pub struct VNatTrans<V: BaseCategory> {
    pub source: VFunctor<V>,
    pub target: VFunctor<V>,
    /// `components[c]: 1 → D(Fc, Gc)`
    pub components: Vec<V::Mor>,
}

impl<V: BaseCategory> VNatTrans<V> {
    pub fn new(source: VFunctor<V>, target: VFunctor<V>, components: Vec<V::Mor>) -> Result<Self> {
        if source.source != target.source || source.target != target.target {
            return Err(shape("V-natural transformation between non-parallel functors"));
        }
        if components.len() != source.source.len() {
            return Err(shape("one component per object required"));
        }
        let d = &source.target;
        for (c, m) in components.iter().enumerate() {
            d.element(source.obj_map[c], target.obj_map[c], m.clone())?;
        }
        Ok(VNatTrans {
            source,
            target,
            components,
        })
    }

    pub fn identity(f: &VFunctor<V>) -> Self {
        let components = f.obj_map.iter().map(|&o| f.target.identity(o).clone()).collect();
        VNatTrans {
            source: f.clone(),
            target: f.clone(),
            components,
        }
    }

    pub fn component(&self, c: usize) -> UMor<V> {
        UMor {
            dom: self.source.obj_map[c],
            cod: self.target.obj_map[c],
            elem: self.components[c].clone(),
        }
    }

    pub fn diff(&self, other: &VNatTrans<V>) -> std::result::Result<(), String> {
        self.source
            .diff(&other.source)
            .map_err(|w| format!("sources differ: {w}"))?;
        self.target
            .diff(&other.target)
            .map_err(|w| format!("targets differ: {w}"))?;
        let v = self.source.source.base();
        for (c, (a, b)) in self.components.iter().zip(&other.components).enumerate() {
            if a != b {
                return Err(format!(
                    "component at `{}` {}",
                    self.source.source.label(c),
                    v.diff_witness(a, b)
                ));
            }
        }
        Ok(())
    }
}

/// `(α_d ∘ -) ∘ F_{c,d} = (- ∘ α_c) ∘ G_{c,d}` for every pair.
pub fn check_vnat<V: BaseCategory>(alpha: &VNatTrans<V>) -> VerificationReport {
    let mut report = VerificationReport::new();
    let (f, g) = (&alpha.source, &alpha.target);
    let (s, t) = (&f.source, &f.target);
    let v = s.base();
    for c in 0..s.len() {
        for d in 0..s.len() {
            let outcome = attempt((|| {
                let lhs = v.compose(&t.postcompose(&alpha.component(d), f.obj_map[c])?, f.hom_map(c, d))?;
                let rhs = v.compose(&t.precompose(&alpha.component(c), g.obj_map[d])?, g.hom_map(c, d))?;
                Ok(diff(v, &lhs, &rhs))
            })());
            report.record(
                format!("naturality({},{})", s.label(c), s.label(d)),
                "vnat.naturality",
                outcome,
            );
        }
    }
    report
}

/// `K α H`, with components `K ∘ α_{Hb}`.
pub fn whisker<V: BaseCategory>(k: &VFunctor<V>, alpha: &VNatTrans<V>, h: &VFunctor<V>) -> Result<VNatTrans<V>> {
    if h.target != alpha.source.source || alpha.source.target != k.source {
        return Err(shape("whiskering of non-composable data"));
    }
    let v = k.source.base();
    let components = h
        .obj_map
        .iter()
        .map(|&hb| {
            let a = alpha.component(hb);
            v.compose(k.hom_map(a.dom, a.cod), &a.elem).map_err(Error::from)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VNatTrans {
        source: k.after(&alpha.source.after(h)?)?,
        target: k.after(&alpha.target.after(h)?)?,
        components,
    })
}

/// `β · α`, with components `∘ (β_c ⊗ α_c)` after `1 ≅ 1 ⊗ 1`.
pub fn vcomp<V: BaseCategory>(beta: &VNatTrans<V>, alpha: &VNatTrans<V>) -> Result<VNatTrans<V>> {
    if alpha.target != beta.source {
        return Err(shape("vertical composite of non-composable transformations"));
    }
    let d = &alpha.source.target;
    let components = (0..alpha.components.len())
        .map(|c| Ok(d.compose_elements(&beta.component(c), &alpha.component(c))?.elem))
        .collect::<Result<Vec<_>>>()?;
    Ok(VNatTrans {
        source: alpha.source.clone(),
        target: beta.target.clone(),
        components,
    })
}

/// `β ∘ α = (β G) · (J α)` for `α: F ⇒ G` and `β: J ⇒ K`.
pub fn hcomp<V: BaseCategory>(beta: &VNatTrans<V>, alpha: &VNatTrans<V>) -> Result<VNatTrans<V>> {
    let id_out = VFunctor::identity(&beta.source.target);
    let beta_g = whisker(&id_out, beta, &alpha.target)?;
    let j_alpha = whisker(&beta.source, alpha, &VFunctor::identity(&alpha.source.source))?;
    vcomp(&beta_g, &j_alpha)
}

/// The other defining composite `(K α) · (β F)`.
pub fn hcomp_alt<V: BaseCategory>(beta: &VNatTrans<V>, alpha: &VNatTrans<V>) -> Result<VNatTrans<V>> {
    let id_out = VFunctor::identity(&beta.source.target);
    let beta_f = whisker(&id_out, beta, &alpha.source)?;
    let k_alpha = whisker(&beta.target, alpha, &VFunctor::identity(&alpha.source.source))?;
    vcomp(&k_alpha, &beta_f)
}
