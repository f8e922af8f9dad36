//! Resolution of parsed sections into typed cells. Sections are processed
//! kind by kind in dependency order, so references may point forward in the
//! file but never across a cycle.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::codec::{decode_category, FixtureBase};
use super::document::{Document, NamedOpfibration};
use super::syntax::{FResult, FixtureError, Section, Syntax, Term};
use crate::enriched::{UMor, VCategory, VFunctor, VNatTrans};
use crate::opfib::{Lift, Opfibration};
use crate::pseudo::{Modification, Pseudofunctor, Pseudonatural};
use crate::vbase::FiniteCategory;

pub const KINDS: [&str; 8] = [
    "category",
    "vcategory",
    "vfunctor",
    "vnat",
    "pseudofunctor",
    "transformation",
    "modification",
    "opfibration",
];

fn at<T>(s: &Section, r: crate::error::Result<T>) -> FResult<T> {
    r.map_err(|e| FixtureError::new(s.pos, format!("[{} {}]: {e}", s.kind, s.name)))
}

fn vobject<V: FixtureBase>(c: &VCategory<V>, t: &Term) -> FResult<usize> {
    let l = t.as_atom()?;
    c.objects()
        .iter()
        .position(|x| x == l)
        .ok_or_else(|| FixtureError::new(t.pos, format!("unknown object `{l}`")))
}

fn cobject(c: &FiniteCategory, t: &Term) -> FResult<usize> {
    let l = t.as_atom()?;
    c.object_position(l)
        .ok_or_else(|| FixtureError::new(t.pos, format!("unknown object `{l}` of the base")))
}

fn carrow(c: &FiniteCategory, t: &Term) -> FResult<usize> {
    let l = t.as_atom()?;
    c.arrow_position(l)
        .ok_or_else(|| FixtureError::new(t.pos, format!("unknown arrow `{l}` of the base")))
}

fn name_ref<'a, T>(t: &Term, kind: &str, get: impl Fn(&str) -> Option<&'a T>) -> FResult<&'a T> {
    let n = t.as_atom()?;
    get(n).ok_or_else(|| FixtureError::new(t.pos, format!("unknown {kind} `{n}`")))
}

/// Collects a `key -> value` table whose keys are lists decoded by `key`
/// into a map, rejecting duplicates.
fn keyed<'t, K: Ord>(t: &'t Term, key: impl Fn(&'t Term) -> FResult<K>) -> FResult<BTreeMap<K, &'t Term>> {
    let mut out = BTreeMap::new();
    for (k, v) in t.pairs()? {
        if out.insert(key(k)?, v).is_some() {
            return k.err("duplicate entry");
        }
    }
    Ok(out)
}

fn take<'t, K: Ord + std::fmt::Debug>(
    s: &Section,
    table: &mut BTreeMap<K, &'t Term>,
    k: K,
    what: &str,
) -> FResult<&'t Term> {
    table
        .remove(&k)
        .ok_or_else(|| FixtureError::new(s.pos, format!("[{} {}]: missing {what} entry", s.kind, s.name)))
}

fn no_extra<K>(s: &Section, table: &BTreeMap<K, &Term>, what: &str) -> FResult<()> {
    match table.values().next() {
        Some(t) => t.err(format!("[{} {}]: unexpected {what} entry", s.kind, s.name)),
        None => Ok(()),
    }
}

fn list_key<'t, const N: usize>(t: &'t Term) -> FResult<[&'t Term; N]> {
    let items = t.as_list()?;
    if items.len() != N {
        return t.err(format!("expected a key of {N} components"));
    }
    Ok(std::array::from_fn(|i| &items[i]))
}

impl<V: FixtureBase> Document<V> {
    /// Resolves `syntax` against the base instance `base`.
    pub fn from_syntax(base: V, syntax: &Syntax) -> FResult<Self> {
        let mut doc = Document::new(base);
        for s in &syntax.sections {
            if !KINDS.contains(&s.kind.as_str()) {
                return Err(FixtureError::new(s.pos, format!("unknown section kind `{}`", s.kind)));
            }
        }
        for kind in KINDS {
            for s in syntax.sections.iter().filter(|s| s.kind == kind) {
                doc.read_section(s)?;
            }
        }
        Ok(doc)
    }

    fn read_section(&mut self, s: &Section) -> FResult<()> {
        let name = s.name.clone();
        match s.kind.as_str() {
            "category" => {
                let c = Arc::new(decode_category(s)?);
                self.registry.categories.push((name, c));
            }
            "vcategory" => {
                let c = Arc::new(self.read_vcategory(s)?);
                self.vcategories.push((name, c));
            }
            "vfunctor" => {
                let f = Arc::new(self.read_vfunctor(s)?);
                self.vfunctors.push((name, f));
            }
            "vnat" => {
                let a = Arc::new(self.read_vnat(s)?);
                self.vnats.push((name, a));
            }
            "pseudofunctor" => {
                let p = Arc::new(self.read_pseudofunctor(s)?);
                self.pseudofunctors.push((name, p));
            }
            "transformation" => {
                let t = Arc::new(self.read_transformation(s)?);
                self.transformations.push((name, t));
            }
            "modification" => {
                let m = Arc::new(self.read_modification(s)?);
                self.modifications.push((name, m));
            }
            _ => {
                let o = self.read_opfibration(s)?;
                self.opfibrations.push(o);
            }
        }
        Ok(())
    }

    fn read_vcategory(&self, s: &Section) -> FResult<VCategory<V>> {
        let v = &self.base;
        let reg = &self.registry;
        let labels: Vec<String> = s
            .require("objects")?
            .as_list()?
            .iter()
            .map(|t| t.as_atom().map(str::to_string))
            .collect::<FResult<_>>()?;
        let n = labels.len();
        let idx = |t: &Term| -> FResult<usize> {
            let l = t.as_atom()?;
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| FixtureError::new(t.pos, format!("unknown object `{l}`")))
        };
        let mut hom_t = keyed(s.require("hom")?, |k| {
            let [a, b] = list_key::<2>(k)?;
            Ok((idx(a)?, idx(b)?))
        })?;
        let mut homs = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let t = take(s, &mut hom_t, (x, y), "hom")?;
                homs.push(v.decode_obj(t, reg)?);
            }
        }
        no_extra(s, &hom_t, "hom")?;
        let mut id_t = keyed(s.require("identity")?, idx)?;
        let mut identities = Vec::with_capacity(n);
        for x in 0..n {
            let t = take(s, &mut id_t, x, "identity")?;
            identities.push(v.decode_mor(t, &v.unit(), &homs[x * n + x], reg)?);
        }
        no_extra(s, &id_t, "identity")?;
        let mut comp_t = keyed(s.require("composition")?, |k| {
            let [a, b, c] = list_key::<3>(k)?;
            Ok((idx(a)?, idx(b)?, idx(c)?))
        })?;
        let mut comps = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t = take(s, &mut comp_t, (x, y, z), "composition")?;
                    let dom = v.tensor(&homs[y * n + z], &homs[x * n + y]);
                    comps.push(v.decode_mor(t, &dom, &homs[x * n + z], reg)?);
                }
            }
        }
        no_extra(s, &comp_t, "composition")?;
        at(s, VCategory::new(v.clone(), labels, homs, identities, comps))
    }

    fn read_vfunctor(&self, s: &Section) -> FResult<VFunctor<V>> {
        let v = &self.base;
        let src = name_ref(s.require("source")?, "vcategory", |n| self.vcategory(n))?.clone();
        let tgt = name_ref(s.require("target")?, "vcategory", |n| self.vcategory(n))?.clone();
        let n = src.len();
        let mut obj_t = keyed(s.require("objects")?, |k| vobject(&src, k))?;
        let mut obj_map = Vec::with_capacity(n);
        for x in 0..n {
            obj_map.push(vobject(&tgt, take(s, &mut obj_t, x, "object")?)?);
        }
        no_extra(s, &obj_t, "object")?;
        let mut hom_t = keyed(s.require("hom")?, |k| {
            let [a, b] = list_key::<2>(k)?;
            Ok((vobject(&src, a)?, vobject(&src, b)?))
        })?;
        let mut homs = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let t = take(s, &mut hom_t, (x, y), "hom")?;
                homs.push(v.decode_mor(t, src.hom(x, y), tgt.hom(obj_map[x], obj_map[y]), &self.registry)?);
            }
        }
        no_extra(s, &hom_t, "hom")?;
        at(s, VFunctor::new(src, tgt, obj_map, homs))
    }

    fn read_vnat(&self, s: &Section) -> FResult<VNatTrans<V>> {
        let v = &self.base;
        let f = name_ref(s.require("source")?, "vfunctor", |n| self.vfunctor(n))?
            .as_ref()
            .clone();
        let g = name_ref(s.require("target")?, "vfunctor", |n| self.vfunctor(n))?
            .as_ref()
            .clone();
        let src = f.source.clone();
        let mut t = keyed(s.require("components")?, |k| vobject(&src, k))?;
        let mut comps = Vec::with_capacity(src.len());
        for x in 0..src.len() {
            let term = take(s, &mut t, x, "component")?;
            let cod = f.target.hom(f.map_object(x), g.map_object(x));
            comps.push(v.decode_mor(term, &v.unit(), cod, &self.registry)?);
        }
        no_extra(s, &t, "component")?;
        at(s, VNatTrans::new(f, g, comps))
    }

    /// An element of `hom(c, d)` in `cat`.
    fn element(&self, cat: &VCategory<V>, c: usize, d: usize, t: &Term) -> FResult<V::Mor> {
        self.base
            .decode_mor(t, &self.base.unit(), cat.hom(c, d), &self.registry)
    }

    fn read_pseudofunctor(&self, s: &Section) -> FResult<Pseudofunctor<V>> {
        let base = name_ref(s.require("base")?, "category", |n| self.category(n))?.clone();
        let mut fib_t = keyed(s.require("fibers")?, |k| cobject(&base, k))?;
        let mut fibers = Vec::with_capacity(base.num_objects());
        for b in 0..base.num_objects() {
            let t = take(s, &mut fib_t, b, "fiber")?;
            fibers.push(name_ref(t, "vcategory", |n| self.vcategory(n))?.clone());
        }
        no_extra(s, &fib_t, "fiber")?;
        let mut fun_t = keyed(s.require("functors")?, |k| carrow(&base, k))?;
        let mut functors = Vec::with_capacity(base.num_arrows());
        for f in 0..base.num_arrows() {
            let t = take(s, &mut fun_t, f, "functor")?;
            functors.push(name_ref(t, "vfunctor", |n| self.vfunctor(n))?.as_ref().clone());
        }
        no_extra(s, &fun_t, "functor")?;
        let mut xi_t = keyed(s.require("xi")?, |k| {
            let [b, x] = list_key::<2>(k)?;
            let b = cobject(&base, b)?;
            Ok((b, vobject(&fibers[b], x)?))
        })?;
        let mut xi = Vec::with_capacity(base.num_objects());
        for b in 0..base.num_objects() {
            let fb = &fibers[b];
            let g = &functors[base.identity(b)];
            let mut row = Vec::with_capacity(fb.len());
            for x in 0..fb.len() {
                let t = take(s, &mut xi_t, (b, x), "xi")?;
                row.push(self.element(fb, g.map_object(x), x, t)?);
            }
            xi.push(row);
        }
        no_extra(s, &xi_t, "xi")?;
        let mut theta_t = keyed(s.require("theta")?, |k| {
            let [f, g, x] = list_key::<3>(k)?;
            let f = carrow(&base, f)?;
            Ok((f, carrow(&base, g)?, vobject(&fibers[base.arrow(f).dom], x)?))
        })?;
        let mut theta = BTreeMap::new();
        for (f, g) in base.composable_pairs() {
            let gf = base.compose(g, f).expect("composable");
            let src = &fibers[base.arrow(f).dom];
            let d = &fibers[base.arrow(g).cod];
            let mut row = Vec::with_capacity(src.len());
            for x in 0..src.len() {
                let t = take(s, &mut theta_t, (f, g, x), "theta")?;
                let c = functors[gf].map_object(x);
                let e = functors[g].map_object(functors[f].map_object(x));
                row.push(self.element(d, c, e, t)?);
            }
            theta.insert((f, g), row);
        }
        no_extra(s, &theta_t, "theta")?;
        at(s, Pseudofunctor::new(base, fibers, functors, xi, theta))
    }

    fn read_transformation(&self, s: &Section) -> FResult<Pseudonatural<V>> {
        let src = name_ref(s.require("source")?, "pseudofunctor", |n| self.pseudofunctor(n))?.clone();
        let tgt = name_ref(s.require("target")?, "pseudofunctor", |n| self.pseudofunctor(n))?.clone();
        let base = src.base.clone();
        let mut comp_t = keyed(s.require("components")?, |k| cobject(&base, k))?;
        let mut comps = Vec::with_capacity(base.num_objects());
        for b in 0..base.num_objects() {
            let t = take(s, &mut comp_t, b, "component")?;
            comps.push(name_ref(t, "vfunctor", |n| self.vfunctor(n))?.as_ref().clone());
        }
        no_extra(s, &comp_t, "component")?;
        let mut sq_t = keyed(s.require("squares")?, |k| {
            let [f, x] = list_key::<2>(k)?;
            let f = carrow(&base, f)?;
            Ok((f, vobject(&src.fibers[base.arrow(f).dom], x)?))
        })?;
        let mut squares = Vec::with_capacity(base.num_arrows());
        for f in 0..base.num_arrows() {
            let a = base.arrow(f);
            let mut row = Vec::new();
            for x in 0..src.fibers[a.dom].len() {
                let t = take(s, &mut sq_t, (f, x), "square")?;
                let from = tgt.functors[f].map_object(comps[a.dom].map_object(x));
                let to = comps[a.cod].map_object(src.functors[f].map_object(x));
                row.push(self.element(&tgt.fibers[a.cod], from, to, t)?);
            }
            squares.push(row);
        }
        no_extra(s, &sq_t, "square")?;
        at(s, Pseudonatural::new(src, tgt, comps, squares))
    }

    fn read_modification(&self, s: &Section) -> FResult<Modification<V>> {
        let alpha = name_ref(s.require("source")?, "transformation", |n| self.transformation(n))?.clone();
        let beta = name_ref(s.require("target")?, "transformation", |n| self.transformation(n))?.clone();
        let p = alpha.source.clone();
        let base = p.base.clone();
        let mut t = keyed(s.require("components")?, |k| {
            let [b, x] = list_key::<2>(k)?;
            let b = cobject(&base, b)?;
            Ok((b, vobject(&p.fibers[b], x)?))
        })?;
        let mut comps = Vec::with_capacity(base.num_objects());
        for b in 0..base.num_objects() {
            let mut row = Vec::new();
            for x in 0..p.fibers[b].len() {
                let term = take(s, &mut t, (b, x), "component")?;
                let (c, d) = (alpha.components[b].map_object(x), beta.components[b].map_object(x));
                row.push(self.element(&alpha.target.fibers[b], c, d, term)?);
            }
            comps.push(row);
        }
        no_extra(s, &t, "component")?;
        at(s, Modification::new(alpha, beta, comps))
    }

    fn read_opfibration(&self, s: &Section) -> FResult<NamedOpfibration<V>> {
        let p = name_ref(s.require("projection")?, "vfunctor", |n| self.vfunctor(n))?
            .as_ref()
            .clone();
        let over = match s.get("over") {
            Some(t) => Some(name_ref(t, "category", |n| self.category(n))?.clone()),
            None => None,
        };
        let (e, bv) = (p.source.clone(), p.target.clone());
        let mut lifts: Vec<Vec<Lift<V>>> = vec![Vec::new(); e.len()];
        for (k, val) in s.require("lifts")?.pairs()? {
            let [x, b2, f] = list_key::<3>(k)?;
            let x = vobject(&e, x)?;
            let b2 = vobject(&bv, b2)?;
            let arrow = UMor {
                dom: p.map_object(x),
                cod: b2,
                elem: self.element(&bv, p.map_object(x), b2, f)?,
            };
            let [y, chi] = list_key::<2>(val)?;
            let y = vobject(&e, y)?;
            let chi = UMor {
                dom: x,
                cod: y,
                elem: self.element(&e, x, y, chi)?,
            };
            if lifts[x].iter().any(|l| l.arrow == arrow) {
                return k.err("duplicate lift");
            }
            lifts[x].push(Lift { arrow, object: y, chi });
        }
        let of = at(s, Opfibration::new(p, lifts))?;
        Ok(NamedOpfibration {
            name: s.name.clone(),
            opfibration: Arc::new(of),
            over,
        })
    }
}
