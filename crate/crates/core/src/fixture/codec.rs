//! Term encodings of base objects, base morphisms and ordinary categories.

use std::sync::Arc;

use super::syntax::{FResult, Section, Term};
use crate::vbase::hostile::{self, ProductBase};
use crate::vbase::{Arrow, BaseCategory, FinCat, FinFunctor, FinSet, FiniteCategory, SetMor, SetObj};

/// Named ordinary categories, shared by `[category]` sections and by the
/// objects of the finite-category base.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    pub categories: Vec<(String, Arc<FiniteCategory>)>,
}

impl Registry {
    pub fn get(&self, name: &str) -> Option<&Arc<FiniteCategory>> {
        self.categories.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn name_of(&self, c: &FiniteCategory) -> Option<&str> {
        self.categories
            .iter()
            .find(|(_, d)| d.as_ref() == c)
            .map(|(n, _)| n.as_str())
    }

    pub fn resolve(&self, t: &Term) -> FResult<Arc<FiniteCategory>> {
        let name = t.as_atom()?;
        self.get(name)
            .cloned()
            .ok_or_else(|| super::syntax::FixtureError::new(t.pos, format!("unknown category `{name}`")))
    }
}

/// `hint`, or `hint.k` for the least `k` such that the name is free.
pub fn fresh(hint: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(hint) {
        return hint.to_string();
    }
    (1..)
        .map(|k| format!("{hint}.{k}"))
        .find(|n| !taken(n))
        .expect("unbounded")
}

/// A base whose objects and morphisms have a fixture encoding.
pub trait FixtureBase: BaseCategory {
    fn from_tag(tag: &str) -> Option<Self>;

    /// Ordinary categories an object refers to.
    fn categories_of(&self, _o: &Self::Obj, _out: &mut Vec<Arc<FiniteCategory>>) {}

    fn encode_obj(&self, o: &Self::Obj, reg: &Registry) -> Term;

    fn decode_obj(&self, t: &Term, reg: &Registry) -> FResult<Self::Obj>;

    fn encode_mor(&self, m: &Self::Mor, reg: &Registry) -> Term;

    fn decode_mor(&self, t: &Term, dom: &Self::Obj, cod: &Self::Obj, reg: &Registry) -> FResult<Self::Mor>;
}

fn table(t: &Term, dom: &[String], cod: &[String], what: &str) -> FResult<Vec<usize>> {
    let mut out = vec![None; dom.len()];
    for (k, v) in t.pairs()? {
        let (k_s, v_s) = (k.as_atom()?, v.as_atom()?);
        let i = dom
            .iter()
            .position(|d| d == k_s)
            .ok_or_else(|| super::syntax::FixtureError::new(k.pos, format!("`{k_s}` is not in the {what} domain")))?;
        let j = cod
            .iter()
            .position(|d| d == v_s)
            .ok_or_else(|| super::syntax::FixtureError::new(v.pos, format!("`{v_s}` is not in the {what} codomain")))?;
        if out[i].replace(j).is_some() {
            return k.err(format!("`{k_s}` mapped twice"));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, j)| j.ok_or_else(|| super::syntax::FixtureError::new(t.pos, format!("`{}` is unmapped", dom[i]))))
        .collect()
}

fn encode_table(dom: &[String], cod: &[String], map: &[usize]) -> Term {
    Term::list(
        map.iter()
            .enumerate()
            .map(|(i, &j)| Term::pair(Term::atom(&dom[i]), Term::atom(&cod[j])))
            .collect(),
    )
}

impl FixtureBase for FinSet {
    fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "finset" => Some(FinSet::new()),
            "hostile-nonterminal-unit" => Some(hostile::nonterminal_unit()),
            "hostile-fake-coproduct" => Some(hostile::junk_coproducts()),
            _ => None,
        }
    }

    fn encode_obj(&self, o: &SetObj, _: &Registry) -> Term {
        Term::list(o.labels().iter().map(Term::atom).collect())
    }

    fn decode_obj(&self, t: &Term, _: &Registry) -> FResult<SetObj> {
        let labels = t
            .as_list()?
            .iter()
            .map(|x| x.as_atom().map(str::to_string))
            .collect::<FResult<Vec<_>>>()?;
        SetObj::new(labels).map_err(|e| super::syntax::FixtureError::new(t.pos, e.to_string()))
    }

    fn encode_mor(&self, m: &SetMor, _: &Registry) -> Term {
        encode_table(m.dom.labels(), m.cod.labels(), &m.table)
    }

    fn decode_mor(&self, t: &Term, dom: &SetObj, cod: &SetObj, _: &Registry) -> FResult<SetMor> {
        let map = table(t, dom.labels(), cod.labels(), "map")?;
        SetMor::new(dom.clone(), cod.clone(), map).map_err(|e| super::syntax::FixtureError::new(t.pos, e.to_string()))
    }
}

impl FixtureBase for FinCat {
    fn from_tag(tag: &str) -> Option<Self> {
        (tag == "fincat").then(FinCat::new)
    }

    fn categories_of(&self, o: &Arc<FiniteCategory>, out: &mut Vec<Arc<FiniteCategory>>) {
        out.push(o.clone());
    }

    fn encode_obj(&self, o: &Arc<FiniteCategory>, reg: &Registry) -> Term {
        Term::atom(reg.name_of(o).expect("category interned before encoding"))
    }

    fn decode_obj(&self, t: &Term, reg: &Registry) -> FResult<Arc<FiniteCategory>> {
        reg.resolve(t)
    }

    fn encode_mor(&self, m: &FinFunctor, _: &Registry) -> Term {
        let names = |c: &FiniteCategory| c.arrows().iter().map(|a| a.name.clone()).collect::<Vec<_>>();
        Term::list(vec![
            encode_table(m.dom.objects(), m.cod.objects(), &m.objects),
            encode_table(&names(&m.dom), &names(&m.cod), &m.arrows),
        ])
    }

    fn decode_mor(
        &self,
        t: &Term,
        dom: &Arc<FiniteCategory>,
        cod: &Arc<FiniteCategory>,
        _: &Registry,
    ) -> FResult<FinFunctor> {
        let parts = t.as_list()?;
        if parts.len() != 2 {
            return t.err("a functor is `[object table, arrow table]`");
        }
        let names = |c: &FiniteCategory| c.arrows().iter().map(|a| a.name.clone()).collect::<Vec<_>>();
        let objects = table(&parts[0], dom.objects(), cod.objects(), "object")?;
        let arrows = table(&parts[1], &names(dom), &names(cod), "arrow")?;
        FinFunctor::new(dom.clone(), cod.clone(), objects, arrows)
            .map_err(|e| super::syntax::FixtureError::new(t.pos, e.to_string()))
    }
}

impl FixtureBase for ProductBase<FinSet, FinSet> {
    fn from_tag(tag: &str) -> Option<Self> {
        (tag == "hostile-disconnected-unit").then(hostile::disconnected_unit)
    }

    fn encode_obj(&self, o: &Self::Obj, reg: &Registry) -> Term {
        Term::list(vec![self.left.encode_obj(&o.0, reg), self.right.encode_obj(&o.1, reg)])
    }

    fn decode_obj(&self, t: &Term, reg: &Registry) -> FResult<Self::Obj> {
        let parts = t.as_list()?;
        if parts.len() != 2 {
            return t.err("a product object is `[left, right]`");
        }
        Ok((
            self.left.decode_obj(&parts[0], reg)?,
            self.right.decode_obj(&parts[1], reg)?,
        ))
    }

    fn encode_mor(&self, m: &Self::Mor, reg: &Registry) -> Term {
        Term::list(vec![self.left.encode_mor(&m.0, reg), self.right.encode_mor(&m.1, reg)])
    }

    fn decode_mor(&self, t: &Term, dom: &Self::Obj, cod: &Self::Obj, reg: &Registry) -> FResult<Self::Mor> {
        let parts = t.as_list()?;
        if parts.len() != 2 {
            return t.err("a product morphism is `[left, right]`");
        }
        Ok((
            self.left.decode_mor(&parts[0], &dom.0, &cod.0, reg)?,
            self.right.decode_mor(&parts[1], &dom.1, &cod.1, reg)?,
        ))
    }
}

/// Entries of a `[category]` section.
pub fn encode_category(c: &FiniteCategory) -> Vec<(&'static str, Term)> {
    let obj = |o: usize| Term::atom(c.object_label(o));
    let arr = |f: usize| Term::atom(c.arrow_name(f));
    let mut out = vec![("objects", Term::list((0..c.num_objects()).map(obj).collect()))];
    out.push((
        "identities",
        Term::list(
            (0..c.num_objects())
                .map(|o| Term::pair(obj(o), arr(c.identity(o))))
                .collect(),
        ),
    ));
    out.push((
        "arrows",
        Term::list(
            (0..c.num_arrows())
                .map(|f| {
                    let a = c.arrow(f);
                    Term::pair(arr(f), Term::list(vec![obj(a.dom), obj(a.cod)]))
                })
                .collect(),
        ),
    ));
    out.push((
        "composites",
        Term::list(
            c.nontrivial_composites()
                .into_iter()
                .map(|(g, f, h)| Term::pair(Term::list(vec![arr(g), arr(f)]), arr(h)))
                .collect(),
        ),
    ));
    out
}

/// Decodes a `[category]` section. Without `identities`, identities named
/// `1<object>` precede the listed arrows; with it, `arrows` lists every arrow.
pub fn decode_category(s: &Section) -> FResult<FiniteCategory> {
    let objects: Vec<String> = s
        .require("objects")?
        .as_list()?
        .iter()
        .map(|t| t.as_atom().map(str::to_string))
        .collect::<FResult<_>>()?;
    let obj = |t: &Term| -> FResult<usize> {
        let n = t.as_atom()?;
        objects
            .iter()
            .position(|o| o == n)
            .ok_or_else(|| super::syntax::FixtureError::new(t.pos, format!("unknown object `{n}`")))
    };
    let mut arrows: Vec<Arrow> = Vec::new();
    let explicit = s.get("identities");
    if explicit.is_none() {
        for (o, label) in objects.iter().enumerate() {
            arrows.push(Arrow {
                name: format!("1{label}"),
                dom: o,
                cod: o,
            });
        }
    }
    if let Some(t) = s.get("arrows") {
        for (k, v) in t.pairs()? {
            let ends = v.as_list()?;
            if ends.len() != 2 {
                return v.err("expected `[dom, cod]`");
            }
            arrows.push(Arrow {
                name: k.as_atom()?.to_string(),
                dom: obj(&ends[0])?,
                cod: obj(&ends[1])?,
            });
        }
    }
    let mut identities: Vec<usize> = (0..objects.len()).collect();
    if let Some(t) = explicit {
        let mut seen = vec![false; objects.len()];
        for (k, v) in t.pairs()? {
            let o = obj(k)?;
            if std::mem::replace(&mut seen[o], true) {
                return k.err("identity given twice");
            }
            let n = v.as_atom()?;
            identities[o] = arrows
                .iter()
                .position(|a| a.name == n)
                .ok_or_else(|| super::syntax::FixtureError::new(v.pos, format!("unknown arrow `{n}`")))?;
        }
        if let Some(o) = seen.iter().position(|&b| !b) {
            return t.err(format!("no identity for `{}`", objects[o]));
        }
    }
    let arr = |t: &Term| -> FResult<usize> {
        let n = t.as_atom()?;
        arrows
            .iter()
            .position(|a| a.name == n)
            .ok_or_else(|| super::syntax::FixtureError::new(t.pos, format!("unknown arrow `{n}`")))
    };
    let mut composites = Vec::new();
    if let Some(t) = s.get("composites") {
        for (k, v) in t.pairs()? {
            let gf = k.as_list()?;
            if gf.len() != 2 {
                return k.err("expected `[g, f]`");
            }
            composites.push((arr(&gf[0])?, arr(&gf[1])?, arr(v)?));
        }
    }
    FiniteCategory::new(objects, arrows, identities, &composites)
        .map_err(|e| super::syntax::FixtureError::new(s.pos, e.to_string()))
}
