//! Named cells of a fixture, interned by value.

use std::sync::Arc;

use super::codec::{fresh, FixtureBase, Registry};
use crate::correspondence::EquivalenceFixtures;
use crate::enriched::{VCategory, VFunctor, VNatTrans};
use crate::freeunder::OrdinaryCategory;
use crate::opfib::Opfibration;
use crate::pseudo::{Modification, Pseudofunctor, Pseudonatural};
use crate::vbase::FiniteCategory;

/// A named opfibration and, optionally, the category its base is free on.
#[derive(Clone, Debug)]
pub struct NamedOpfibration<V: FixtureBase> {
    pub name: String,
    pub opfibration: Arc<Opfibration<V>>,
    pub over: Option<Arc<OrdinaryCategory>>,
}

/// Everything a fixture declares, in declaration order per kind.
#[derive(Clone, Debug)]
pub struct Document<V: FixtureBase> {
    pub base: V,
    pub registry: Registry,
    pub vcategories: Vec<(String, Arc<VCategory<V>>)>,
    pub vfunctors: Vec<(String, Arc<VFunctor<V>>)>,
    pub vnats: Vec<(String, Arc<VNatTrans<V>>)>,
    pub pseudofunctors: Vec<(String, Arc<Pseudofunctor<V>>)>,
    pub transformations: Vec<(String, Arc<Pseudonatural<V>>)>,
    pub modifications: Vec<(String, Arc<Modification<V>>)>,
    pub opfibrations: Vec<NamedOpfibration<V>>,
}

fn find<'a, T: PartialEq>(items: &'a [(String, Arc<T>)], x: &T) -> Option<&'a str> {
    items.iter().find(|(_, y)| y.as_ref() == x).map(|(n, _)| n.as_str())
}

fn lookup<'a, T>(items: &'a [(String, Arc<T>)], name: &str) -> Option<&'a Arc<T>> {
    items.iter().find(|(n, _)| n == name).map(|(_, x)| x)
}

impl<V: FixtureBase> Document<V> {
    pub fn new(base: V) -> Self {
        Document {
            base,
            registry: Registry::default(),
            vcategories: Vec::new(),
            vfunctors: Vec::new(),
            vnats: Vec::new(),
            pseudofunctors: Vec::new(),
            transformations: Vec::new(),
            modifications: Vec::new(),
            opfibrations: Vec::new(),
        }
    }

    /// Whether any section already uses `name`.
    pub fn is_taken(&self, name: &str) -> bool {
        self.registry.get(name).is_some()
            || lookup(&self.vcategories, name).is_some()
            || lookup(&self.vfunctors, name).is_some()
            || lookup(&self.vnats, name).is_some()
            || lookup(&self.pseudofunctors, name).is_some()
            || lookup(&self.transformations, name).is_some()
            || lookup(&self.modifications, name).is_some()
            || self.opfibrations.iter().any(|o| o.name == name)
    }

    fn fresh(&self, hint: &str) -> String {
        fresh(hint, |n| self.is_taken(n))
    }

    pub fn category(&self, name: &str) -> Option<&Arc<FiniteCategory>> {
        self.registry.get(name)
    }

    pub fn vcategory(&self, name: &str) -> Option<&Arc<VCategory<V>>> {
        lookup(&self.vcategories, name)
    }

    pub fn vfunctor(&self, name: &str) -> Option<&Arc<VFunctor<V>>> {
        lookup(&self.vfunctors, name)
    }

    pub fn vnat(&self, name: &str) -> Option<&Arc<VNatTrans<V>>> {
        lookup(&self.vnats, name)
    }

    pub fn pseudofunctor(&self, name: &str) -> Option<&Arc<Pseudofunctor<V>>> {
        lookup(&self.pseudofunctors, name)
    }

    pub fn transformation(&self, name: &str) -> Option<&Arc<Pseudonatural<V>>> {
        lookup(&self.transformations, name)
    }

    pub fn modification(&self, name: &str) -> Option<&Arc<Modification<V>>> {
        lookup(&self.modifications, name)
    }

    pub fn opfibration(&self, name: &str) -> Option<&NamedOpfibration<V>> {
        self.opfibrations.iter().find(|o| o.name == name)
    }

    pub fn category_name(&self, c: &FiniteCategory) -> Option<&str> {
        self.registry.name_of(c)
    }

    pub fn vcategory_name(&self, c: &VCategory<V>) -> Option<&str> {
        find(&self.vcategories, c)
    }

    pub fn vfunctor_name(&self, f: &VFunctor<V>) -> Option<&str> {
        find(&self.vfunctors, f)
    }

    pub fn vnat_name(&self, a: &VNatTrans<V>) -> Option<&str> {
        find(&self.vnats, a)
    }

    pub fn pseudofunctor_name(&self, p: &Pseudofunctor<V>) -> Option<&str> {
        find(&self.pseudofunctors, p)
    }

    pub fn transformation_name(&self, t: &Pseudonatural<V>) -> Option<&str> {
        find(&self.transformations, t)
    }

    pub fn add_category(&mut self, hint: &str, c: &Arc<FiniteCategory>) -> String {
        if let Some(n) = self.registry.name_of(c) {
            return n.to_string();
        }
        let name = self.fresh(hint);
        self.registry.categories.push((name.clone(), c.clone()));
        name
    }

    pub fn add_vcategory(&mut self, hint: &str, c: &Arc<VCategory<V>>) -> String {
        if let Some(n) = self.vcategory_name(c) {
            return n.to_string();
        }
        let mut cats = Vec::new();
        for x in 0..c.len() {
            for y in 0..c.len() {
                self.base.categories_of(c.hom(x, y), &mut cats);
            }
        }
        for cat in cats {
            self.add_category("hom", &cat);
        }
        let name = self.fresh(hint);
        self.vcategories.push((name.clone(), c.clone()));
        name
    }

    pub fn add_vfunctor(&mut self, hint: &str, f: &VFunctor<V>) -> String {
        if let Some(n) = self.vfunctor_name(f) {
            return n.to_string();
        }
        self.add_vcategory(&format!("{hint}.source"), &f.source);
        self.add_vcategory(&format!("{hint}.target"), &f.target);
        let name = self.fresh(hint);
        self.vfunctors.push((name.clone(), Arc::new(f.clone())));
        name
    }

    pub fn add_vnat(&mut self, hint: &str, a: &VNatTrans<V>) -> String {
        if let Some(n) = self.vnat_name(a) {
            return n.to_string();
        }
        self.add_vfunctor(&format!("{hint}.source"), &a.source);
        self.add_vfunctor(&format!("{hint}.target"), &a.target);
        let name = self.fresh(hint);
        self.vnats.push((name.clone(), Arc::new(a.clone())));
        name
    }

    pub fn add_pseudofunctor(&mut self, hint: &str, p: &Arc<Pseudofunctor<V>>) -> String {
        if let Some(n) = self.pseudofunctor_name(p) {
            return n.to_string();
        }
        let name = self.fresh(hint);
        self.add_category("B", &p.base);
        for (b, fib) in p.fibers.iter().enumerate() {
            self.add_vcategory(&format!("{name}.{}", p.base.object_label(b)), fib);
        }
        for (f, func) in p.functors.iter().enumerate() {
            self.add_vfunctor(&format!("{name}.{}", p.base.arrow_name(f)), func);
        }
        self.pseudofunctors.push((name.clone(), p.clone()));
        name
    }

    pub fn add_transformation(&mut self, hint: &str, t: &Arc<Pseudonatural<V>>) -> String {
        if let Some(n) = self.transformation_name(t) {
            return n.to_string();
        }
        let name = self.fresh(hint);
        self.add_pseudofunctor(&format!("{name}.source"), &t.source);
        self.add_pseudofunctor(&format!("{name}.target"), &t.target);
        for (b, comp) in t.components.iter().enumerate() {
            self.add_vfunctor(&format!("{name}.{}", t.source.base.object_label(b)), comp);
        }
        self.transformations.push((name.clone(), t.clone()));
        name
    }

    pub fn add_modification(&mut self, hint: &str, m: &Arc<Modification<V>>) -> String {
        if let Some(n) = find(&self.modifications, m) {
            return n.to_string();
        }
        let name = self.fresh(hint);
        self.add_transformation(&format!("{name}.source"), &m.source);
        self.add_transformation(&format!("{name}.target"), &m.target);
        self.modifications.push((name.clone(), m.clone()));
        name
    }

    pub fn add_opfibration(
        &mut self,
        hint: &str,
        of: &Arc<Opfibration<V>>,
        over: Option<&Arc<OrdinaryCategory>>,
    ) -> String {
        if let Some(o) = self
            .opfibrations
            .iter()
            .find(|o| o.opfibration.p == of.p && o.opfibration.lifts() == of.lifts())
        {
            return o.name.clone();
        }
        let name = self.fresh(hint);
        if let Some(b) = over {
            self.add_category("B", b);
        }
        self.add_vcategory(&format!("{name}.total"), &of.p.source);
        self.add_vcategory(&format!("{name}.base"), &of.p.target);
        self.add_vfunctor(&format!("{name}.p"), &of.p);
        self.opfibrations.push(NamedOpfibration {
            name: name.clone(),
            opfibration: of.clone(),
            over: over.cloned(),
        });
        name
    }
}

impl<V: FixtureBase> Document<V> {
    /// Names every cell of `fx`, with opfibrations over `fx.base`.
    pub fn add_fixtures(&mut self, fx: &EquivalenceFixtures<V>) {
        self.add_category("B", &fx.base);
        for (i, p) in fx.pseudofunctors.iter().enumerate() {
            self.add_pseudofunctor(&format!("F{i}"), p);
        }
        for (i, t) in fx.transformations.iter().enumerate() {
            self.add_transformation(&format!("alpha{i}"), t);
        }
        for (i, (m, _, _)) in fx.modifications.iter().enumerate() {
            self.add_modification(&format!("Gamma{i}"), &Arc::new(m.clone()));
        }
        for (i, of) in fx.opfibrations.iter().enumerate() {
            self.add_opfibration(&format!("p{i}"), &Arc::new(of.clone()), Some(&fx.base));
        }
    }
}
