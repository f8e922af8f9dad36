use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

use super::{BaseCategory, BaseError, CoproductCone, PullbackCone, HOM_ENUMERATION_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category with an explicit composition table.
///
/// Used both as an object of the [`FinCat`] base and as an ordinary (locally
/// small, `Set`-enriched) category wherever one is needed.
#[derive(Clone)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    /// `(g, f) -> g ∘ f`, defined exactly on composable pairs.
    composition: BTreeMap<(usize, usize), usize>,
    object_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl PartialEq for FiniteCategory {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.objects == other.objects
                && self.arrows == other.arrows
                && self.identities == other.identities
                && self.composition == other.composition)
    }
}

impl Eq for FiniteCategory {}

impl Hash for FiniteCategory {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.objects.hash(state);
        self.arrows.hash(state);
        self.identities.hash(state);
    }
}

impl fmt::Debug for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cat[{}; ", self.objects.join(" "))?;
        let mut first = true;
        for (i, a) in self.arrows.iter().enumerate() {
            if self.identities[a.dom] == i {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{}:{}->{}", a.name, self.objects[a.dom], self.objects[a.cod])?;
        }
        write!(f, "]")
    }
}

impl FiniteCategory {
    /// Builds and fully validates a category. `composites` lists `(g, f, g∘f)`
    /// by arrow index; pairs involving an identity may be omitted.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        composites: &[(usize, usize, usize)],
    ) -> Result<Self, BaseError> {
        if identities.len() != objects.len() {
            return Err(BaseError::Invalid("one identity per object required".into()));
        }
        for a in &arrows {
            if a.dom >= objects.len() || a.cod >= objects.len() {
                return Err(BaseError::Invalid(format!("arrow `{}` has unknown endpoints", a.name)));
            }
        }
        let mut composition = BTreeMap::new();
        for (o, &id) in identities.iter().enumerate() {
            let a = arrows
                .get(id)
                .ok_or_else(|| BaseError::Invalid("identity index out of range".into()))?;
            if a.dom != o || a.cod != o {
                return Err(BaseError::Invalid(format!(
                    "`{}` is not an endo-arrow of `{}`",
                    a.name, objects[o]
                )));
            }
        }
        for (f, a) in arrows.iter().enumerate() {
            composition.insert((identities[a.cod], f), f);
            composition.insert((f, identities[a.dom]), f);
        }
        for &(g, f, h) in composites {
            if g >= arrows.len() || f >= arrows.len() || h >= arrows.len() {
                return Err(BaseError::Invalid("composite index out of range".into()));
            }
            if let Some(&prev) = composition.get(&(g, f)) {
                if prev != h {
                    return Err(BaseError::Invalid(format!(
                        "conflicting composites for `{}∘{}`",
                        arrows[g].name, arrows[f].name
                    )));
                }
            }
            composition.insert((g, f), h);
        }
        let cat = Self::assemble(objects, arrows, identities, composition)?;
        cat.validate()?;
        Ok(cat)
    }

    fn assemble(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        composition: BTreeMap<(usize, usize), usize>,
    ) -> Result<Self, BaseError> {
        let mut object_index = HashMap::with_capacity(objects.len());
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(BaseError::Invalid(format!("duplicate object label `{o}`")));
            }
        }
        let mut arrow_index = HashMap::with_capacity(arrows.len());
        for (i, a) in arrows.iter().enumerate() {
            if arrow_index.insert(a.name.clone(), i).is_some() {
                return Err(BaseError::Invalid(format!("duplicate arrow name `{}`", a.name)));
            }
        }
        Ok(FiniteCategory {
            objects,
            arrows,
            identities,
            composition,
            object_index,
            arrow_index,
        })
    }

    /// Builds a category from labels; identities are generated and named
    /// `1<object>`. `arrows` are `(name, dom, cod)` and `composites`
    /// `(g, f, g∘f)` by name.
    pub fn from_names(
        objects: &[&str],
        arrows: &[(&str, &str, &str)],
        composites: &[(&str, &str, &str)],
    ) -> Result<Self, BaseError> {
        let objs: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let pos = |o: &str| {
            objs.iter()
                .position(|x| x == o)
                .ok_or_else(|| BaseError::Invalid(format!("unknown object `{o}`")))
        };
        let mut all = Vec::new();
        let mut identities = Vec::new();
        for (i, o) in objs.iter().enumerate() {
            identities.push(all.len());
            all.push(Arrow {
                name: format!("1{o}"),
                dom: i,
                cod: i,
            });
        }
        for (name, d, c) in arrows {
            all.push(Arrow {
                name: name.to_string(),
                dom: pos(d)?,
                cod: pos(c)?,
            });
        }
        let apos = |n: &str| {
            all.iter()
                .position(|a| a.name == n)
                .ok_or_else(|| BaseError::Invalid(format!("unknown arrow `{n}`")))
        };
        let comps = composites
            .iter()
            .map(|(g, f, h)| Ok((apos(g)?, apos(f)?, apos(h)?)))
            .collect::<Result<Vec<_>, BaseError>>()?;
        FiniteCategory::new(objs, all, identities, &comps)
    }

    /// Checks totality, typing, unit laws and associativity of composition.
    pub fn validate(&self) -> Result<(), BaseError> {
        let m = self.arrows.len();
        for f in 0..m {
            for g in 0..m {
                let composable = self.arrows[f].cod == self.arrows[g].dom;
                match (composable, self.composition.get(&(g, f))) {
                    (true, None) => {
                        return Err(BaseError::Invalid(format!(
                            "missing composite `{}∘{}`",
                            self.arrows[g].name, self.arrows[f].name
                        )))
                    }
                    (false, Some(_)) => {
                        return Err(BaseError::Invalid(format!(
                            "composite `{}∘{}` of non-composable arrows",
                            self.arrows[g].name, self.arrows[f].name
                        )))
                    }
                    (true, Some(&h)) => {
                        let ah = &self.arrows[h];
                        if ah.dom != self.arrows[f].dom || ah.cod != self.arrows[g].cod {
                            return Err(BaseError::Invalid(format!(
                                "composite `{}∘{} = {}` has the wrong type",
                                self.arrows[g].name, self.arrows[f].name, ah.name
                            )));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for f in 0..m {
            let a = &self.arrows[f];
            if self.composition[&(self.identities[a.cod], f)] != f
                || self.composition[&(f, self.identities[a.dom])] != f
            {
                return Err(BaseError::Invalid(format!("unit law fails at `{}`", a.name)));
            }
        }
        for (&(g, f), &gf) in &self.composition {
            for h in self.outgoing(self.arrows[g].cod) {
                let left = self.composition[&(h, gf)];
                let hg = self.composition[&(h, g)];
                let right = self.composition[&(hg, f)];
                if left != right {
                    return Err(BaseError::Invalid(format!(
                        "associativity fails at `{}`,`{}`,`{}`",
                        self.arrows[h].name, self.arrows[g].name, self.arrows[f].name
                    )));
                }
            }
        }
        Ok(())
    }

    fn outgoing(&self, o: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&h| self.arrows[h].dom == o)
    }

    pub fn terminal() -> Self {
        Self::discrete(&["*".to_string()])
    }

    /// Discrete category; identity arrows are named `1<label>`.
    pub fn discrete(labels: &[String]) -> Self {
        let arrows = labels
            .iter()
            .enumerate()
            .map(|(i, l)| Arrow {
                name: format!("1{l}"),
                dom: i,
                cod: i,
            })
            .collect();
        let composition = (0..labels.len()).map(|i| ((i, i), i)).collect();
        Self::assemble(labels.to_vec(), arrows, (0..labels.len()).collect(), composition)
            .expect("discrete category labels must be distinct")
    }

    /// Exactly one arrow between any two objects, named `a>b`.
    pub fn codiscrete(labels: &[String]) -> Self {
        let n = labels.len();
        let mut arrows = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                arrows.push(Arrow {
                    name: format!("{}>{}", labels[a], labels[b]),
                    dom: a,
                    cod: b,
                });
            }
        }
        let mut composition = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    composition.insert((b * n + c, a * n + b), a * n + c);
                }
            }
        }
        Self::assemble(
            labels.to_vec(),
            arrows,
            (0..n).map(|a| a * n + a).collect(),
            composition,
        )
        .expect("codiscrete category labels must be distinct")
    }

    /// The poset on `0..n` given by `le(i, j)`, which must be reflexive and
    /// transitive. Arrows are named `i<j` (identities `i<i`).
    pub fn preorder(n: usize, le: impl Fn(usize, usize) -> bool) -> Result<Self, BaseError> {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if le(a, b) {
                    index.insert((a, b), arrows.len());
                    arrows.push(Arrow {
                        name: format!("{a}<{b}"),
                        dom: a,
                        cod: b,
                    });
                }
            }
        }
        let mut identities = Vec::new();
        for a in 0..n {
            identities.push(
                *index
                    .get(&(a, a))
                    .ok_or_else(|| BaseError::Invalid("preorder not reflexive".into()))?,
            );
        }
        let mut composition = BTreeMap::new();
        for (&(a, b), &f) in &index {
            for c in 0..n {
                if let Some(&g) = index.get(&(b, c)) {
                    let h = *index
                        .get(&(a, c))
                        .ok_or_else(|| BaseError::Invalid("preorder not transitive".into()))?;
                    composition.insert((g, f), h);
                }
            }
        }
        Self::assemble(labels, arrows, identities, composition)
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::preorder(n, |a, b| a <= b).expect("chains are posets")
    }

    /// `b --f--> c`
    pub fn walking_arrow() -> Self {
        Self::from_names(&["b", "c"], &[("f", "b", "c")], &[]).expect("walking arrow")
    }

    /// One-object category of a finite monoid. `table[i][j] = e_i · e_j`
    /// (apply `e_j` first); element 0 must be the unit.
    pub fn monoid(elements: &[&str], table: &[Vec<usize>]) -> Result<Self, BaseError> {
        let arrows = elements
            .iter()
            .map(|e| Arrow {
                name: e.to_string(),
                dom: 0,
                cod: 0,
            })
            .collect();
        let mut comps = Vec::new();
        for (i, row) in table.iter().enumerate() {
            for (j, &k) in row.iter().enumerate() {
                comps.push((i, j, k));
            }
        }
        Self::new(vec!["*".into()], arrows, vec![0], &comps)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_label(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, f: usize) -> &Arrow {
        &self.arrows[f]
    }

    pub fn arrow_name(&self, f: usize) -> &str {
        &self.arrows[f].name
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.arrows[f].dom] == f
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composition.get(&(g, f)).copied()
    }

    pub fn object_position(&self, label: &str) -> Option<usize> {
        self.object_index.get(label).copied()
    }

    pub fn arrow_position(&self, name: &str) -> Option<usize> {
        self.arrow_index.get(name).copied()
    }

    /// Arrows `a → b` in index order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&f| self.arrows[f].dom == a && self.arrows[f].cod == b)
            .collect()
    }

    /// All `(g, f, g∘f)` where neither `g` nor `f` is an identity.
    pub fn nontrivial_composites(&self) -> Vec<(usize, usize, usize)> {
        self.composition
            .iter()
            .filter(|(&(g, f), _)| !self.is_identity(g) && !self.is_identity(f))
            .map(|(&(g, f), &h)| (g, f, h))
            .collect()
    }

    /// All composable pairs `(f, g)` with `cod f = dom g`.
    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        self.composition.keys().map(|&(g, f)| (f, g)).collect()
    }

    /// Cartesian product; objects `(a,b)` and arrows `(u,v)`, first factor major.
    pub fn product(a: &FiniteCategory, b: &FiniteCategory) -> FiniteCategory {
        let nb = b.objects.len();
        let mb = b.arrows.len();
        let mut objects = Vec::with_capacity(a.objects.len() * nb);
        for x in &a.objects {
            for y in &b.objects {
                objects.push(format!("({x},{y})"));
            }
        }
        let mut arrows = Vec::with_capacity(a.arrows.len() * mb);
        for u in &a.arrows {
            for v in &b.arrows {
                arrows.push(Arrow {
                    name: format!("({},{})", u.name, v.name),
                    dom: u.dom * nb + v.dom,
                    cod: u.cod * nb + v.cod,
                });
            }
        }
        let mut identities = Vec::with_capacity(objects.len());
        for &ia in &a.identities {
            for &ib in &b.identities {
                identities.push(ia * mb + ib);
            }
        }
        let mut composition = BTreeMap::new();
        for (&(g, f), &h) in &a.composition {
            for (&(g2, f2), &h2) in &b.composition {
                composition.insert((g * mb + g2, f * mb + f2), h * mb + h2);
            }
        }
        Self::assemble(objects, arrows, identities, composition).expect("product labels are distinct")
    }

    /// Disjoint union; labels are prefixed by the summand index.
    pub fn coproduct(parts: &[&FiniteCategory]) -> FiniteCategory {
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        let mut identities = Vec::new();
        let mut composition = BTreeMap::new();
        for (i, c) in parts.iter().enumerate() {
            let (oo, ao) = (objects.len(), arrows.len());
            objects.extend(c.objects.iter().map(|o| format!("{i}.{o}")));
            arrows.extend(c.arrows.iter().map(|a| Arrow {
                name: format!("{i}.{}", a.name),
                dom: a.dom + oo,
                cod: a.cod + oo,
            }));
            identities.extend(c.identities.iter().map(|&id| id + ao));
            composition.extend(c.composition.iter().map(|(&(g, f), &h)| ((g + ao, f + ao), h + ao)));
        }
        Self::assemble(objects, arrows, identities, composition).expect("coproduct labels are distinct")
    }
}

pub type CatObj = Arc<FiniteCategory>;

/// A functor between finite categories.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinFunctor {
    pub dom: CatObj,
    pub cod: CatObj,
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl fmt::Debug for FinFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "functor[")?;
        for (i, &o) in self.objects.iter().enumerate() {
            write!(f, "{}↦{} ", self.dom.objects[i], self.cod.objects[o])?;
        }
        for (i, &a) in self.arrows.iter().enumerate() {
            if !self.dom.is_identity(i) {
                write!(f, "{}↦{} ", self.dom.arrows[i].name, self.cod.arrows[a].name)?;
            }
        }
        write!(f, "]")
    }
}

impl FinFunctor {
    /// Builds and validates a functor.
    pub fn new(dom: CatObj, cod: CatObj, objects: Vec<usize>, arrows: Vec<usize>) -> Result<Self, BaseError> {
        let f = FinFunctor {
            dom,
            cod,
            objects,
            arrows,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), BaseError> {
        let (d, c) = (&self.dom, &self.cod);
        if self.objects.len() != d.num_objects() || self.arrows.len() != d.num_arrows() {
            return Err(BaseError::Invalid("functor tables have the wrong size".into()));
        }
        if self.objects.iter().any(|&o| o >= c.num_objects()) || self.arrows.iter().any(|&a| a >= c.num_arrows()) {
            return Err(BaseError::Invalid("functor image out of range".into()));
        }
        for (u, a) in d.arrows.iter().enumerate() {
            let img = &c.arrows[self.arrows[u]];
            if img.dom != self.objects[a.dom] || img.cod != self.objects[a.cod] {
                return Err(BaseError::Invalid(format!(
                    "image of `{}` has the wrong endpoints",
                    a.name
                )));
            }
        }
        for (o, &id) in d.identities.iter().enumerate() {
            if self.arrows[id] != c.identities[self.objects[o]] {
                return Err(BaseError::Invalid(format!(
                    "identity of `{}` not preserved",
                    d.objects[o]
                )));
            }
        }
        for (&(g, f), &h) in &d.composition {
            if c.compose(self.arrows[g], self.arrows[f]) != Some(self.arrows[h]) {
                return Err(BaseError::Invalid(format!(
                    "composite `{}∘{}` not preserved",
                    d.arrows[g].name, d.arrows[f].name
                )));
            }
        }
        Ok(())
    }

    pub fn identity(c: &CatObj) -> Self {
        FinFunctor {
            dom: c.clone(),
            cod: c.clone(),
            objects: (0..c.num_objects()).collect(),
            arrows: (0..c.num_arrows()).collect(),
        }
    }

    /// `self ∘ first`
    pub fn after(&self, first: &FinFunctor) -> Result<Self, BaseError> {
        if first.cod != self.dom {
            return Err(BaseError::Mismatch(
                "functor composite of non-composable functors".into(),
            ));
        }
        Ok(FinFunctor {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            objects: first.objects.iter().map(|&o| self.objects[o]).collect(),
            arrows: first.arrows.iter().map(|&a| self.arrows[a]).collect(),
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        is_bijection(&self.objects, self.cod.num_objects()) && is_bijection(&self.arrows, self.cod.num_arrows())
    }
}

fn is_bijection(table: &[usize], n: usize) -> bool {
    if table.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    table.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
}

/// Finite categories with the cartesian product.
#[derive(Clone, Debug, PartialEq)]
pub struct FinCat {
    unit: CatObj,
}

impl Default for FinCat {
    fn default() -> Self {
        Self::new()
    }
}

impl FinCat {
    pub fn new() -> Self {
        FinCat {
            unit: Arc::new(FiniteCategory::terminal()),
        }
    }

    fn reindex(&self, dom: CatObj, cod: CatObj) -> FinFunctor {
        FinFunctor {
            objects: (0..dom.num_objects()).collect(),
            arrows: (0..dom.num_arrows()).collect(),
            dom,
            cod,
        }
    }

    fn check_commutes(&self, a: &FinFunctor, b: &FinFunctor) -> Result<(), BaseError> {
        if a != b {
            return Err(BaseError::NonCommuting(self.diff_witness(a, b)));
        }
        Ok(())
    }
}

/// Backtracking search for functors `x → y` with an optionally fixed object map.
struct FunctorSearch<'a> {
    x: &'a FiniteCategory,
    y: &'a FiniteCategory,
    /// composites `(g, f, h)` of `x`, grouped by the largest index among them.
    checks: Vec<Vec<(usize, usize, usize)>>,
}

impl<'a> FunctorSearch<'a> {
    fn new(x: &'a FiniteCategory, y: &'a FiniteCategory) -> Self {
        let mut checks = vec![Vec::new(); x.num_arrows()];
        for (&(g, f), &h) in &x.composition {
            checks[g.max(f).max(h)].push((g, f, h));
        }
        FunctorSearch { x, y, checks }
    }

    /// Calls `emit` for each complete arrow assignment over the object map;
    /// stops early when `emit` returns false.
    fn arrows_over(
        &self,
        objects: &[usize],
        shuffle: Option<&mut dyn RngCore>,
        emit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let candidates: Vec<Vec<usize>> = self
            .x
            .arrows
            .iter()
            .enumerate()
            .map(|(u, a)| {
                if self.x.is_identity(u) {
                    vec![self.y.identity(objects[a.dom])]
                } else {
                    self.y.hom(objects[a.dom], objects[a.cod])
                }
            })
            .collect();
        let mut candidates = candidates;
        if let Some(rng) = shuffle {
            for c in &mut candidates {
                c.shuffle(rng);
            }
        }
        let mut assignment = vec![usize::MAX; self.x.num_arrows()];
        self.assign(0, &candidates, &mut assignment, emit)
    }

    fn assign(
        &self,
        t: usize,
        candidates: &[Vec<usize>],
        assignment: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if t == assignment.len() {
            return emit(assignment);
        }
        for &c in &candidates[t] {
            assignment[t] = c;
            let ok = self.checks[t]
                .iter()
                .all(|&(g, f, h)| self.y.compose(assignment[g], assignment[f]) == Some(assignment[h]));
            if ok && !self.assign(t + 1, candidates, assignment, emit) {
                return false;
            }
        }
        true
    }
}

impl BaseCategory for FinCat {
    type Obj = CatObj;
    type Mor = FinFunctor;

    fn tag(&self) -> &'static str {
        "fincat"
    }

    fn unit(&self) -> CatObj {
        self.unit.clone()
    }

    fn dom(&self, m: &FinFunctor) -> CatObj {
        m.dom.clone()
    }

    fn cod(&self, m: &FinFunctor) -> CatObj {
        m.cod.clone()
    }

    fn identity(&self, x: &CatObj) -> FinFunctor {
        FinFunctor::identity(x)
    }

    fn compose(&self, g: &FinFunctor, f: &FinFunctor) -> Result<FinFunctor, BaseError> {
        g.after(f)
    }

    fn tensor(&self, x: &CatObj, y: &CatObj) -> CatObj {
        Arc::new(FiniteCategory::product(x, y))
    }

    fn tensor_mor(&self, f: &FinFunctor, g: &FinFunctor) -> FinFunctor {
        let nb = g.cod.num_objects();
        let mb = g.cod.num_arrows();
        let mut objects = Vec::with_capacity(f.objects.len() * g.objects.len());
        for &a in &f.objects {
            for &b in &g.objects {
                objects.push(a * nb + b);
            }
        }
        let mut arrows = Vec::with_capacity(f.arrows.len() * g.arrows.len());
        for &u in &f.arrows {
            for &v in &g.arrows {
                arrows.push(u * mb + v);
            }
        }
        FinFunctor {
            dom: self.tensor(&f.dom, &g.dom),
            cod: self.tensor(&f.cod, &g.cod),
            objects,
            arrows,
        }
    }

    fn left_unitor(&self, x: &CatObj) -> FinFunctor {
        self.reindex(self.tensor(&self.unit, x), x.clone())
    }

    fn left_unitor_inv(&self, x: &CatObj) -> FinFunctor {
        self.reindex(x.clone(), self.tensor(&self.unit, x))
    }

    fn right_unitor(&self, x: &CatObj) -> FinFunctor {
        self.reindex(self.tensor(x, &self.unit), x.clone())
    }

    fn right_unitor_inv(&self, x: &CatObj) -> FinFunctor {
        self.reindex(x.clone(), self.tensor(x, &self.unit))
    }

    fn associator(&self, x: &CatObj, y: &CatObj, z: &CatObj) -> FinFunctor {
        self.reindex(self.tensor(&self.tensor(x, y), z), self.tensor(x, &self.tensor(y, z)))
    }

    fn coproduct(&self, summands: &[CatObj]) -> CoproductCone<Self> {
        let parts: Vec<&FiniteCategory> = summands.iter().map(|s| s.as_ref()).collect();
        let apex = Arc::new(FiniteCategory::coproduct(&parts));
        let mut injections = Vec::with_capacity(summands.len());
        let (mut oo, mut ao) = (0, 0);
        for s in summands {
            injections.push(FinFunctor {
                dom: s.clone(),
                cod: apex.clone(),
                objects: (oo..oo + s.num_objects()).collect(),
                arrows: (ao..ao + s.num_arrows()).collect(),
            });
            oo += s.num_objects();
            ao += s.num_arrows();
        }
        CoproductCone {
            summands: summands.to_vec(),
            apex,
            injections,
        }
    }

    fn copower_unit(&self, names: &[String]) -> CoproductCone<Self> {
        let distinct = {
            let mut seen = std::collections::HashSet::new();
            names.iter().all(|n| seen.insert(n))
        };
        if !distinct {
            let units = vec![self.unit.clone(); names.len()];
            return self.coproduct(&units);
        }
        let apex = Arc::new(FiniteCategory::discrete(names));
        CoproductCone {
            summands: vec![self.unit.clone(); names.len()],
            injections: (0..names.len())
                .map(|k| FinFunctor {
                    dom: self.unit.clone(),
                    cod: apex.clone(),
                    objects: vec![k],
                    arrows: vec![k],
                })
                .collect(),
            apex,
        }
    }

    fn copair(
        &self,
        cone: &CoproductCone<Self>,
        legs: &[FinFunctor],
        target: &CatObj,
    ) -> Result<FinFunctor, BaseError> {
        if legs.len() != cone.summands.len() {
            return Err(BaseError::Mismatch(format!(
                "copair: {} legs for {} summands",
                legs.len(),
                cone.summands.len()
            )));
        }
        let mut objects = vec![usize::MAX; cone.apex.num_objects()];
        let mut arrows = vec![usize::MAX; cone.apex.num_arrows()];
        for ((leg, inj), s) in legs.iter().zip(&cone.injections).zip(&cone.summands) {
            if &leg.dom != s || &leg.cod != target {
                return Err(BaseError::Mismatch("copair leg has the wrong type".into()));
            }
            for (i, &k) in inj.objects.iter().enumerate() {
                objects[k] = leg.objects[i];
            }
            for (i, &k) in inj.arrows.iter().enumerate() {
                arrows[k] = leg.arrows[i];
            }
        }
        if objects.contains(&usize::MAX) || arrows.contains(&usize::MAX) {
            return Err(BaseError::Invalid("coproduct not covered by its injections".into()));
        }
        Ok(FinFunctor {
            dom: cone.apex.clone(),
            cod: target.clone(),
            objects,
            arrows,
        })
    }

    fn pullback(&self, f: &FinFunctor, g: &FinFunctor) -> Result<PullbackCone<Self>, BaseError> {
        if f.cod != g.cod {
            return Err(BaseError::Mismatch("pullback of a non-cospan".into()));
        }
        let (a, b) = (&f.dom, &g.dom);
        let mut objects = Vec::new();
        let mut obj_pairs = Vec::new();
        let mut obj_index = HashMap::new();
        for x in 0..a.num_objects() {
            for y in 0..b.num_objects() {
                if f.objects[x] == g.objects[y] {
                    obj_index.insert((x, y), obj_pairs.len());
                    obj_pairs.push((x, y));
                    objects.push(format!("({},{})", a.objects[x], b.objects[y]));
                }
            }
        }
        let mut arrows = Vec::new();
        let mut arr_pairs = Vec::new();
        let mut arr_index = HashMap::new();
        for u in 0..a.num_arrows() {
            for v in 0..b.num_arrows() {
                if f.arrows[u] == g.arrows[v] {
                    let (au, bv) = (&a.arrows[u], &b.arrows[v]);
                    arr_index.insert((u, v), arr_pairs.len());
                    arr_pairs.push((u, v));
                    arrows.push(Arrow {
                        name: format!("({},{})", au.name, bv.name),
                        dom: obj_index[&(au.dom, bv.dom)],
                        cod: obj_index[&(au.cod, bv.cod)],
                    });
                }
            }
        }
        let identities = obj_pairs
            .iter()
            .map(|&(x, y)| arr_index[&(a.identities[x], b.identities[y])])
            .collect();
        let mut composition = BTreeMap::new();
        for (k, &(u, v)) in arr_pairs.iter().enumerate() {
            for (j, &(u2, v2)) in arr_pairs.iter().enumerate() {
                if let (Some(h1), Some(h2)) = (a.compose(u2, u), b.compose(v2, v)) {
                    composition.insert((j, k), arr_index[&(h1, h2)]);
                }
            }
        }
        let apex = Arc::new(FiniteCategory::assemble(objects, arrows, identities, composition)?);
        Ok(PullbackCone {
            proj_left: FinFunctor {
                dom: apex.clone(),
                cod: a.clone(),
                objects: obj_pairs.iter().map(|p| p.0).collect(),
                arrows: arr_pairs.iter().map(|p| p.0).collect(),
            },
            proj_right: FinFunctor {
                dom: apex.clone(),
                cod: b.clone(),
                objects: obj_pairs.iter().map(|p| p.1).collect(),
                arrows: arr_pairs.iter().map(|p| p.1).collect(),
            },
            apex,
            left: f.clone(),
            right: g.clone(),
        })
    }

    fn universal_into_pullback(
        &self,
        cone: &PullbackCone<Self>,
        left: &FinFunctor,
        right: &FinFunctor,
    ) -> Result<FinFunctor, BaseError> {
        self.check_commutes(&cone.left.after(left)?, &cone.right.after(right)?)?;
        let apex = &cone.apex;
        let find = |n: usize, pl: &[usize], pr: &[usize], l: usize, r: usize, what: &str| {
            let hits: Vec<usize> = (0..n).filter(|&k| pl[k] == l && pr[k] == r).collect();
            if hits.len() == 1 {
                Ok(hits[0])
            } else {
                Err(BaseError::Factorization {
                    count: hits.len(),
                    detail: what.to_string(),
                })
            }
        };
        let objects = (0..left.dom.num_objects())
            .map(|w| {
                find(
                    apex.num_objects(),
                    &cone.proj_left.objects,
                    &cone.proj_right.objects,
                    left.objects[w],
                    right.objects[w],
                    &format!("at object `{}`", left.dom.objects[w]),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        let arrows = (0..left.dom.num_arrows())
            .map(|w| {
                find(
                    apex.num_arrows(),
                    &cone.proj_left.arrows,
                    &cone.proj_right.arrows,
                    left.arrows[w],
                    right.arrows[w],
                    &format!("at arrow `{}`", left.dom.arrows[w].name),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FinFunctor {
            dom: left.dom.clone(),
            cod: apex.clone(),
            objects,
            arrows,
        })
    }

    fn hom_set(&self, x: &CatObj, y: &CatObj) -> Result<Vec<FinFunctor>, BaseError> {
        let n = x.num_objects();
        let m = y.num_objects();
        let count = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if count > HOM_ENUMERATION_LIMIT as u128 {
            return Err(BaseError::TooLarge(format!("{m}^{n} object maps")));
        }
        let search = FunctorSearch::new(x, y);
        let mut out = Vec::new();
        if n > 0 && m == 0 {
            return Ok(out);
        }
        let mut objects = vec![0usize; n];
        let mut overflow = false;
        loop {
            search.arrows_over(&objects, None, &mut |arrows| {
                out.push(FinFunctor {
                    dom: x.clone(),
                    cod: y.clone(),
                    objects: objects.clone(),
                    arrows: arrows.to_vec(),
                });
                if out.len() > HOM_ENUMERATION_LIMIT {
                    overflow = true;
                    return false;
                }
                true
            });
            if overflow {
                return Err(BaseError::TooLarge("too many functors".into()));
            }
            let mut pos = n;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                objects[pos] += 1;
                if objects[pos] < m {
                    break;
                }
                objects[pos] = 0;
            }
        }
    }

    fn invert(&self, m: &FinFunctor) -> Result<FinFunctor, String> {
        let inv =
            |table: &[usize], n: usize, dl: &dyn Fn(usize) -> String, cl: &dyn Fn(usize) -> String, kind: &str| {
                let mut out = vec![usize::MAX; n];
                for (i, &t) in table.iter().enumerate() {
                    if out[t] != usize::MAX {
                        return Err(format!(
                            "{kind}s `{}` and `{}` are merged to `{}`",
                            dl(out[t]),
                            dl(i),
                            cl(t)
                        ));
                    }
                    out[t] = i;
                }
                if let Some(k) = out.iter().position(|&t| t == usize::MAX) {
                    return Err(format!("{kind} `{}` is missed", cl(k)));
                }
                Ok(out)
            };
        let objects = inv(
            &m.objects,
            m.cod.num_objects(),
            &|i| m.dom.objects[i].clone(),
            &|i| m.cod.objects[i].clone(),
            "object",
        )?;
        let arrows = inv(
            &m.arrows,
            m.cod.num_arrows(),
            &|i| m.dom.arrows[i].name.clone(),
            &|i| m.cod.arrows[i].name.clone(),
            "arrow",
        )?;
        Ok(FinFunctor {
            dom: m.cod.clone(),
            cod: m.dom.clone(),
            objects,
            arrows,
        })
    }

    fn to_unit(&self, x: &CatObj) -> FinFunctor {
        FinFunctor {
            dom: x.clone(),
            cod: self.unit.clone(),
            objects: vec![0; x.num_objects()],
            arrows: vec![0; x.num_arrows()],
        }
    }

    fn size(&self, x: &CatObj) -> usize {
        x.num_objects()
    }

    fn describe_obj(&self, x: &CatObj) -> String {
        format!("{x:?}")
    }

    fn element_label(&self, x: &CatObj, e: &FinFunctor) -> String {
        e.objects.first().map(|&o| x.objects[o].clone()).unwrap_or_default()
    }

    fn diff_witness(&self, f: &FinFunctor, g: &FinFunctor) -> String {
        if f.dom != g.dom || f.cod != g.cod {
            return "functors are not parallel".into();
        }
        if let Some(i) = (0..f.objects.len()).find(|&i| f.objects[i] != g.objects[i]) {
            return format!(
                "at object `{}`: `{}` vs `{}`",
                f.dom.objects[i], f.cod.objects[f.objects[i]], g.cod.objects[g.objects[i]]
            );
        }
        if let Some(i) = (0..f.arrows.len()).find(|&i| f.arrows[i] != g.arrows[i]) {
            return format!(
                "at arrow `{}`: `{}` vs `{}`",
                f.dom.arrows[i].name, f.cod.arrows[f.arrows[i]].name, g.cod.arrows[g.arrows[i]].name
            );
        }
        "functors agree".into()
    }

    fn sample_object(&self, rng: &mut dyn RngCore, max_size: usize) -> CatObj {
        let n = rng.random_range(0..=max_size);
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let cat = match rng.random_range(0..4) {
            0 => FiniteCategory::discrete(&labels),
            1 => FiniteCategory::codiscrete(&labels),
            2 => FiniteCategory::chain(n),
            _ => {
                let mut rel = vec![vec![false; n]; n];
                for (i, row) in rel.iter_mut().enumerate() {
                    row[i] = true;
                }
                for i in 0..n {
                    for j in i + 1..n {
                        rel[i][j] = rng.random_bool(0.4);
                    }
                }
                // transitive closure
                for k in 0..n {
                    for i in 0..n {
                        for j in 0..n {
                            if rel[i][k] && rel[k][j] {
                                rel[i][j] = true;
                            }
                        }
                    }
                }
                FiniteCategory::preorder(n, |a, b| rel[a][b]).expect("closed relation")
            }
        };
        Arc::new(cat)
    }

    fn sample_morphism(&self, rng: &mut dyn RngCore, x: &CatObj, y: &CatObj) -> Option<FinFunctor> {
        if y.num_objects() == 0 {
            return (x.num_objects() == 0).then(|| self.reindex(x.clone(), y.clone()));
        }
        let search = FunctorSearch::new(x, y);
        for _ in 0..8 {
            let objects: Vec<usize> = (0..x.num_objects())
                .map(|_| rng.random_range(0..y.num_objects()))
                .collect();
            let mut found = None;
            search.arrows_over(&objects, Some(&mut *rng), &mut |arrows| {
                found = Some(arrows.to_vec());
                false
            });
            if let Some(arrows) = found {
                return Some(FinFunctor {
                    dom: x.clone(),
                    cod: y.clone(),
                    objects,
                    arrows,
                });
            }
        }
        let o = rng.random_range(0..y.num_objects());
        Some(FinFunctor {
            dom: x.clone(),
            cod: y.clone(),
            objects: vec![o; x.num_objects()],
            arrows: vec![y.identity(o); x.num_arrows()],
        })
    }
}
