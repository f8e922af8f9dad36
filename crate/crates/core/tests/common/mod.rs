//! Independent oracles shared by the integration and acceptance tests. They
//! work on plain tables and never call the constructions under test.
#![allow(dead_code)]

use std::collections::BTreeMap;

use std::sync::Arc;

use grothendieck::corpus::{
    base_library, endofunctors, BlockPseudofunctor, BlockShape, Enriched, OrdinaryPseudofunctor, OrdinaryTransformation,
};
use grothendieck::enriched::{UMor, VCategory};
use grothendieck::opfib::Opfibration;
use grothendieck::pseudo::{Modification, Pseudonatural};
use grothendieck::vbase::FinSet;
use grothendieck::vbase::{BaseCategory, FinFunctor, FiniteCategory};
use rand_chacha::ChaCha8Rng;

/// The classical Grothendieck construction of a pseudofunctor into
/// ordinary categories: objects `(x, b)`, arrows `(f, u)` with
/// `u: G_f x → y`.
pub struct Classical {
    /// `(x label, b label)`
    pub objects: Vec<(String, String)>,
    /// arrows `(f, u)` per pair of object indices
    pub homs: BTreeMap<(usize, usize), Vec<(usize, usize)>>,
    /// `(x, b)` per object
    coords: Vec<(usize, usize)>,
}

impl Classical {
    pub fn new(op: &OrdinaryPseudofunctor) -> Self {
        let b = &op.base;
        let mut objects = Vec::new();
        let mut coords = Vec::new();
        for o in 0..b.num_objects() {
            let d = &op.fibers[o];
            for x in 0..d.num_objects() {
                objects.push((d.object_label(x).to_string(), b.object_label(o).to_string()));
                coords.push((x, o));
            }
        }
        let mut homs = BTreeMap::new();
        for (i, &(x, bo)) in coords.iter().enumerate() {
            for (j, &(y, co)) in coords.iter().enumerate() {
                let mut arrows = Vec::new();
                for f in 0..b.num_arrows() {
                    let a = b.arrow(f);
                    if a.dom != bo || a.cod != co {
                        continue;
                    }
                    let fx = op.functors[f].objects[x];
                    for u in 0..op.fibers[co].num_arrows() {
                        let ua = op.fibers[co].arrow(u);
                        if ua.dom == fx && ua.cod == y {
                            arrows.push((f, u));
                        }
                    }
                }
                homs.insert((i, j), arrows);
            }
        }
        Classical { objects, homs, coords }
    }

    /// `(g, v) ∘ (f, u) = (gf, v ∘ G_g u ∘ θ_{f,g,x})` with source `(x, b)`.
    pub fn compose(
        &self,
        op: &OrdinaryPseudofunctor,
        src: usize,
        g: (usize, usize),
        f: (usize, usize),
    ) -> (usize, usize) {
        let b = &op.base;
        let x = self.coords[src].0;
        let gf = b.compose(g.0, f.0).expect("composable");
        let d = &op.fibers[b.arrow(g.0).cod];
        let theta = op.theta[&(f.0, g.0)][x];
        let ggu = op.functors[g.0].arrows[f.1];
        let w = d.compose(ggu, theta).expect("θ then G_g u");
        (gf, d.compose(g.1, w).expect("then v"))
    }
}

/// Brute-force unit and associativity laws of a Set-enriched category,
/// read directly off the tables.
pub fn set_category_lawful(c: &VCategory<FinSet>) -> bool {
    let n = c.len();
    let comp = |x: usize, y: usize, z: usize, g: usize, f: usize| {
        let m = c.composition(x, y, z);
        let size_f = c.hom(x, y).len();
        m.table[g * size_f + f]
    };
    let unit = |x: usize| c.identity(x).table[0];
    for x in 0..n {
        for y in 0..n {
            for f in 0..c.hom(x, y).len() {
                if comp(x, y, y, unit(y), f) != f || comp(x, x, y, f, unit(x)) != f {
                    return false;
                }
                for z in 0..n {
                    for g in 0..c.hom(y, z).len() {
                        let gf = comp(x, y, z, g, f);
                        for w in 0..n {
                            for h in 0..c.hom(z, w).len() {
                                let left = comp(x, z, w, h, gf);
                                let right = comp(x, y, w, comp(y, z, w, h, g), f);
                                if left != right {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// `χ: e → e'` is opcartesian iff every `φ: e → d` and `g: pe' → pd` with
/// `g ∘ pχ = pφ` factor through `χ` by exactly one `g̃` over `g`.
pub fn classical_opcartesian(of: &Opfibration<FinSet>, chi: &UMor<FinSet>) -> bool {
    let e_cat = of.total();
    let b_cat = of.base_category();
    let p = &of.p;
    let pchi = p.map_element(chi).unwrap();
    for d in 0..e_cat.len() {
        let pd = p.map_object(d);
        for phi in e_cat.underlying_hom(chi.dom, d).unwrap() {
            let pphi = p.map_element(&phi).unwrap();
            for g in b_cat.underlying_hom(p.map_object(chi.cod), pd).unwrap() {
                if b_cat.compose_elements(&g, &pchi).unwrap() != pphi {
                    continue;
                }
                let count = e_cat
                    .underlying_hom(chi.cod, d)
                    .unwrap()
                    .into_iter()
                    .filter(|gt| p.map_element(gt).unwrap() == g && e_cat.compose_elements(gt, chi).unwrap() == phi)
                    .count();
                if count != 1 {
                    return false;
                }
            }
        }
    }
    true
}

pub fn library(name: &str) -> FiniteCategory {
    base_library().into_iter().find(|(n, _)| *n == name).unwrap().1
}

/// Three block pseudofunctors `F, G, H` of one shape with every `C`-colour
/// of transformation `F ⇒ G` and one `G ⇒ H`.
pub struct Cells<V: BaseCategory> {
    pub blocks: Vec<BlockPseudofunctor>,
    pub enriched: Vec<Enriched<V>>,
    /// `(σ, ordinary, enriched)` for `F ⇒ G`
    pub fg: Vec<(FinFunctor, OrdinaryTransformation, Arc<Pseudonatural<V>>)>,
    pub gh: Arc<Pseudonatural<V>>,
    pub c: Arc<FiniteCategory>,
}

pub fn cells<V: BaseCategory>(v: &V, base: &str, c: &str, rng: &mut ChaCha8Rng) -> Cells<V> {
    let base = Arc::new(library(base));
    let c = Arc::new(library(c));
    let shape = BlockShape {
        base: base.clone(),
        points: vec![1; base.num_objects()],
        action: vec![vec![0]; base.num_arrows()],
        c: c.clone(),
    };
    let blocks: Vec<_> = (0..3)
        .map(|_| BlockPseudofunctor::random(&shape, rng, 2 * c.num_objects()))
        .collect();
    let enriched: Vec<_> = blocks.iter().map(|b| b.ordinary.enrich(v).unwrap()).collect();
    let sigmas = endofunctors(&c);
    let fg = sigmas
        .iter()
        .map(|s| {
            let t = blocks[0].random_transformation(&blocks[1], s, rng);
            let e = Arc::new(t.enrich(&enriched[0], &enriched[1]).unwrap());
            (s.clone(), t, e)
        })
        .collect();
    let id = FinFunctor::identity(&c);
    let gh = Arc::new(
        blocks[1]
            .random_transformation(&blocks[2], &id, rng)
            .enrich(&enriched[1], &enriched[2])
            .unwrap(),
    );
    Cells {
        blocks,
        enriched,
        fg,
        gh,
        c,
    }
}

pub fn modification<V: BaseCategory>(cs: &Cells<V>, i: usize, j: usize, tau: &[usize]) -> Modification<V> {
    let (a, b) = (&cs.fg[i], &cs.fg[j]);
    cs.blocks[0]
        .modification(&cs.blocks[1], &a.1, &b.1, tau)
        .enrich(&cs.enriched[1], &a.2, &b.2)
        .unwrap()
}
