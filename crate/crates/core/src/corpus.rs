//! Deterministic random fixtures: small base categories, pseudofunctors with
//! non-identity coherent `ξ` and `θ`, transformations, modifications and
//! opfibrations with non-canonical chosen lifts.
//!
//! Block pseudofunctors have fibers `D_b = S_b × C × K(n_b)` where `S` is a
//! set-valued functor on the base, `C` a small category and `K(n)` the
//! codiscrete category on `n` objects. `F_f` acts as `S_f × 1_C` and moves the
//! `K` coordinate by an arbitrary map, so `ξ` and `θ` are the unique arrows
//! of `K` between the displaced indices.
//!
//! Max-enriched fibers are V-categories over finite categories with objects
//! `(i, j)`, `hom((i,j),(i',j')) = M` when `i ≤ i'` (empty otherwise) and
//! composition `max: M × M → M` on a chain `M`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::{Rng, RngCore};

use crate::correspondence::EquivalenceFixtures;
use crate::enriched::{VCategory, VFunctor};
use crate::error::{shape, Result};
use crate::freeunder::{free_functor, free_vcategory, FreeCategory, OrdinaryCategory};
use crate::gr::{gr_projection, grothendieck, GrTotalCategory};
use crate::opfib::{Lift, Opfibration};
use crate::pseudo::{Modification, Pseudofunctor, Pseudonatural};
use crate::vbase::{Arrow, BaseCategory, FinCat, FinFunctor, FiniteCategory};

/// Named small categories, each with at most 3 objects and 6 arrows.
pub fn base_library() -> Vec<(&'static str, FiniteCategory)> {
    let z = |n: usize| {
        let names: Vec<String> = (0..n)
            .map(|i| if i == 0 { "e".to_string() } else { format!("r{i}") })
            .collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteCategory::monoid(&refs, &table).expect("cyclic group")
    };
    vec![
        ("terminal", FiniteCategory::terminal()),
        ("arrow", FiniteCategory::walking_arrow()),
        ("chain3", FiniteCategory::chain(3)),
        (
            "span",
            FiniteCategory::from_names(&["a", "b", "c"], &[("f", "a", "b"), ("g", "a", "c")], &[]).expect("span"),
        ),
        (
            "cospan",
            FiniteCategory::from_names(&["a", "b", "c"], &[("f", "a", "c"), ("g", "b", "c")], &[]).expect("cospan"),
        ),
        ("z2", z(2)),
        ("z3", z(3)),
        (
            "idempotent",
            FiniteCategory::monoid(&["e", "p"], &[vec![0, 1], vec![1, 1]]).expect("idempotent"),
        ),
        (
            "iso",
            FiniteCategory::from_names(
                &["a", "b"],
                &[("f", "a", "b"), ("g", "b", "a")],
                &[("g", "f", "1a"), ("f", "g", "1b")],
            )
            .expect("walking iso"),
        ),
        (
            "parallel",
            FiniteCategory::from_names(&["a", "b"], &[("f", "a", "b"), ("g", "a", "b")], &[]).expect("parallel pair"),
        ),
    ]
}

/// Categories used as the `C` coordinate of block fibers.
fn fiber_library() -> Vec<FiniteCategory> {
    vec![
        FiniteCategory::terminal(),
        FiniteCategory::walking_arrow(),
        FiniteCategory::monoid(&["e", "s"], &[vec![0, 1], vec![1, 0]]).expect("z2"),
        FiniteCategory::monoid(&["e", "p"], &[vec![0, 1], vec![1, 1]]).expect("idempotent"),
    ]
}

/// A pseudofunctor into ordinary finite categories.
#[derive(Clone, Debug)]
pub struct OrdinaryPseudofunctor {
    pub base: Arc<OrdinaryCategory>,
    pub fibers: Vec<Arc<FiniteCategory>>,
    pub functors: Vec<FinFunctor>,
    /// `xi[b][x]`: arrow `G_{1_b} x → x` of `D_b`.
    pub xi: Vec<Vec<usize>>,
    /// `theta[(f,g)][x]`: arrow `G_{gf} x → G_g G_f x` of `D_d`.
    pub theta: BTreeMap<(usize, usize), Vec<usize>>,
}

/// A pseudofunctor together with the free V-categories of its fibers.
#[derive(Clone, Debug)]
pub struct Enriched<V: BaseCategory> {
    pub pseudofunctor: Arc<Pseudofunctor<V>>,
    pub frees: Vec<FreeCategory<V>>,
}

impl OrdinaryPseudofunctor {
    /// Applies the free V-category construction fiberwise.
    pub fn enrich<V: BaseCategory>(&self, v: &V) -> Result<Enriched<V>> {
        let frees = self
            .fibers
            .iter()
            .map(|d| free_vcategory(d, v))
            .collect::<Result<Vec<_>>>()?;
        let functors = self
            .functors
            .iter()
            .enumerate()
            .map(|(f, g)| {
                let a = self.base.arrow(f);
                free_functor(g, &frees[a.dom], &frees[a.cod])
            })
            .collect::<Result<Vec<_>>>()?;
        let elem = |b: usize, u: usize| frees[b].arrow_element(u).elem;
        let xi = self
            .xi
            .iter()
            .enumerate()
            .map(|(b, comps)| comps.iter().map(|&u| elem(b, u)).collect())
            .collect();
        let theta = self
            .theta
            .iter()
            .map(|(&(f, g), comps)| {
                let d = self.base.arrow(g).cod;
                ((f, g), comps.iter().map(|&u| elem(d, u)).collect())
            })
            .collect();
        let pf = Pseudofunctor::new(
            self.base.clone(),
            frees.iter().map(|f| f.vcat.clone()).collect(),
            functors,
            xi,
            theta,
        )?;
        Ok(Enriched {
            pseudofunctor: Arc::new(pf),
            frees,
        })
    }
}

/// An ordinary pseudonatural transformation between block pseudofunctors.
#[derive(Clone, Debug)]
pub struct OrdinaryTransformation {
    pub components: Vec<FinFunctor>,
    /// `squares[f][x]`: arrow `G'_f α_b x → α_c G_f x` of `D'_c`.
    pub squares: Vec<Vec<usize>>,
}

impl OrdinaryTransformation {
    pub fn enrich<V: BaseCategory>(&self, source: &Enriched<V>, target: &Enriched<V>) -> Result<Pseudonatural<V>> {
        let base = &source.pseudofunctor.base;
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(b, a)| free_functor(a, &source.frees[b], &target.frees[b]))
            .collect::<Result<Vec<_>>>()?;
        let squares = self
            .squares
            .iter()
            .enumerate()
            .map(|(f, comps)| {
                let c = base.arrow(f).cod;
                comps.iter().map(|&u| target.frees[c].arrow_element(u).elem).collect()
            })
            .collect();
        Pseudonatural::new(
            source.pseudofunctor.clone(),
            target.pseudofunctor.clone(),
            components,
            squares,
        )
    }
}

/// An ordinary modification: `components[b][x]` is an arrow of `D'_b`.
#[derive(Clone, Debug)]
pub struct OrdinaryModification {
    pub components: Vec<Vec<usize>>,
}

impl OrdinaryModification {
    pub fn enrich<V: BaseCategory>(
        &self,
        target: &Enriched<V>,
        alpha: &Arc<Pseudonatural<V>>,
        beta: &Arc<Pseudonatural<V>>,
    ) -> Result<Modification<V>> {
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(b, comps)| comps.iter().map(|&u| target.frees[b].arrow_element(u).elem).collect())
            .collect();
        Modification::new(alpha.clone(), beta.clone(), components)
    }
}

/// Shape of a block pseudofunctor: the set-valued functor `S`, the
/// category `C` and the codiscrete sizes.
#[derive(Clone, Debug)]
pub struct BlockShape {
    pub base: Arc<OrdinaryCategory>,
    /// `S_b` as a list of points.
    pub points: Vec<usize>,
    /// `action[f][s] = S_f s`
    pub action: Vec<Vec<usize>>,
    pub c: Arc<FiniteCategory>,
}

impl BlockShape {
    /// `S` is `1`, `1 + 1` or `1 + B(r, -)`, so every fiber is nonempty.
    pub fn random(base: &Arc<OrdinaryCategory>, rng: &mut dyn RngCore, max_fiber: usize) -> Self {
        let terminal = |base: &Arc<OrdinaryCategory>| BlockShape {
            base: base.clone(),
            points: vec![1; base.num_objects()],
            action: vec![vec![0]; base.num_arrows()],
            c: Arc::new(FiniteCategory::terminal()),
        };
        let mut shape = terminal(base);
        let reps: Vec<usize> = (0..base.num_objects())
            .filter(|&r| (0..base.num_objects()).all(|b| base.hom(r, b).len() < max_fiber))
            .collect();
        match rng.random_range(0..3) {
            0 => {}
            1 if max_fiber >= 2 => {
                shape.points = vec![2; base.num_objects()];
                shape.action = vec![vec![0, 1]; base.num_arrows()];
            }
            _ => {
                if let Some(&r) = reps.choose(rng) {
                    let homs: Vec<Vec<usize>> = (0..base.num_objects()).map(|b| base.hom(r, b)).collect();
                    shape.points = homs.iter().map(|h| h.len() + 1).collect();
                    shape.action = (0..base.num_arrows())
                        .map(|f| {
                            let a = base.arrow(f);
                            std::iter::once(0)
                                .chain(homs[a.dom].iter().map(|&u| {
                                    let fu = base.compose(f, u).expect("composable");
                                    1 + homs[a.cod].iter().position(|&w| w == fu).expect("in hom")
                                }))
                                .collect()
                        })
                        .collect();
                }
            }
        }
        let biggest = shape.points.iter().copied().max().unwrap_or(1).max(1);
        let cs: Vec<FiniteCategory> = fiber_library()
            .into_iter()
            .filter(|c| c.num_objects() * biggest <= max_fiber)
            .collect();
        shape.c = Arc::new(cs.choose(rng).cloned().unwrap_or_else(FiniteCategory::terminal));
        shape
    }

    fn bound(&self, b: usize, max_fiber: usize) -> usize {
        let per = self.points[b] * self.c.num_objects();
        if per == 0 {
            1
        } else {
            (max_fiber / per).max(1)
        }
    }

    /// Random codiscrete sizes within `max_fiber` objects per fiber.
    pub fn random_sizes(&self, rng: &mut dyn RngCore, max_fiber: usize) -> Vec<usize> {
        (0..self.base.num_objects())
            .map(|b| rng.random_range(1..=self.bound(b, max_fiber)))
            .collect()
    }
}

/// `D = S_b × C × K(n)` with object `(s, c, i)` at `(s * |C| + c) * n + i`.
#[derive(Clone, Debug)]
struct Block {
    c: Arc<FiniteCategory>,
    n: usize,
    cat: Arc<FiniteCategory>,
}

impl Block {
    fn new(s: usize, c: &Arc<FiniteCategory>, n: usize) -> Self {
        let nc = c.num_objects();
        let mc = c.num_arrows();
        let mut objects = Vec::new();
        for k in 0..s * nc * n {
            objects.push(format!("x{k}"));
        }
        let mut arrows = Vec::new();
        let mut identities = vec![0; s * nc * n];
        for sp in 0..s {
            for u in 0..mc {
                let a = c.arrow(u);
                for i in 0..n {
                    for j in 0..n {
                        let dom = (sp * nc + a.dom) * n + i;
                        let cod = (sp * nc + a.cod) * n + j;
                        if c.is_identity(u) && i == j {
                            identities[dom] = arrows.len();
                        }
                        arrows.push(Arrow {
                            name: format!("u{}", arrows.len()),
                            dom,
                            cod,
                        });
                    }
                }
            }
        }
        let idx = |sp: usize, u: usize, i: usize, j: usize| ((sp * mc + u) * n + i) * n + j;
        let mut comps = Vec::new();
        for sp in 0..s {
            for u in 0..mc {
                for v in 0..mc {
                    if let Some(w) = c.compose(v, u) {
                        for i in 0..n {
                            for j in 0..n {
                                for k in 0..n {
                                    comps.push((idx(sp, v, j, k), idx(sp, u, i, j), idx(sp, w, i, k)));
                                }
                            }
                        }
                    }
                }
            }
        }
        let cat = Arc::new(FiniteCategory::new(objects, arrows, identities, &comps).expect("block category"));
        Block { c: c.clone(), n, cat }
    }

    fn object(&self, s: usize, c: usize, i: usize) -> usize {
        (s * self.c.num_objects() + c) * self.n + i
    }

    fn coords(&self, x: usize) -> (usize, usize, usize) {
        let i = x % self.n;
        let rest = x / self.n;
        (rest / self.c.num_objects(), rest % self.c.num_objects(), i)
    }

    fn arrow(&self, s: usize, u: usize, i: usize, j: usize) -> usize {
        ((s * self.c.num_arrows() + u) * self.n + i) * self.n + j
    }

    fn arrow_coords(&self, a: usize) -> (usize, usize, usize, usize) {
        let n = self.n;
        let j = a % n;
        let i = (a / n) % n;
        let rest = a / (n * n);
        (rest / self.c.num_arrows(), rest % self.c.num_arrows(), i, j)
    }

    /// The arrow `(s, 1_c, i → j)`.
    fn shift(&self, s: usize, c: usize, i: usize, j: usize) -> usize {
        self.arrow(s, self.c.identity(c), i, j)
    }
}

/// A block functor `(s, c, i) ↦ (act s, σ c, φ(s, c, i))`.
fn block_functor(
    src: &Block,
    tgt: &Block,
    act: &dyn Fn(usize) -> usize,
    sigma: &FinFunctor,
    phi: &[usize],
) -> FinFunctor {
    let objects: Vec<usize> = (0..src.cat.num_objects())
        .map(|x| {
            let (s, c, _) = src.coords(x);
            tgt.object(act(s), sigma.objects[c], phi[x])
        })
        .collect();
    let arrows: Vec<usize> = (0..src.cat.num_arrows())
        .map(|a| {
            let (s, u, i, j) = src.arrow_coords(a);
            let arr = src.c.arrow(u);
            let (x, y) = (src.object(s, arr.dom, i), src.object(s, arr.cod, j));
            tgt.arrow(act(s), sigma.arrows[u], phi[x], phi[y])
        })
        .collect();
    FinFunctor::new(src.cat.clone(), tgt.cat.clone(), objects, arrows).expect("block functor")
}

/// A block pseudofunctor with its displacement tables.
#[derive(Clone, Debug)]
pub struct BlockPseudofunctor {
    pub shape: BlockShape,
    pub sizes: Vec<usize>,
    /// `phi[f][x]`: `K` coordinate of `G_f x`.
    pub phi: Vec<Vec<usize>>,
    pub ordinary: OrdinaryPseudofunctor,
    blocks: Vec<Block>,
}

impl BlockPseudofunctor {
    pub fn new(shape: &BlockShape, sizes: Vec<usize>, phi: Vec<Vec<usize>>) -> Result<Self> {
        let base = shape.base.clone();
        let blocks: Vec<Block> = (0..base.num_objects())
            .map(|b| Block::new(shape.points[b], &shape.c, sizes[b]))
            .collect();
        let id_c = FinFunctor::identity(&shape.c);
        let functors: Vec<FinFunctor> = (0..base.num_arrows())
            .map(|f| {
                let a = base.arrow(f);
                let act = |s: usize| shape.action[f][s];
                block_functor(&blocks[a.dom], &blocks[a.cod], &act, &id_c, &phi[f])
            })
            .collect();
        let xi = (0..base.num_objects())
            .map(|b| {
                let blk = &blocks[b];
                let g = &functors[base.identity(b)];
                (0..blk.cat.num_objects())
                    .map(|x| {
                        let (s, c, i) = blk.coords(x);
                        let (s2, c2, i2) = blk.coords(g.objects[x]);
                        debug_assert_eq!((s, c), (s2, c2));
                        blk.shift(s, c, i2, i)
                    })
                    .collect()
            })
            .collect();
        let mut theta = BTreeMap::new();
        for (f, g) in base.composable_pairs() {
            let gf = base.compose(g, f).expect("composable");
            let d = base.arrow(g).cod;
            let blk = &blocks[d];
            let src = base.arrow(f).dom;
            let comps = (0..blocks[src].cat.num_objects())
                .map(|x| {
                    let (s, c, i) = blk.coords(functors[gf].objects[x]);
                    let (s2, c2, j) = blk.coords(functors[g].objects[functors[f].objects[x]]);
                    if (s, c) != (s2, c2) {
                        return Err(shape_err());
                    }
                    Ok(blk.shift(s, c, i, j))
                })
                .collect::<Result<Vec<_>>>()?;
            theta.insert((f, g), comps);
        }
        let ordinary = OrdinaryPseudofunctor {
            base,
            fibers: blocks.iter().map(|b| b.cat.clone()).collect(),
            functors,
            xi,
            theta,
        };
        Ok(BlockPseudofunctor {
            shape: shape.clone(),
            sizes,
            phi,
            ordinary,
            blocks,
        })
    }

    /// Random codiscrete sizes and displacements over `shape`.
    pub fn random(shape: &BlockShape, rng: &mut dyn RngCore, max_fiber: usize) -> Self {
        let sizes = shape.random_sizes(rng, max_fiber);
        Self::random_with_sizes(shape, sizes, rng)
    }

    pub fn random_with_sizes(shape: &BlockShape, sizes: Vec<usize>, rng: &mut dyn RngCore) -> Self {
        let base = &shape.base;
        let nc = shape.c.num_objects();
        let phi = (0..base.num_arrows())
            .map(|f| {
                let a = base.arrow(f);
                let count = shape.points[a.dom] * nc * sizes[a.dom];
                (0..count).map(|_| rng.random_range(0..sizes[a.cod])).collect()
            })
            .collect();
        Self::new(shape, sizes, phi).expect("random block pseudofunctor")
    }

    /// A random transformation `self ⇒ other` over the same shape, acting by
    /// `σ` on the `C` coordinate.
    pub fn random_transformation(
        &self,
        other: &BlockPseudofunctor,
        sigma: &FinFunctor,
        rng: &mut dyn RngCore,
    ) -> OrdinaryTransformation {
        let base = &self.shape.base;
        let components: Vec<FinFunctor> = (0..base.num_objects())
            .map(|b| {
                let (src, tgt) = (&self.blocks[b], &other.blocks[b]);
                let psi: Vec<usize> = (0..src.cat.num_objects()).map(|_| rng.random_range(0..tgt.n)).collect();
                block_functor(src, tgt, &|s| s, sigma, &psi)
            })
            .collect();
        let squares = (0..base.num_arrows())
            .map(|f| {
                let a = base.arrow(f);
                let tgt = &other.blocks[a.cod];
                (0..self.blocks[a.dom].cat.num_objects())
                    .map(|x| {
                        let via_g = other.ordinary.functors[f].objects[components[a.dom].objects[x]];
                        let via_f = components[a.cod].objects[self.ordinary.functors[f].objects[x]];
                        let (s, c, i) = tgt.coords(via_g);
                        let (_, _, j) = tgt.coords(via_f);
                        tgt.shift(s, c, i, j)
                    })
                    .collect()
            })
            .collect();
        OrdinaryTransformation { components, squares }
    }

    /// The arrow of `D_b` agreeing with `a` except that its `C` coordinate
    /// is `u`, when `u` has the same endpoints.
    pub fn recolor(&self, b: usize, a: usize, u: usize) -> Option<usize> {
        let blk = &self.blocks[b];
        let (s, old, i, j) = blk.arrow_coords(a);
        let (x, y) = (blk.c.arrow(old), blk.c.arrow(u));
        (x.dom == y.dom && x.cod == y.cod).then(|| blk.arrow(s, u, i, j))
    }

    /// The `C` coordinate of an arrow of `D_b`.
    pub fn color(&self, b: usize, a: usize) -> usize {
        self.blocks[b].arrow_coords(a).1
    }

    /// The modification `α ⇛ β` with components `(s, τ_c, i → j)`.
    pub fn modification(
        &self,
        other: &BlockPseudofunctor,
        alpha: &OrdinaryTransformation,
        beta: &OrdinaryTransformation,
        tau: &[usize],
    ) -> OrdinaryModification {
        let components = (0..self.shape.base.num_objects())
            .map(|b| {
                let tgt = &other.blocks[b];
                (0..self.blocks[b].cat.num_objects())
                    .map(|x| {
                        let (s, c, _) = self.blocks[b].coords(x);
                        let (_, _, i) = tgt.coords(alpha.components[b].objects[x]);
                        let (_, _, j) = tgt.coords(beta.components[b].objects[x]);
                        tgt.arrow(s, tau[c], i, j)
                    })
                    .collect()
            })
            .collect();
        OrdinaryModification { components }
    }
}

fn shape_err() -> crate::error::Error {
    shape("block functors do not compose strictly on the S and C coordinates")
}

/// Endofunctors of `c` and the natural transformations between them, by
/// exhaustive search.
pub fn endofunctors(c: &Arc<FiniteCategory>) -> Vec<FinFunctor> {
    FinCat::new().hom_set(c, c).unwrap_or_default()
}

/// Components `τ_c: σ c → σ' c` of every natural transformation `σ ⇒ σ'`.
pub fn natural_transformations(sigma: &FinFunctor, sigma2: &FinFunctor) -> Vec<Vec<usize>> {
    let c = &sigma.dom;
    let d = &sigma.cod;
    let mut out = Vec::new();
    let choices: Vec<Vec<usize>> = (0..c.num_objects())
        .map(|o| d.hom(sigma.objects[o], sigma2.objects[o]))
        .collect();
    let mut pick = vec![0usize; choices.len()];
    if choices.iter().any(|v| v.is_empty()) {
        return out;
    }
    loop {
        let tau: Vec<usize> = pick.iter().enumerate().map(|(o, &k)| choices[o][k]).collect();
        let natural = (0..c.num_arrows()).all(|u| {
            let a = c.arrow(u);
            d.compose(sigma2.arrows[u], tau[a.dom]) == d.compose(tau[a.cod], sigma.arrows[u])
        });
        if natural {
            out.push(tau);
        }
        let mut k = 0;
        loop {
            if k == pick.len() {
                return out;
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

/// A max-enriched V-category over finite categories; see the module docs.
pub fn max_enriched(chain: usize, copies: usize, m: usize) -> Result<Arc<VCategory<FinCat>>> {
    let v = FinCat::new();
    let mcat = Arc::new(FiniteCategory::chain(m));
    let empty = Arc::new(FiniteCategory::discrete(&[]));
    let n = chain * copies;
    let coords = |x: usize| (x / copies, x % copies);
    let labels = (0..n)
        .map(|x| {
            let (i, j) = coords(x);
            format!("m{i}.{j}")
        })
        .collect();
    let hom = |x: usize, y: usize| {
        if coords(x).0 <= coords(y).0 {
            mcat.clone()
        } else {
            empty.clone()
        }
    };
    let mut homs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            homs.push(hom(x, y));
        }
    }
    let bottom = FinFunctor::new(v.unit(), mcat.clone(), vec![0], vec![mcat.identity(0)])?;
    let identities = vec![bottom; n];
    let mut compositions = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let dom = v.tensor(&hom(y, z), &hom(x, y));
                let cod = hom(x, z);
                compositions.push(max_functor(&dom, &cod, m)?);
            }
        }
    }
    Ok(Arc::new(VCategory::new(v, labels, homs, identities, compositions)?))
}

/// `max: M × M → M` on the chain `M`, or the empty functor out of `∅`.
fn max_functor(dom: &Arc<FiniteCategory>, cod: &Arc<FiniteCategory>, m: usize) -> Result<FinFunctor> {
    if dom.num_objects() == 0 {
        return Ok(FinFunctor::new(dom.clone(), cod.clone(), vec![], vec![])?);
    }
    let objects = (0..dom.num_objects()).map(|o| (o / m).max(o % m)).collect();
    let chain = FiniteCategory::chain(m);
    let mb = chain.num_arrows();
    let arrows = (0..dom.num_arrows())
        .map(|a| {
            let (u, w) = (chain.arrow(a / mb), chain.arrow(a % mb));
            cod.hom(u.dom.max(w.dom), u.cod.max(w.cod))[0]
        })
        .collect();
    Ok(FinFunctor::new(dom.clone(), cod.clone(), objects, arrows)?)
}

/// Max-enriched pseudofunctor data: every fiber has the same chain length,
/// `F_f (i, j) = (i, φ_f(i, j))` and every `ξ`, `θ` is the bottom element.
#[derive(Clone, Debug)]
pub struct MaxPseudofunctor {
    pub chain: usize,
    pub copies: Vec<usize>,
    pub m: usize,
    pub phi: Vec<Vec<usize>>,
    pub pseudofunctor: Arc<Pseudofunctor<FinCat>>,
}

fn relabel_functor(
    src: &Arc<VCategory<FinCat>>,
    tgt: &Arc<VCategory<FinCat>>,
    obj_map: Vec<usize>,
) -> Result<VFunctor<FinCat>> {
    let v = src.base();
    let mut homs = Vec::with_capacity(src.len() * src.len());
    for x in 0..src.len() {
        for y in 0..src.len() {
            homs.push(v.identity(src.hom(x, y)));
        }
    }
    VFunctor::new(src.clone(), tgt.clone(), obj_map, homs)
}

/// Object map `(i, j) ↦ (i, t[x])`.
fn shifted(chain_copies_src: usize, chain_copies_tgt: usize, table: &[usize]) -> Vec<usize> {
    table
        .iter()
        .enumerate()
        .map(|(x, &j)| (x / chain_copies_src) * chain_copies_tgt + j)
        .collect()
}

impl MaxPseudofunctor {
    pub fn new(
        base: &Arc<OrdinaryCategory>,
        chain: usize,
        copies: Vec<usize>,
        m: usize,
        phi: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let fibers = copies
            .iter()
            .map(|&k| max_enriched(chain, k, m))
            .collect::<Result<Vec<_>>>()?;
        let functors = (0..base.num_arrows())
            .map(|f| {
                let a = base.arrow(f);
                let om = shifted(copies[a.dom], copies[a.cod], &phi[f]);
                relabel_functor(&fibers[a.dom], &fibers[a.cod], om)
            })
            .collect::<Result<Vec<_>>>()?;
        let bottom = fibers[0].identity(0).clone();
        let xi = fibers.iter().map(|c| vec![bottom.clone(); c.len()]).collect();
        let theta = base
            .composable_pairs()
            .into_iter()
            .map(|(f, g)| ((f, g), vec![bottom.clone(); fibers[base.arrow(f).dom].len()]))
            .collect();
        let pf = Pseudofunctor::new(base.clone(), fibers, functors, xi, theta)?;
        Ok(MaxPseudofunctor {
            chain,
            copies,
            m,
            phi,
            pseudofunctor: Arc::new(pf),
        })
    }

    pub fn random(base: &Arc<OrdinaryCategory>, rng: &mut dyn RngCore, max_fiber: usize) -> Self {
        let chain = rng.random_range(1..=max_fiber.clamp(1, 2));
        let copies: Vec<usize> = (0..base.num_objects())
            .map(|_| rng.random_range(1..=(max_fiber / chain).max(1)))
            .collect();
        Self::random_with(base, chain, copies, rng)
    }

    pub fn random_with(base: &Arc<OrdinaryCategory>, chain: usize, copies: Vec<usize>, rng: &mut dyn RngCore) -> Self {
        let m = 2;
        let phi = (0..base.num_arrows())
            .map(|f| {
                let a = base.arrow(f);
                (0..chain * copies[a.dom])
                    .map(|_| rng.random_range(0..copies[a.cod]))
                    .collect()
            })
            .collect();
        Self::new(base, chain, copies, m, phi).expect("max-enriched pseudofunctor")
    }

    /// `α_b (i, j) = (i, ψ_b(i, j))` with bottom squares.
    pub fn random_transformation(
        &self,
        other: &MaxPseudofunctor,
        rng: &mut dyn RngCore,
    ) -> Result<Pseudonatural<FinCat>> {
        let (s, t) = (&self.pseudofunctor, &other.pseudofunctor);
        let components = (0..s.base.num_objects())
            .map(|b| {
                let table: Vec<usize> = (0..s.fibers[b].len())
                    .map(|_| rng.random_range(0..other.copies[b]))
                    .collect();
                relabel_functor(
                    &s.fibers[b],
                    &t.fibers[b],
                    shifted(self.copies[b], other.copies[b], &table),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let bottom = s.fibers[0].identity(0).clone();
        let squares = (0..s.base.num_arrows())
            .map(|f| vec![bottom.clone(); s.fibers[s.base.arrow(f).dom].len()])
            .collect();
        Pseudonatural::new(s.clone(), t.clone(), components, squares)
    }

    /// The modification with bottom components.
    pub fn bottom_modification(
        alpha: &Arc<Pseudonatural<FinCat>>,
        beta: &Arc<Pseudonatural<FinCat>>,
    ) -> Result<Modification<FinCat>> {
        let bottom = alpha.source.fibers[0].identity(0).clone();
        let components = alpha
            .source
            .fibers
            .iter()
            .map(|c| vec![bottom.clone(); c.len()])
            .collect();
        Modification::new(alpha.clone(), beta.clone(), components)
    }
}

/// Replaces chosen lifts of `Gr F` by `inj_f(u) ∘ …` for random isomorphisms
/// `u: F_f x → y'` in `F_c`, giving opcartesian but non-canonical lifts.
pub fn relift<V: BaseCategory>(
    pf: &Pseudofunctor<V>,
    gr: &GrTotalCategory<V>,
    of: &Opfibration<V>,
    rng: &mut dyn RngCore,
) -> Result<Opfibration<V>> {
    let mut lifts = Vec::with_capacity(gr.len());
    for (i, &(x, b)) in gr.objects.iter().enumerate() {
        let mut ls = Vec::new();
        for l in &of.lifts()[i] {
            let f = (0..pf.base.num_arrows()).find(|&f| {
                pf.base.arrow(f).dom == b && gr.summand(i, l.object, f).is_some() && {
                    let c = pf.base.arrow(f).cod;
                    gr.object(pf.functors[f].map_object(x), c) == l.object
                        && gr
                            .inject(
                                i,
                                l.object,
                                f,
                                &pf.fibers[c].identity_element(pf.functors[f].map_object(x)),
                            )
                            .ok()
                            .as_ref()
                            == Some(&l.chi)
                }
            });
            let Some(f) = f else {
                ls.push(l.clone());
                continue;
            };
            let c = pf.base.arrow(f).cod;
            let fc = &pf.fibers[c];
            let fx = pf.functors[f].map_object(x);
            let mut isos = Vec::new();
            for y in 0..fc.len() {
                for u in fc.underlying_hom(fx, y)? {
                    if fc.is_iso_underlying(&u).is_ok() {
                        isos.push((y, u));
                    }
                }
            }
            match isos.choose(rng) {
                Some((y, u)) => {
                    let j = gr.object(*y, c);
                    ls.push(Lift {
                        arrow: l.arrow.clone(),
                        object: j,
                        chi: gr.inject(i, j, f, u)?,
                    });
                }
                None => ls.push(l.clone()),
            }
        }
        lifts.push(ls);
    }
    Opfibration::new(of.p.clone(), lifts)
}

/// Random base from the library.
pub fn random_base(rng: &mut dyn RngCore) -> (&'static str, Arc<OrdinaryCategory>) {
    let lib = base_library();
    let (name, c) = lib.choose(rng).expect("nonempty library").clone();
    (name, Arc::new(c))
}

/// Two block pseudofunctors `F, G` of one shape, transformations
/// `α, β: F ⇒ G`, a modification `α ⇛ β` when one exists, the identity on
/// `F`, and a relifted copy of `Gr F`.
pub fn block_fixtures<V: BaseCategory>(
    v: &V,
    base: &Arc<OrdinaryCategory>,
    rng: &mut dyn RngCore,
    max_fiber: usize,
) -> Result<EquivalenceFixtures<V>> {
    let shape = BlockShape::random(base, rng, max_fiber);
    let f = BlockPseudofunctor::random(&shape, rng, max_fiber);
    let g = BlockPseudofunctor::random(&shape, rng, max_fiber);
    let ef = f.ordinary.enrich(v)?;
    let eg = g.ordinary.enrich(v)?;
    let mut fx = EquivalenceFixtures::new(base.clone());
    fx.pseudofunctors.push(ef.pseudofunctor.clone());
    fx.pseudofunctors.push(eg.pseudofunctor.clone());

    let sigmas = endofunctors(&shape.c);
    let mut pairs = Vec::new();
    for s in &sigmas {
        for s2 in &sigmas {
            for tau in natural_transformations(s, s2) {
                pairs.push((s.clone(), s2.clone(), tau));
            }
        }
    }
    let (s1, s2, tau) = pairs.choose(rng).cloned().ok_or_else(|| shape_err())?;
    let a = f.random_transformation(&g, &s1, rng);
    let b = f.random_transformation(&g, &s2, rng);
    let alpha = Arc::new(a.enrich(&ef, &eg)?);
    let beta = Arc::new(b.enrich(&ef, &eg)?);
    let gamma = f.modification(&g, &a, &b, &tau).enrich(&eg, &alpha, &beta)?;
    fx.transformations.push(alpha);
    fx.transformations.push(beta);
    fx.transformations
        .push(Arc::new(Pseudonatural::identity(&ef.pseudofunctor)));
    fx.modifications.push((gamma, 0, 1));

    let total = grothendieck(&ef.pseudofunctor)?;
    let (_, of) = gr_projection(&ef.pseudofunctor, &total)?;
    fx.opfibrations.push(of.clone());
    fx.opfibrations.push(relift(&ef.pseudofunctor, &total, &of, rng)?);
    Ok(fx)
}

/// Max-enriched analogue of [`block_fixtures`] over finite categories.
pub fn max_fixtures(
    base: &Arc<OrdinaryCategory>,
    rng: &mut dyn RngCore,
    max_fiber: usize,
) -> Result<EquivalenceFixtures<FinCat>> {
    let f = MaxPseudofunctor::random(base, rng, max_fiber);
    let copies = (0..base.num_objects())
        .map(|_| rng.random_range(1..=(max_fiber / f.chain).max(1)))
        .collect();
    let g = MaxPseudofunctor::random_with(base, f.chain, copies, rng);
    let mut fx = EquivalenceFixtures::new(base.clone());
    fx.pseudofunctors.push(f.pseudofunctor.clone());
    fx.pseudofunctors.push(g.pseudofunctor.clone());
    let alpha = Arc::new(f.random_transformation(&g, rng)?);
    let beta = Arc::new(f.random_transformation(&g, rng)?);
    let gamma = MaxPseudofunctor::bottom_modification(&alpha, &beta)?;
    fx.transformations.push(alpha);
    fx.transformations.push(beta);
    fx.modifications.push((gamma, 0, 1));
    let total = grothendieck(&f.pseudofunctor)?;
    let (_, of) = gr_projection(&f.pseudofunctor, &total)?;
    fx.opfibrations.push(of);
    Ok(fx)
}

/// Discrete fibers over the walking arrow: `F_b = {x0, x1}`,
/// `F_c = {y0, y1, y2}`, `F_f = (x0 ↦ y0, x1 ↦ y2)`, strictly.
pub fn walking_arrow_ordinary() -> OrdinaryPseudofunctor {
    let base = Arc::new(FiniteCategory::walking_arrow());
    let fb = Arc::new(FiniteCategory::discrete(&["x0".into(), "x1".into()]));
    let fc = Arc::new(FiniteCategory::discrete(&["y0".into(), "y1".into(), "y2".into()]));
    let fibers = vec![fb.clone(), fc.clone()];
    let functors = (0..base.num_arrows())
        .map(|f| {
            if base.is_identity(f) {
                FinFunctor::identity(&fibers[base.arrow(f).dom])
            } else {
                let objects = vec![0, 2];
                let arrows = vec![fc.identity(0), fc.identity(2)];
                FinFunctor::new(fb.clone(), fc.clone(), objects, arrows).expect("discrete functor")
            }
        })
        .collect::<Vec<_>>();
    let xi = vec![
        (0..fb.num_objects()).map(|x| fb.identity(x)).collect(),
        (0..fc.num_objects()).map(|x| fc.identity(x)).collect(),
    ];
    let theta = base
        .composable_pairs()
        .into_iter()
        .map(|(f, g)| {
            let d = &fibers[base.arrow(g).cod];
            let src = &fibers[base.arrow(f).dom];
            let gf = base.compose(g, f).expect("composable");
            let comps = (0..src.num_objects())
                .map(|x| d.identity(functors[gf].objects[x]))
                .collect();
            ((f, g), comps)
        })
        .collect();
    OrdinaryPseudofunctor {
        base,
        fibers,
        functors,
        xi,
        theta,
    }
}

/// The cyclic group of order 3 as a one-object finite category.
pub fn z3() -> FiniteCategory {
    FiniteCategory::monoid(&["e", "r1", "r2"], &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).expect("z3")
}

/// `Z3` as a Set-enriched category with `r1 · r1` redefined as `e`. Units
/// still hold; associativity fails at `(r1 · r1) · r2`.
pub fn mutated_z3() -> Result<Arc<VCategory<crate::vbase::FinSet>>> {
    use crate::vbase::{FinSet, SetMor};
    let free = free_vcategory(&Arc::new(z3()), &FinSet::new())?;
    let c = &free.vcat;
    let m = c.composition(0, 0, 0);
    let i = m
        .dom
        .position("(r1,r1)")
        .ok_or_else(|| shape("product label `(r1,r1)`"))?;
    let e = m.cod.position("e").ok_or_else(|| shape("label `e`"))?;
    let mut table = m.table.clone();
    table[i] = e;
    let mutated = SetMor::new(m.dom.clone(), m.cod.clone(), table)?;
    Ok(Arc::new(c.with_composition(0, 0, 0, mutated)?))
}

/// A shipped fixture file.
#[derive(Clone, Debug)]
pub struct ShippedFixture {
    pub file: &'static str,
    /// Expected exit code of `validate`.
    pub validate_code: i32,
    pub text: String,
}

fn doc_text<V: crate::fixture::FixtureBase>(comment: &str, doc: &crate::fixture::Document<V>) -> String {
    let mut out = String::new();
    for line in comment.lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(&crate::fixture::write_document(doc));
    out
}

/// Seed for the generated corpus files.
pub const SHIPPED_SEED: u64 = 20;

/// Every fixture under `crates/core/fixtures`, generated deterministically.
pub fn shipped_fixtures() -> Result<Vec<ShippedFixture>> {
    use crate::fixture::Document;
    use crate::vbase::{hostile, FinSet};
    use rand::SeedableRng;
    let mut out = Vec::new();

    let mut d = Document::new(FinSet::new());
    d.add_category("One", &Arc::new(FiniteCategory::terminal()));
    out.push(ShippedFixture {
        file: "one.fx",
        validate_code: 0,
        text: doc_text("The terminal category over finite sets.", &d),
    });

    let wa = walking_arrow_ordinary().enrich(&FinSet::new())?;
    let mut d = Document::new(FinSet::new());
    d.add_pseudofunctor("F", &wa.pseudofunctor);
    out.push(ShippedFixture {
        file: "walking-arrow.fx",
        validate_code: 0,
        text: doc_text("Discrete fibers of sizes 2 and 3 over the walking arrow.", &d),
    });

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(SHIPPED_SEED);
    let arrow = Arc::new(FiniteCategory::walking_arrow());
    let mut d = Document::new(FinSet::new());
    d.add_fixtures(&block_fixtures(&FinSet::new(), &arrow, &mut rng, 3)?);
    out.push(ShippedFixture {
        file: "walking-arrow-corpus.fx",
        validate_code: 0,
        text: doc_text(
            "Block pseudofunctors over the walking arrow with non-identity xi and theta,\ntransformations, a modification, Gr of F0 and a relifted copy.",
            &d,
        ),
    });

    let z2 = Arc::new(base_library().into_iter().find(|(n, _)| *n == "z2").expect("z2").1);
    let mut d = Document::new(FinCat::new());
    d.add_fixtures(&max_fixtures(&z2, &mut rng, 3)?);
    out.push(ShippedFixture {
        file: "fincat-max.fx",
        validate_code: 0,
        text: doc_text(
            "Max-enriched fibers over the cyclic group of order 2, over finite categories.",
            &d,
        ),
    });

    let mut d = Document::new(FinSet::new());
    d.add_vcategory("Z3", &mutated_z3()?);
    out.push(ShippedFixture {
        file: "mutated-composition.fx",
        validate_code: 1,
        text: doc_text("Z3 with r1 . r1 redefined as e; associativity fails.", &d),
    });

    let mut d = Document::new(FinCat::new());
    let c = max_enriched(1, 1, 2)?;
    let name = d.add_vcategory("C", &c);
    let id = Arc::new(Opfibration::new(VFunctor::identity(&c), identity_lifts(&c)?)?);
    d.add_opfibration("idC", &id, None);
    out.push(ShippedFixture {
        file: "non-free-base.fx",
        validate_code: 0,
        text: doc_text(
            &format!(
                "Constructed by the implementer: the identity opfibration on {name}, one object\nwhose hom is the walking-arrow category. The base is not free, so the\ncounit comparison Gr I(p) -> E is not an isomorphism."
            ),
            &d,
        ),
    });

    let hostile_docs: [(&'static str, String, &str); 3] = [
        (
            "hostile-nonterminal-unit.fx",
            crate::fixture::write_document(&Document::new(hostile::nonterminal_unit())),
            "Finite sets with a two-element unit.",
        ),
        (
            "hostile-fake-coproduct.fx",
            crate::fixture::write_document(&Document::new(hostile::junk_coproducts())),
            "Finite sets whose coproducts carry an extra element.",
        ),
        (
            "hostile-disconnected-unit.fx",
            crate::fixture::write_document(&Document::new(hostile::disconnected_unit())),
            "Pairs of finite sets; the unit is not connected.",
        ),
    ];
    for (file, body, comment) in hostile_docs {
        out.push(ShippedFixture {
            file,
            validate_code: 0,
            text: format!("# {comment}\n{body}"),
        });
    }
    Ok(out)
}

/// Identity lifts of `1_C`: every `f: c → d` lifts to itself.
pub fn identity_lifts<V: BaseCategory>(c: &Arc<VCategory<V>>) -> Result<Vec<Vec<Lift<V>>>> {
    let mut out = Vec::with_capacity(c.len());
    for x in 0..c.len() {
        let mut ls = Vec::new();
        for y in 0..c.len() {
            for f in c.underlying_hom(x, y)? {
                ls.push(Lift {
                    arrow: f.clone(),
                    object: y,
                    chi: f,
                });
            }
        }
        out.push(ls);
    }
    Ok(out)
}
