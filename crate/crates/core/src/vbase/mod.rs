//! Finite base monoidal categories used as enrichment bases.
//!
//! A [`BaseCategory`] supplies composition, a monoidal product, coproducts,
//! pullbacks and exhaustive hom enumeration over finite data. Two lawful
//! instances ship: [`FinSet`] (finite sets, cartesian product) and [`FinCat`]
//! (finite categories, cartesian product). The [`hostile`] module provides
//! deliberately broken bases that the property verifier must reject.

use std::fmt;
use std::hash::Hash;

use rand::RngCore;
use thiserror::Error;

mod fincat;
mod finset;
pub mod hostile;
mod verify;

pub use fincat::{Arrow, FinCat, FinFunctor, FiniteCategory};
pub use finset::{FinSet, SetMor, SetObj};
pub use verify::verify_base_properties;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BaseError {
    #[error("domain/codomain mismatch: {0}")]
    Mismatch(String),
    #[error("square does not commute: {0}")]
    NonCommuting(String),
    #[error("expected exactly one factorization, found {count}: {detail}")]
    Factorization { count: usize, detail: String },
    #[error("mixed base instances: {0}")]
    MixedInstance(String),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("not an isomorphism: {0}")]
    NotIso(String),
    #[error("invalid base data: {0}")]
    Invalid(String),
}

/// Upper bound on the number of morphisms a single `hom_set` call may enumerate.
pub const HOM_ENUMERATION_LIMIT: usize = 1 << 20;

/// A finite monoidal category with computable coproducts and pullbacks.
///
/// Equality of morphisms is extensional: two morphisms are equal iff their
/// normalized tables agree. All constructions are deterministic, so building
/// the same object twice yields equal values.
pub trait BaseCategory: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Obj: Clone + Eq + Hash + fmt::Debug + Send + Sync;
    type Mor: Clone + Eq + Hash + fmt::Debug + Send + Sync;

    /// Instance tag used in fixtures (`finset`, `fincat`, ...).
    fn tag(&self) -> &'static str;

    fn unit(&self) -> Self::Obj;
    fn dom(&self, m: &Self::Mor) -> Self::Obj;
    fn cod(&self, m: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, BaseError>;

    fn tensor(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Obj;
    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    /// `1 ⊗ X → X`
    fn left_unitor(&self, x: &Self::Obj) -> Self::Mor;
    /// `X → 1 ⊗ X`
    fn left_unitor_inv(&self, x: &Self::Obj) -> Self::Mor;
    /// `X ⊗ 1 → X`
    fn right_unitor(&self, x: &Self::Obj) -> Self::Mor;
    /// `X → X ⊗ 1`
    fn right_unitor_inv(&self, x: &Self::Obj) -> Self::Mor;
    /// `(X ⊗ Y) ⊗ Z → X ⊗ (Y ⊗ Z)`
    fn associator(&self, x: &Self::Obj, y: &Self::Obj, z: &Self::Obj) -> Self::Mor;

    fn coproduct(&self, summands: &[Self::Obj]) -> CoproductCone<Self>;

    /// `X · 1`, the coproduct of one copy of the unit per name.
    fn copower_unit(&self, names: &[String]) -> CoproductCone<Self> {
        let units = vec![self.unit(); names.len()];
        self.coproduct(&units)
    }

    /// The map out of a coproduct determined by one leg per summand.
    fn copair(
        &self,
        cone: &CoproductCone<Self>,
        legs: &[Self::Mor],
        target: &Self::Obj,
    ) -> Result<Self::Mor, BaseError>;

    /// Canonical pullback of the cospan `f: A → C ← B: g`.
    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<PullbackCone<Self>, BaseError>;

    /// The unique map into the apex whose projections are `left` and `right`.
    /// Found by exhaustive elementwise search; zero or several candidates is
    /// an error.
    fn universal_into_pullback(
        &self,
        cone: &PullbackCone<Self>,
        left: &Self::Mor,
        right: &Self::Mor,
    ) -> Result<Self::Mor, BaseError>;

    /// Every morphism `x → y`, in a deterministic order.
    fn hom_set(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Vec<Self::Mor>, BaseError>;

    /// Two-sided inverse, or a witness (missed or merged element) explaining
    /// why none exists.
    fn invert(&self, m: &Self::Mor) -> Result<Self::Mor, String>;

    /// The canonical map into the unit.
    fn to_unit(&self, x: &Self::Obj) -> Self::Mor;

    /// A size measure used when sampling (number of elements / objects).
    fn size(&self, x: &Self::Obj) -> usize;

    fn describe_obj(&self, x: &Self::Obj) -> String;

    /// Human readable name of an element `1 → x`.
    fn element_label(&self, x: &Self::Obj, e: &Self::Mor) -> String;

    /// Explains where two parallel morphisms differ.
    fn diff_witness(&self, f: &Self::Mor, g: &Self::Mor) -> String;

    fn sample_object(&self, rng: &mut dyn RngCore, max_size: usize) -> Self::Obj;

    fn sample_morphism(&self, rng: &mut dyn RngCore, x: &Self::Obj, y: &Self::Obj) -> Option<Self::Mor>;
}

/// A coproduct with its injections, one per summand in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoproductCone<V: BaseCategory> {
    pub summands: Vec<V::Obj>,
    pub apex: V::Obj,
    pub injections: Vec<V::Mor>,
}

/// A pullback of `left: A → C ← B: right` with apex `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackCone<V: BaseCategory> {
    pub left: V::Mor,
    pub right: V::Mor,
    pub apex: V::Obj,
    /// `P → A`
    pub proj_left: V::Mor,
    /// `P → B`
    pub proj_right: V::Mor,
}

/// A square
///
/// ```text
///   P --top--> A
///   |          |
///  left      right
///   v          v
///   B -bottom-> C
/// ```
#[derive(Clone, Debug)]
pub struct Square<V: BaseCategory> {
    pub top: V::Mor,
    pub left: V::Mor,
    pub right: V::Mor,
    pub bottom: V::Mor,
}

/// Outcome of a universal-property check: `Err` holds a witness.
pub type Verdict = Result<(), String>;

/// Composes in diagrammatic order: `pipe(base, &[f, g, h]) = h ∘ g ∘ f`.
pub fn pipe<V: BaseCategory>(base: &V, maps: &[&V::Mor]) -> Result<V::Mor, BaseError> {
    let (first, rest) = maps
        .split_first()
        .ok_or_else(|| BaseError::Invalid("empty composite".into()))?;
    let mut acc = (*first).clone();
    for m in rest {
        acc = base.compose(m, &acc)?;
    }
    Ok(acc)
}

/// `x → 1 → y`, the constant map at the element `elem`.
pub fn const_map<V: BaseCategory>(base: &V, x: &V::Obj, elem: &V::Mor) -> Result<V::Mor, BaseError> {
    base.compose(elem, &base.to_unit(x))
}

/// Elements `1 → x`.
pub fn elements<V: BaseCategory>(base: &V, x: &V::Obj) -> Result<Vec<V::Mor>, BaseError> {
    base.hom_set(&base.unit(), x)
}

/// `∐ f_i : ∐ X_i → ∐ Y_i`.
pub fn coproduct_map<V: BaseCategory>(
    base: &V,
    from: &CoproductCone<V>,
    to: &CoproductCone<V>,
    maps: &[V::Mor],
) -> Result<V::Mor, BaseError> {
    if maps.len() != from.summands.len() || maps.len() != to.summands.len() {
        return Err(BaseError::Mismatch("coproduct_map arity".into()));
    }
    let legs = maps
        .iter()
        .zip(&to.injections)
        .map(|(f, inj)| base.compose(inj, f))
        .collect::<Result<Vec<_>, _>>()?;
    base.copair(from, &legs, &to.apex)
}

/// `(∐_i A_i) ⊗ (∐_j B_j) ≅ ∐_{i,j} A_i ⊗ B_j`, pairs ordered `i`-major.
///
/// Returns the coproduct of pairwise tensors and the isomorphism out of the
/// tensor of apexes, obtained by inverting the canonical comparison map.
pub fn distributor<V: BaseCategory>(
    base: &V,
    a: &CoproductCone<V>,
    b: &CoproductCone<V>,
) -> Result<(CoproductCone<V>, V::Mor), BaseError> {
    let mut summands = Vec::with_capacity(a.summands.len() * b.summands.len());
    let mut legs = Vec::with_capacity(summands.capacity());
    for (ai, ia) in a.summands.iter().zip(&a.injections) {
        for (bj, ib) in b.summands.iter().zip(&b.injections) {
            summands.push(base.tensor(ai, bj));
            legs.push(base.tensor_mor(ia, ib));
        }
    }
    let pairs = base.coproduct(&summands);
    let target = base.tensor(&a.apex, &b.apex);
    let comparison = base.copair(&pairs, &legs, &target)?;
    let iso = base.invert(&comparison).map_err(BaseError::NotIso)?;
    Ok((pairs, iso))
}

/// Decides whether a commuting square is a pullback by comparing its corner
/// with the canonical pullback of its cospan.
///
/// A non-commuting square is an error rather than a negative verdict.
pub fn is_pullback_square<V: BaseCategory>(base: &V, sq: &Square<V>) -> Result<Verdict, BaseError> {
    let via_top = base.compose(&sq.right, &sq.top)?;
    let via_left = base.compose(&sq.bottom, &sq.left)?;
    if via_top != via_left {
        return Err(BaseError::NonCommuting(base.diff_witness(&via_top, &via_left)));
    }
    let cone = base.pullback(&sq.right, &sq.bottom)?;
    let comparison = base.universal_into_pullback(&cone, &sq.top, &sq.left)?;
    Ok(base.invert(&comparison).map(|_| ()))
}

/// Square formed by a pullback cone over its own cospan.
pub fn cone_square<V: BaseCategory>(cone: &PullbackCone<V>) -> Square<V> {
    Square {
        top: cone.proj_left.clone(),
        left: cone.proj_right.clone(),
        right: cone.left.clone(),
        bottom: cone.right.clone(),
    }
}

/// `1 → 1 ⊗ 1`
pub fn unit_diagonal<V: BaseCategory>(base: &V) -> V::Mor {
    base.left_unitor_inv(&base.unit())
}

/// Composite of two elements through a composition map
/// `op: X ⊗ Y → Z` : `1 ≅ 1 ⊗ 1 → X ⊗ Y → Z`.
pub fn combine_elements<V: BaseCategory>(base: &V, op: &V::Mor, x: &V::Mor, y: &V::Mor) -> Result<V::Mor, BaseError> {
    let pair = base.tensor_mor(x, y);
    pipe(base, &[&unit_diagonal(base), &pair, op])
}
