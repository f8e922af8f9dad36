//! Deliberately broken bases. Each violates exactly the assumption its name
//! states and must be rejected by [`verify_base_properties`](super::verify_base_properties).

use rand::RngCore;

use super::{BaseCategory, BaseError, CoproductCone, FinSet, PullbackCone};

/// Finite sets whose "unit" has two elements, so maps into it are not unique.
pub fn nonterminal_unit() -> FinSet {
    FinSet::with_unit_size(2)
}

/// Finite sets whose coproducts carry one extra `junk` element.
pub fn junk_coproducts() -> FinSet {
    FinSet::with_junk_coproducts()
}

/// `Set × Set`: terminal unit `(1, 1)` which is not connected, since
/// `Hom((1,1), (1,1) ⊔ (1,1))` has four elements.
pub fn disconnected_unit() -> SetPair {
    ProductBase {
        left: FinSet::new(),
        right: FinSet::new(),
    }
}

pub type SetPair = ProductBase<FinSet, FinSet>;

/// Componentwise product of two bases.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductBase<A, B> {
    pub left: A,
    pub right: B,
}

impl<A: BaseCategory, B: BaseCategory> ProductBase<A, B> {
    fn split(&self, cone: &CoproductCone<Self>) -> (CoproductCone<A>, CoproductCone<B>) {
        (
            CoproductCone {
                summands: cone.summands.iter().map(|s| s.0.clone()).collect(),
                apex: cone.apex.0.clone(),
                injections: cone.injections.iter().map(|i| i.0.clone()).collect(),
            },
            CoproductCone {
                summands: cone.summands.iter().map(|s| s.1.clone()).collect(),
                apex: cone.apex.1.clone(),
                injections: cone.injections.iter().map(|i| i.1.clone()).collect(),
            },
        )
    }

    fn split_pullback(&self, cone: &PullbackCone<Self>) -> (PullbackCone<A>, PullbackCone<B>) {
        (
            PullbackCone {
                left: cone.left.0.clone(),
                right: cone.right.0.clone(),
                apex: cone.apex.0.clone(),
                proj_left: cone.proj_left.0.clone(),
                proj_right: cone.proj_right.0.clone(),
            },
            PullbackCone {
                left: cone.left.1.clone(),
                right: cone.right.1.clone(),
                apex: cone.apex.1.clone(),
                proj_left: cone.proj_left.1.clone(),
                proj_right: cone.proj_right.1.clone(),
            },
        )
    }
}

impl<A: BaseCategory, B: BaseCategory> BaseCategory for ProductBase<A, B> {
    type Obj = (A::Obj, B::Obj);
    type Mor = (A::Mor, B::Mor);

    fn tag(&self) -> &'static str {
        "hostile-disconnected-unit"
    }

    fn unit(&self) -> Self::Obj {
        (self.left.unit(), self.right.unit())
    }

    fn dom(&self, m: &Self::Mor) -> Self::Obj {
        (self.left.dom(&m.0), self.right.dom(&m.1))
    }

    fn cod(&self, m: &Self::Mor) -> Self::Obj {
        (self.left.cod(&m.0), self.right.cod(&m.1))
    }

    fn identity(&self, x: &Self::Obj) -> Self::Mor {
        (self.left.identity(&x.0), self.right.identity(&x.1))
    }

    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, BaseError> {
        Ok((self.left.compose(&g.0, &f.0)?, self.right.compose(&g.1, &f.1)?))
    }

    fn tensor(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Obj {
        (self.left.tensor(&x.0, &y.0), self.right.tensor(&x.1, &y.1))
    }

    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        (self.left.tensor_mor(&f.0, &g.0), self.right.tensor_mor(&f.1, &g.1))
    }

    fn left_unitor(&self, x: &Self::Obj) -> Self::Mor {
        (self.left.left_unitor(&x.0), self.right.left_unitor(&x.1))
    }

    fn left_unitor_inv(&self, x: &Self::Obj) -> Self::Mor {
        (self.left.left_unitor_inv(&x.0), self.right.left_unitor_inv(&x.1))
    }

    fn right_unitor(&self, x: &Self::Obj) -> Self::Mor {
        (self.left.right_unitor(&x.0), self.right.right_unitor(&x.1))
    }

    fn right_unitor_inv(&self, x: &Self::Obj) -> Self::Mor {
        (self.left.right_unitor_inv(&x.0), self.right.right_unitor_inv(&x.1))
    }

    fn associator(&self, x: &Self::Obj, y: &Self::Obj, z: &Self::Obj) -> Self::Mor {
        (
            self.left.associator(&x.0, &y.0, &z.0),
            self.right.associator(&x.1, &y.1, &z.1),
        )
    }

    fn coproduct(&self, summands: &[Self::Obj]) -> CoproductCone<Self> {
        let l: Vec<A::Obj> = summands.iter().map(|s| s.0.clone()).collect();
        let r: Vec<B::Obj> = summands.iter().map(|s| s.1.clone()).collect();
        let (cl, cr) = (self.left.coproduct(&l), self.right.coproduct(&r));
        CoproductCone {
            summands: summands.to_vec(),
            apex: (cl.apex, cr.apex),
            injections: cl.injections.into_iter().zip(cr.injections).collect(),
        }
    }

    fn copair(
        &self,
        cone: &CoproductCone<Self>,
        legs: &[Self::Mor],
        target: &Self::Obj,
    ) -> Result<Self::Mor, BaseError> {
        let (cl, cr) = self.split(cone);
        let ll: Vec<A::Mor> = legs.iter().map(|m| m.0.clone()).collect();
        let lr: Vec<B::Mor> = legs.iter().map(|m| m.1.clone()).collect();
        Ok((
            self.left.copair(&cl, &ll, &target.0)?,
            self.right.copair(&cr, &lr, &target.1)?,
        ))
    }

    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<PullbackCone<Self>, BaseError> {
        let pl = self.left.pullback(&f.0, &g.0)?;
        let pr = self.right.pullback(&f.1, &g.1)?;
        Ok(PullbackCone {
            left: f.clone(),
            right: g.clone(),
            apex: (pl.apex, pr.apex),
            proj_left: (pl.proj_left, pr.proj_left),
            proj_right: (pl.proj_right, pr.proj_right),
        })
    }

    fn universal_into_pullback(
        &self,
        cone: &PullbackCone<Self>,
        left: &Self::Mor,
        right: &Self::Mor,
    ) -> Result<Self::Mor, BaseError> {
        let (cl, cr) = self.split_pullback(cone);
        Ok((
            self.left.universal_into_pullback(&cl, &left.0, &right.0)?,
            self.right.universal_into_pullback(&cr, &left.1, &right.1)?,
        ))
    }

    fn hom_set(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Vec<Self::Mor>, BaseError> {
        let l = self.left.hom_set(&x.0, &y.0)?;
        let r = self.right.hom_set(&x.1, &y.1)?;
        if l.len().saturating_mul(r.len()) > super::HOM_ENUMERATION_LIMIT {
            return Err(BaseError::TooLarge(format!("{} x {} pairs", l.len(), r.len())));
        }
        Ok(l.iter()
            .flat_map(|a| r.iter().map(move |b| (a.clone(), b.clone())))
            .collect())
    }

    fn invert(&self, m: &Self::Mor) -> Result<Self::Mor, String> {
        let a = self.left.invert(&m.0).map_err(|w| format!("left component: {w}"))?;
        let b = self.right.invert(&m.1).map_err(|w| format!("right component: {w}"))?;
        Ok((a, b))
    }

    fn to_unit(&self, x: &Self::Obj) -> Self::Mor {
        (self.left.to_unit(&x.0), self.right.to_unit(&x.1))
    }

    fn size(&self, x: &Self::Obj) -> usize {
        self.left.size(&x.0) + self.right.size(&x.1)
    }

    fn describe_obj(&self, x: &Self::Obj) -> String {
        format!("({}, {})", self.left.describe_obj(&x.0), self.right.describe_obj(&x.1))
    }

    fn element_label(&self, x: &Self::Obj, e: &Self::Mor) -> String {
        format!(
            "({},{})",
            self.left.element_label(&x.0, &e.0),
            self.right.element_label(&x.1, &e.1)
        )
    }

    fn diff_witness(&self, f: &Self::Mor, g: &Self::Mor) -> String {
        if f.0 != g.0 {
            format!("left component {}", self.left.diff_witness(&f.0, &g.0))
        } else {
            format!("right component {}", self.right.diff_witness(&f.1, &g.1))
        }
    }

    fn sample_object(&self, rng: &mut dyn RngCore, max_size: usize) -> Self::Obj {
        let half = max_size / 2;
        (
            self.left.sample_object(rng, half),
            self.right.sample_object(rng, max_size - half),
        )
    }

    fn sample_morphism(&self, rng: &mut dyn RngCore, x: &Self::Obj, y: &Self::Obj) -> Option<Self::Mor> {
        Some((
            self.left.sample_morphism(rng, &x.0, &y.0)?,
            self.right.sample_morphism(rng, &x.1, &y.1)?,
        ))
    }
}
