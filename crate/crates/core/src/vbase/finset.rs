use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::{Rng, RngCore};

use super::{BaseCategory, BaseError, CoproductCone, PullbackCone, HOM_ENUMERATION_LIMIT};

/// A finite set given by pairwise distinct element labels.
#[derive(Clone)]
pub struct SetObj(Arc<SetData>);

struct SetData {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl SetObj {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, BaseError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(BaseError::Invalid(format!("duplicate element label `{l}`")));
            }
        }
        Ok(SetObj(Arc::new(SetData { labels, index })))
    }

    fn from_unique(labels: Vec<String>) -> Self {
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        SetObj(Arc::new(SetData { labels, index }))
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }
}

impl PartialEq for SetObj {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }
}

impl Eq for SetObj {}

impl Hash for SetObj {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.labels.hash(state);
    }
}

impl fmt::Debug for SetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.labels.join(", "))
    }
}

/// A function between finite sets, stored as an index table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetMor {
    pub dom: SetObj,
    pub cod: SetObj,
    pub table: Vec<usize>,
}

impl SetMor {
    pub fn new(dom: SetObj, cod: SetObj, table: Vec<usize>) -> Result<Self, BaseError> {
        if table.len() != dom.len() {
            return Err(BaseError::Invalid(format!(
                "function table has {} entries for a domain of size {}",
                table.len(),
                dom.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= cod.len()) {
            return Err(BaseError::Invalid(format!("image index {bad} outside codomain")));
        }
        Ok(SetMor { dom, cod, table })
    }

    /// Builds a function from `label -> label` pairs; must be total.
    pub fn from_pairs(dom: SetObj, cod: SetObj, pairs: &[(&str, &str)]) -> Result<Self, BaseError> {
        let mut table = vec![usize::MAX; dom.len()];
        for (a, b) in pairs {
            let i = dom
                .position(a)
                .ok_or_else(|| BaseError::Invalid(format!("`{a}` not in domain")))?;
            let j = cod
                .position(b)
                .ok_or_else(|| BaseError::Invalid(format!("`{b}` not in codomain")))?;
            table[i] = j;
        }
        if let Some(i) = table.iter().position(|&t| t == usize::MAX) {
            return Err(BaseError::Invalid(format!("`{}` has no image", dom.label(i))));
        }
        SetMor::new(dom, cod, table)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }
}

impl fmt::Debug for SetMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, &t) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} -> {}", self.dom.label(i), self.cod.label(t))?;
        }
        write!(f, "]")
    }
}

/// Finite sets with the cartesian product.
///
/// The lawful instance is [`FinSet::new`]. The two knobs exist only to build
/// hostile fixtures: a unit with more than one element, and coproducts that
/// carry an extra junk element.
#[derive(Clone, Debug, PartialEq)]
pub struct FinSet {
    unit: SetObj,
    junk_coproducts: bool,
}

impl Default for FinSet {
    fn default() -> Self {
        Self::new()
    }
}

impl FinSet {
    pub fn new() -> Self {
        FinSet {
            unit: SetObj::from_unique(vec!["*".into()]),
            junk_coproducts: false,
        }
    }

    pub(crate) fn with_unit_size(n: usize) -> Self {
        FinSet {
            unit: SetObj::from_unique((0..n).map(|i| format!("*{i}")).collect()),
            junk_coproducts: false,
        }
    }

    pub(crate) fn with_junk_coproducts() -> Self {
        FinSet {
            junk_coproducts: true,
            ..FinSet::new()
        }
    }

    pub fn is_lawful(&self) -> bool {
        self.unit.len() == 1 && !self.junk_coproducts
    }

    pub fn set(&self, labels: &[&str]) -> Result<SetObj, BaseError> {
        SetObj::new(labels.iter().copied())
    }

    fn check_dom(&self, what: &str, m: &SetMor, expected: &SetObj) -> Result<(), BaseError> {
        if &m.dom != expected {
            return Err(BaseError::Mismatch(format!(
                "{what}: domain {:?} differs from {:?}",
                m.dom, expected
            )));
        }
        Ok(())
    }
}

impl BaseCategory for FinSet {
    type Obj = SetObj;
    type Mor = SetMor;

    fn tag(&self) -> &'static str {
        if self.is_lawful() {
            "finset"
        } else if self.junk_coproducts {
            "hostile-fake-coproduct"
        } else {
            "hostile-nonterminal-unit"
        }
    }

    fn unit(&self) -> SetObj {
        self.unit.clone()
    }

    fn dom(&self, m: &SetMor) -> SetObj {
        m.dom.clone()
    }

    fn cod(&self, m: &SetMor) -> SetObj {
        m.cod.clone()
    }

    fn identity(&self, x: &SetObj) -> SetMor {
        SetMor {
            dom: x.clone(),
            cod: x.clone(),
            table: (0..x.len()).collect(),
        }
    }

    fn compose(&self, g: &SetMor, f: &SetMor) -> Result<SetMor, BaseError> {
        if f.cod != g.dom {
            return Err(BaseError::Mismatch(format!(
                "cannot compose: codomain {:?} vs domain {:?}",
                f.cod, g.dom
            )));
        }
        Ok(SetMor {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            table: f.table.iter().map(|&i| g.table[i]).collect(),
        })
    }

    fn tensor(&self, x: &SetObj, y: &SetObj) -> SetObj {
        let mut labels = Vec::with_capacity(x.len() * y.len());
        for a in x.labels() {
            for b in y.labels() {
                labels.push(format!("({a},{b})"));
            }
        }
        SetObj::from_unique(labels)
    }

    fn tensor_mor(&self, f: &SetMor, g: &SetMor) -> SetMor {
        let m = g.cod.len();
        let mut table = Vec::with_capacity(f.dom.len() * g.dom.len());
        for &i in &f.table {
            for &j in &g.table {
                table.push(i * m + j);
            }
        }
        SetMor {
            dom: self.tensor(&f.dom, &g.dom),
            cod: self.tensor(&f.cod, &g.cod),
            table,
        }
    }

    fn left_unitor(&self, x: &SetObj) -> SetMor {
        let n = x.len();
        SetMor {
            dom: self.tensor(&self.unit, x),
            cod: x.clone(),
            table: (0..self.unit.len() * n).map(|k| k % n.max(1)).collect(),
        }
    }

    fn left_unitor_inv(&self, x: &SetObj) -> SetMor {
        SetMor {
            dom: x.clone(),
            cod: self.tensor(&self.unit, x),
            table: (0..x.len()).collect(),
        }
    }

    fn right_unitor(&self, x: &SetObj) -> SetMor {
        let u = self.unit.len();
        SetMor {
            dom: self.tensor(x, &self.unit),
            cod: x.clone(),
            table: (0..x.len() * u).map(|k| k / u).collect(),
        }
    }

    fn right_unitor_inv(&self, x: &SetObj) -> SetMor {
        let u = self.unit.len();
        SetMor {
            dom: x.clone(),
            cod: self.tensor(x, &self.unit),
            table: (0..x.len()).map(|i| i * u).collect(),
        }
    }

    fn associator(&self, x: &SetObj, y: &SetObj, z: &SetObj) -> SetMor {
        let n = x.len() * y.len() * z.len();
        SetMor {
            dom: self.tensor(&self.tensor(x, y), z),
            cod: self.tensor(x, &self.tensor(y, z)),
            table: (0..n).collect(),
        }
    }

    fn coproduct(&self, summands: &[SetObj]) -> CoproductCone<Self> {
        let mut labels = Vec::new();
        let mut tables = Vec::with_capacity(summands.len());
        for (i, s) in summands.iter().enumerate() {
            let start = labels.len();
            labels.extend(s.labels().iter().map(|l| format!("{i}.{l}")));
            tables.push((start..labels.len()).collect::<Vec<_>>());
        }
        if self.junk_coproducts {
            labels.push("junk".into());
        }
        let apex = SetObj::from_unique(labels);
        let injections = summands
            .iter()
            .zip(tables)
            .map(|(s, table)| SetMor {
                dom: s.clone(),
                cod: apex.clone(),
                table,
            })
            .collect();
        CoproductCone {
            summands: summands.to_vec(),
            apex,
            injections,
        }
    }

    fn copower_unit(&self, names: &[String]) -> CoproductCone<Self> {
        let distinct = SetObj::new(names.iter().cloned());
        match distinct {
            Ok(apex) if self.is_lawful() => CoproductCone {
                summands: vec![self.unit.clone(); names.len()],
                injections: (0..names.len())
                    .map(|k| SetMor {
                        dom: self.unit.clone(),
                        cod: apex.clone(),
                        table: vec![k],
                    })
                    .collect(),
                apex,
            },
            _ => {
                let units = vec![self.unit.clone(); names.len()];
                self.coproduct(&units)
            }
        }
    }

    fn copair(&self, cone: &CoproductCone<Self>, legs: &[SetMor], target: &SetObj) -> Result<SetMor, BaseError> {
        if legs.len() != cone.summands.len() {
            return Err(BaseError::Mismatch(format!(
                "copair: {} legs for {} summands",
                legs.len(),
                cone.summands.len()
            )));
        }
        let mut table = vec![usize::MAX; cone.apex.len()];
        for ((leg, inj), summand) in legs.iter().zip(&cone.injections).zip(&cone.summands) {
            self.check_dom("copair leg", leg, summand)?;
            if &leg.cod != target {
                return Err(BaseError::Mismatch(format!(
                    "copair leg lands in {:?}, expected {:?}",
                    leg.cod, target
                )));
            }
            for (j, &k) in inj.table.iter().enumerate() {
                table[k] = leg.table[j];
            }
        }
        for t in table.iter_mut().filter(|t| **t == usize::MAX) {
            if target.is_empty() {
                return Err(BaseError::Invalid(
                    "coproduct element outside every injection has nowhere to go".into(),
                ));
            }
            *t = 0;
        }
        Ok(SetMor {
            dom: cone.apex.clone(),
            cod: target.clone(),
            table,
        })
    }

    fn pullback(&self, f: &SetMor, g: &SetMor) -> Result<PullbackCone<Self>, BaseError> {
        if f.cod != g.cod {
            return Err(BaseError::Mismatch(format!(
                "pullback of a non-cospan: {:?} vs {:?}",
                f.cod, g.cod
            )));
        }
        let mut labels = Vec::new();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (a, &fa) in f.table.iter().enumerate() {
            for (b, &gb) in g.table.iter().enumerate() {
                if fa == gb {
                    labels.push(format!("({},{})", f.dom.label(a), g.dom.label(b)));
                    left.push(a);
                    right.push(b);
                }
            }
        }
        let apex = SetObj::from_unique(labels);
        Ok(PullbackCone {
            proj_left: SetMor {
                dom: apex.clone(),
                cod: f.dom.clone(),
                table: left,
            },
            proj_right: SetMor {
                dom: apex.clone(),
                cod: g.dom.clone(),
                table: right,
            },
            apex,
            left: f.clone(),
            right: g.clone(),
        })
    }

    fn universal_into_pullback(
        &self,
        cone: &PullbackCone<Self>,
        left: &SetMor,
        right: &SetMor,
    ) -> Result<SetMor, BaseError> {
        let via_left = self.compose(&cone.left, left)?;
        let via_right = self.compose(&cone.right, right)?;
        if via_left != via_right {
            return Err(BaseError::NonCommuting(self.diff_witness(&via_left, &via_right)));
        }
        let mut table = Vec::with_capacity(left.dom.len());
        for w in 0..left.dom.len() {
            let hits: Vec<usize> = (0..cone.apex.len())
                .filter(|&k| cone.proj_left.table[k] == left.table[w] && cone.proj_right.table[k] == right.table[w])
                .collect();
            if hits.len() != 1 {
                return Err(BaseError::Factorization {
                    count: hits.len(),
                    detail: format!("at element `{}`", left.dom.label(w)),
                });
            }
            table.push(hits[0]);
        }
        Ok(SetMor {
            dom: left.dom.clone(),
            cod: cone.apex.clone(),
            table,
        })
    }

    fn hom_set(&self, x: &SetObj, y: &SetObj) -> Result<Vec<SetMor>, BaseError> {
        let n = x.len();
        let m = y.len();
        let count = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if count > HOM_ENUMERATION_LIMIT as u128 {
            return Err(BaseError::TooLarge(format!("{m}^{n} functions")));
        }
        if n > 0 && m == 0 {
            return Ok(Vec::new());
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut digits = vec![0usize; n];
        loop {
            out.push(SetMor {
                dom: x.clone(),
                cod: y.clone(),
                table: digits.clone(),
            });
            // odometer, last position fastest
            let mut pos = n;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < m {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }

    fn invert(&self, m: &SetMor) -> Result<SetMor, String> {
        let mut inverse = vec![usize::MAX; m.cod.len()];
        for (i, &t) in m.table.iter().enumerate() {
            if inverse[t] != usize::MAX {
                return Err(format!(
                    "elements `{}` and `{}` are merged to `{}`",
                    m.dom.label(inverse[t]),
                    m.dom.label(i),
                    m.cod.label(t)
                ));
            }
            inverse[t] = i;
        }
        if let Some(missed) = inverse.iter().position(|&t| t == usize::MAX) {
            return Err(format!("element `{}` is missed", m.cod.label(missed)));
        }
        Ok(SetMor {
            dom: m.cod.clone(),
            cod: m.dom.clone(),
            table: inverse,
        })
    }

    fn to_unit(&self, x: &SetObj) -> SetMor {
        SetMor {
            dom: x.clone(),
            cod: self.unit.clone(),
            table: vec![0; x.len()],
        }
    }

    fn size(&self, x: &SetObj) -> usize {
        x.len()
    }

    fn describe_obj(&self, x: &SetObj) -> String {
        format!("{x:?}")
    }

    fn element_label(&self, x: &SetObj, e: &SetMor) -> String {
        e.table.first().map(|&i| x.label(i).to_string()).unwrap_or_default()
    }

    fn diff_witness(&self, f: &SetMor, g: &SetMor) -> String {
        if f.dom != g.dom || f.cod != g.cod {
            return format!(
                "maps are not parallel: {:?} -> {:?} vs {:?} -> {:?}",
                f.dom, f.cod, g.dom, g.cod
            );
        }
        match (0..f.table.len()).find(|&i| f.table[i] != g.table[i]) {
            Some(i) => format!(
                "at `{}`: `{}` vs `{}`",
                f.dom.label(i),
                f.cod.label(f.table[i]),
                g.cod.label(g.table[i])
            ),
            None => "maps agree".into(),
        }
    }

    fn sample_object(&self, rng: &mut dyn RngCore, max_size: usize) -> SetObj {
        let n = rng.random_range(0..=max_size);
        SetObj::from_unique((0..n).map(|i| format!("x{i}")).collect())
    }

    fn sample_morphism(&self, rng: &mut dyn RngCore, x: &SetObj, y: &SetObj) -> Option<SetMor> {
        if y.is_empty() && !x.is_empty() {
            return None;
        }
        let table = (0..x.len()).map(|_| rng.random_range(0..y.len())).collect();
        Some(SetMor {
            dom: x.clone(),
            cod: y.clone(),
            table,
        })
    }
}
