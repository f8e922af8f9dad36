use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{cone_square, elements, is_pullback_square, BaseCategory, BaseError, CoproductCone, Square};
use crate::report::VerificationReport;

/// Largest sampled object.
pub const MAX_OBJECT_SIZE: usize = 6;
/// Largest sampled coproduct index set.
pub const MAX_INDEX_SIZE: usize = 4;
/// Connectedness is checked for every copower `I · 1` with `|I|` up to this.
pub const MAX_COPOWER_SIZE: usize = 6;

const LAW_DISTRIBUTIVE: &str = "base.distributivity";
const LAW_INJECTIONS: &str = "base.extensive.injections";
const LAW_DECOMPOSITION: &str = "base.extensive.decomposition";
const LAW_TERMINAL: &str = "base.unit.terminal";
const LAW_CONNECTED: &str = "base.unit.connected";
const LAW_COPRODUCT: &str = "base.coproduct.universal";
const LAW_UNITORS: &str = "base.monoidal.unitors";

/// Checks the assumptions every enrichment base must satisfy on `budget`
/// random samples plus all degenerate cases.
///
/// Sample 0 uses the empty index set and sample 1 the empty object. Summand
/// sizes are bounded so a family's apex stays within [`MAX_OBJECT_SIZE`].
pub fn verify_base_properties<V: BaseCategory>(base: &V, budget: usize, seed: u64) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerificationReport::new();
    let empty = base.coproduct(&[]).apex;

    for n in 0..=MAX_COPOWER_SIZE {
        report.record(format!("copower({n})"), LAW_CONNECTED, connected(base, n));
    }
    report.record("unit", LAW_TERMINAL, terminal(base, &base.unit()));
    report.record("empty", LAW_TERMINAL, terminal(base, &empty));

    for s in 0..budget.max(2) {
        let k = if s == 0 {
            0
        } else {
            rng.random_range(0..=MAX_INDEX_SIZE)
        };
        let member = MAX_OBJECT_SIZE / k.max(1);
        let family: Vec<V::Obj> = (0..k).map(|_| base.sample_object(&mut rng, member)).collect();
        let x = if s == 1 {
            empty.clone()
        } else {
            base.sample_object(&mut rng, MAX_OBJECT_SIZE)
        };
        let cone = base.coproduct(&family);
        let id = format!("sample{s}");

        report.record(id.clone(), LAW_TERMINAL, terminal(base, &x));
        report.record(id.clone(), LAW_UNITORS, unitors(base, &x));
        report.record(
            format!("{id}.left"),
            LAW_DISTRIBUTIVE,
            distributive(base, &x, &cone, true),
        );
        report.record(
            format!("{id}.right"),
            LAW_DISTRIBUTIVE,
            distributive(base, &x, &cone, false),
        );
        for i in 0..k {
            for j in 0..k {
                report.record(
                    format!("{id}.inj({i},{j})"),
                    LAW_INJECTIONS,
                    injections(base, &cone, i, j),
                );
            }
        }
        if let Some(g) = base.sample_morphism(&mut rng, &x, &cone.apex) {
            report.record(id.clone(), LAW_DECOMPOSITION, decomposition(base, &cone, &g));
        }
        let target = base.sample_object(&mut rng, 3);
        let legs: Option<Vec<V::Mor>> = family
            .iter()
            .map(|a| base.sample_morphism(&mut rng, a, &target))
            .collect();
        if let Some(legs) = legs {
            report.record(id, LAW_COPRODUCT, coproduct_universal(base, &cone, &legs, &target));
        }
    }
    report
}

fn show(e: BaseError) -> String {
    e.to_string()
}

fn terminal<V: BaseCategory>(base: &V, x: &V::Obj) -> Result<(), String> {
    let maps = base.hom_set(x, &base.unit()).map_err(show)?;
    match maps.len() {
        1 => Ok(()),
        0 => Err(format!("no morphism {} -> unit", base.describe_obj(x))),
        n => Err(format!(
            "{n} morphisms {} -> unit; two of them differ {}",
            base.describe_obj(x),
            base.diff_witness(&maps[0], &maps[1])
        )),
    }
}

fn unitors<V: BaseCategory>(base: &V, x: &V::Obj) -> Result<(), String> {
    base.invert(&base.left_unitor(x))
        .map_err(|w| format!("left unitor: {w}"))?;
    base.invert(&base.right_unitor(x))
        .map_err(|w| format!("right unitor: {w}"))?;
    Ok(())
}

fn connected<V: BaseCategory>(base: &V, n: usize) -> Result<(), String> {
    let names: Vec<String> = (0..n).map(|i| format!("i{i}")).collect();
    let cone = base.copower_unit(&names);
    let elems = elements(base, &cone.apex).map_err(show)?;
    if elems.len() != n {
        return Err(format!("|Hom(1, {n}·1)| = {} instead of {n}", elems.len()));
    }
    for (i, inj) in cone.injections.iter().enumerate() {
        if !elems.contains(inj) {
            return Err(format!("injection {i} is not an element of {n}·1"));
        }
    }
    Ok(())
}

/// Canonical comparison `∐ (X ⊗ A_i) → X ⊗ ∐ A_i` (or with `X` on the right)
/// must be invertible.
fn distributive<V: BaseCategory>(base: &V, x: &V::Obj, cone: &CoproductCone<V>, left: bool) -> Result<(), String> {
    let id = base.identity(x);
    let (summands, legs): (Vec<V::Obj>, Vec<V::Mor>) = cone
        .summands
        .iter()
        .zip(&cone.injections)
        .map(|(a, inj)| {
            if left {
                (base.tensor(x, a), base.tensor_mor(&id, inj))
            } else {
                (base.tensor(a, x), base.tensor_mor(inj, &id))
            }
        })
        .unzip();
    let sum = base.coproduct(&summands);
    let target = if left {
        base.tensor(x, &cone.apex)
    } else {
        base.tensor(&cone.apex, x)
    };
    let comparison = base.copair(&sum, &legs, &target).map_err(show)?;
    base.invert(&comparison).map(|_| ())
}

/// `inj_i` and `inj_j` pull back to `A_i` for `i = j` and to `0` otherwise.
fn injections<V: BaseCategory>(base: &V, cone: &CoproductCone<V>, i: usize, j: usize) -> Result<(), String> {
    let (ii, ij) = (&cone.injections[i], &cone.injections[j]);
    let sq = if i == j {
        Square {
            top: base.identity(&cone.summands[i]),
            left: base.identity(&cone.summands[i]),
            right: ii.clone(),
            bottom: ii.clone(),
        }
    } else {
        let zero = base.coproduct(&[]);
        Square {
            top: base.copair(&zero, &[], &cone.summands[i]).map_err(show)?,
            left: base.copair(&zero, &[], &cone.summands[j]).map_err(show)?,
            right: ii.clone(),
            bottom: ij.clone(),
        }
    };
    let verdict = is_pullback_square(base, &sq).map_err(show)?;
    verdict.map_err(|w| format!("injection square ({i},{j}) is not a pullback: {w}"))
}

/// For `g: Y → ∐ A_i`, the pullbacks `P_i` of `g` along the injections
/// recover `Y = ∐ P_i`.
fn decomposition<V: BaseCategory>(base: &V, cone: &CoproductCone<V>, g: &V::Mor) -> Result<(), String> {
    let mut parts = Vec::with_capacity(cone.injections.len());
    let mut legs = Vec::with_capacity(cone.injections.len());
    for inj in &cone.injections {
        let p = base.pullback(inj, g).map_err(show)?;
        let verdict = is_pullback_square(base, &cone_square(&p)).map_err(show)?;
        verdict.map_err(|w| format!("computed pullback is not a pullback: {w}"))?;
        parts.push(p.apex.clone());
        legs.push(p.proj_right);
    }
    let sum = base.coproduct(&parts);
    let comparison = base.copair(&sum, &legs, &base.dom(g)).map_err(show)?;
    base.invert(&comparison)
        .map(|_| ())
        .map_err(|w| format!("∐ P_i -> Y is not invertible: {w}"))
}

/// The copair restricts to each leg, and is the only such map when the hom
/// set is small enough to enumerate.
fn coproduct_universal<V: BaseCategory>(
    base: &V,
    cone: &CoproductCone<V>,
    legs: &[V::Mor],
    target: &V::Obj,
) -> Result<(), String> {
    let m = base.copair(cone, legs, target).map_err(show)?;
    for (i, (inj, leg)) in cone.injections.iter().zip(legs).enumerate() {
        let restricted = base.compose(&m, inj).map_err(show)?;
        if &restricted != leg {
            return Err(format!(
                "copair restricted to summand {i} differs {}",
                base.diff_witness(&restricted, leg)
            ));
        }
    }
    let all = match base.hom_set(&cone.apex, target) {
        Ok(all) if all.len() <= 4096 => all,
        _ => return Ok(()),
    };
    let mut matching = Vec::new();
    for h in all {
        let mut ok = true;
        for (inj, leg) in cone.injections.iter().zip(legs) {
            if &base.compose(&h, inj).map_err(show)? != leg {
                ok = false;
                break;
            }
        }
        if ok {
            matching.push(h);
        }
    }
    match matching.len() {
        1 => Ok(()),
        0 => Err("no map out of the coproduct restricts to the legs".into()),
        n => Err(format!(
            "{n} maps out of the coproduct restrict to the legs; two differ {}",
            base.diff_witness(&matching[0], &matching[1])
        )),
    }
}
