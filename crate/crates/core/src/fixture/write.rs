//! Deterministic emission: sections grouped by kind in dependency order,
//! declaration order within a kind, keys sorted.

use std::fmt::Write as _;

use super::codec::{encode_category, FixtureBase};
use super::document::Document;
use super::syntax::{quote, Term, TermKind};

const WIDTH: usize = 96;

fn render(out: &mut String, key: &str, value: &Term) {
    let flat = value.to_string();
    match &value.kind {
        TermKind::List(items) if key.len() + flat.len() + 2 > WIDTH && !items.is_empty() => {
            let _ = writeln!(out, "{key}: [");
            for t in items {
                let _ = writeln!(out, "  {t},");
            }
            let _ = writeln!(out, "]");
        }
        _ => {
            let _ = writeln!(out, "{key}: {flat}");
        }
    }
}

fn section(out: &mut String, kind: &str, name: &str, mut entries: Vec<(&str, Term)>) {
    entries.sort_by(|a, b| a.0.cmp(b.0));
    let _ = writeln!(out, "\n[{kind} {}]", quote(name));
    for (k, v) in &entries {
        render(out, k, v);
    }
}

fn atom(s: &str) -> Term {
    Term::atom(s)
}

fn labels(xs: &[String]) -> Term {
    Term::list(xs.iter().map(|s| atom(s)).collect())
}

/// Renders `doc` in the fixture syntax. Every referenced cell must be
/// named in `doc`; the `add_*` methods guarantee this.
pub fn write_document<V: FixtureBase>(doc: &Document<V>) -> String {
    let v = &doc.base;
    let reg = &doc.registry;
    let mut out = String::new();
    let _ = writeln!(out, "base: {}", v.tag());
    for (name, c) in &reg.categories {
        section(&mut out, "category", name, encode_category(c));
    }
    for (name, c) in &doc.vcategories {
        let n = c.len();
        let lab = |x: usize| atom(c.label(x));
        let mut hom = Vec::new();
        let mut comp = Vec::new();
        for x in 0..n {
            for y in 0..n {
                hom.push(Term::pair(
                    Term::list(vec![lab(x), lab(y)]),
                    v.encode_obj(c.hom(x, y), reg),
                ));
                for z in 0..n {
                    comp.push(Term::pair(
                        Term::list(vec![lab(x), lab(y), lab(z)]),
                        v.encode_mor(c.composition(x, y, z), reg),
                    ));
                }
            }
        }
        let ident = (0..n)
            .map(|x| Term::pair(lab(x), v.encode_mor(c.identity(x), reg)))
            .collect();
        section(
            &mut out,
            "vcategory",
            name,
            vec![
                ("objects", labels(c.objects())),
                ("hom", Term::list(hom)),
                ("identity", Term::list(ident)),
                ("composition", Term::list(comp)),
            ],
        );
    }
    for (name, f) in &doc.vfunctors {
        let (s, t) = (&f.source, &f.target);
        let objects = (0..s.len())
            .map(|x| Term::pair(atom(s.label(x)), atom(t.label(f.map_object(x)))))
            .collect();
        let mut hom = Vec::new();
        for x in 0..s.len() {
            for y in 0..s.len() {
                hom.push(Term::pair(
                    Term::list(vec![atom(s.label(x)), atom(s.label(y))]),
                    v.encode_mor(f.hom_map(x, y), reg),
                ));
            }
        }
        section(
            &mut out,
            "vfunctor",
            name,
            vec![
                ("source", atom(doc.vcategory_name(s).expect("named source"))),
                ("target", atom(doc.vcategory_name(t).expect("named target"))),
                ("objects", Term::list(objects)),
                ("hom", Term::list(hom)),
            ],
        );
    }
    for (name, a) in &doc.vnats {
        let s = &a.source.source;
        let comps = (0..s.len())
            .map(|x| Term::pair(atom(s.label(x)), v.encode_mor(&a.components[x], reg)))
            .collect();
        section(
            &mut out,
            "vnat",
            name,
            vec![
                ("source", atom(doc.vfunctor_name(&a.source).expect("named source"))),
                ("target", atom(doc.vfunctor_name(&a.target).expect("named target"))),
                ("components", Term::list(comps)),
            ],
        );
    }
    for (name, p) in &doc.pseudofunctors {
        let b = &p.base;
        let fibers = (0..b.num_objects())
            .map(|o| {
                Term::pair(
                    atom(b.object_label(o)),
                    atom(doc.vcategory_name(&p.fibers[o]).expect("named fiber")),
                )
            })
            .collect();
        let functors = (0..b.num_arrows())
            .map(|f| {
                Term::pair(
                    atom(b.arrow_name(f)),
                    atom(doc.vfunctor_name(&p.functors[f]).expect("named functor")),
                )
            })
            .collect();
        let mut xi = Vec::new();
        for o in 0..b.num_objects() {
            for (x, m) in p.xi[o].iter().enumerate() {
                xi.push(Term::pair(
                    Term::list(vec![atom(b.object_label(o)), atom(p.fibers[o].label(x))]),
                    v.encode_mor(m, reg),
                ));
            }
        }
        let mut theta = Vec::new();
        for (&(f, g), comps) in &p.theta {
            let src = &p.fibers[b.arrow(f).dom];
            for (x, m) in comps.iter().enumerate() {
                theta.push(Term::pair(
                    Term::list(vec![atom(b.arrow_name(f)), atom(b.arrow_name(g)), atom(src.label(x))]),
                    v.encode_mor(m, reg),
                ));
            }
        }
        section(
            &mut out,
            "pseudofunctor",
            name,
            vec![
                ("base", atom(doc.category_name(b).expect("named base"))),
                ("fibers", Term::list(fibers)),
                ("functors", Term::list(functors)),
                ("xi", Term::list(xi)),
                ("theta", Term::list(theta)),
            ],
        );
    }
    for (name, t) in &doc.transformations {
        let b = &t.source.base;
        let comps = (0..b.num_objects())
            .map(|o| {
                Term::pair(
                    atom(b.object_label(o)),
                    atom(doc.vfunctor_name(&t.components[o]).expect("named component")),
                )
            })
            .collect();
        let mut squares = Vec::new();
        for f in 0..b.num_arrows() {
            let src = &t.source.fibers[b.arrow(f).dom];
            for (x, m) in t.squares[f].iter().enumerate() {
                squares.push(Term::pair(
                    Term::list(vec![atom(b.arrow_name(f)), atom(src.label(x))]),
                    v.encode_mor(m, reg),
                ));
            }
        }
        section(
            &mut out,
            "transformation",
            name,
            vec![
                ("source", atom(doc.pseudofunctor_name(&t.source).expect("named source"))),
                ("target", atom(doc.pseudofunctor_name(&t.target).expect("named target"))),
                ("components", Term::list(comps)),
                ("squares", Term::list(squares)),
            ],
        );
    }
    for (name, m) in &doc.modifications {
        let p = &m.source.source;
        let b = &p.base;
        let mut comps = Vec::new();
        for (o, cs) in m.components.iter().enumerate() {
            for (x, c) in cs.iter().enumerate() {
                comps.push(Term::pair(
                    Term::list(vec![atom(b.object_label(o)), atom(p.fibers[o].label(x))]),
                    v.encode_mor(c, reg),
                ));
            }
        }
        section(
            &mut out,
            "modification",
            name,
            vec![
                (
                    "source",
                    atom(doc.transformation_name(&m.source).expect("named source")),
                ),
                (
                    "target",
                    atom(doc.transformation_name(&m.target).expect("named target")),
                ),
                ("components", Term::list(comps)),
            ],
        );
    }
    for o in &doc.opfibrations {
        let of = &o.opfibration;
        let (e, bv) = (of.total(), of.base_category());
        let mut lifts = Vec::new();
        for (x, ls) in of.lifts().iter().enumerate() {
            for l in ls {
                lifts.push(Term::pair(
                    Term::list(vec![
                        atom(e.label(x)),
                        atom(bv.label(l.arrow.cod)),
                        v.encode_mor(&l.arrow.elem, reg),
                    ]),
                    Term::list(vec![atom(e.label(l.object)), v.encode_mor(&l.chi.elem, reg)]),
                ));
            }
        }
        let mut entries = vec![
            ("projection", atom(doc.vfunctor_name(&of.p).expect("named projection"))),
            ("lifts", Term::list(lifts)),
        ];
        if let Some(b) = &o.over {
            entries.push(("over", atom(doc.category_name(b).expect("named base"))));
        }
        section(&mut out, "opfibration", &o.name, entries);
    }
    out
}
