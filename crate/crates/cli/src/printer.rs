//! Canonical text form of a document; `parse_syntax(print_spec(d))` gives `d`
//! back up to spans.

use std::fmt::Write;

use num_traits::{One, Signed};
use quivrel_core::Coeff;

use crate::ast::*;

fn names(ids: &[Ident]) -> String {
    ids.iter().map(|i| i.name.as_str()).collect::<Vec<_>>().join("*")
}

fn value(v: &Value) -> String {
    match v {
        Value::Finite(x) => x.to_string(),
        Value::Infinity => "inf".into(),
    }
}

fn cut(c: &CutDecl) -> String {
    format!("{} {}", if c.strict { "gt" } else { "ge" }, value(&c.value))
}

fn term_body(coeff: &Coeff, path: &[Ident]) -> String {
    if coeff.is_one() {
        names(path)
    } else {
        format!("{coeff}*{}", names(path))
    }
}

pub fn print_expr(r: &RelationExpr) -> String {
    let mut out = String::new();
    for (k, t) in r.terms.iter().enumerate() {
        let neg = t.coeff.is_negative();
        let body = term_body(&t.coeff.abs(), &t.path);
        match (k, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => write!(out, "-{body}").unwrap(),
            (_, false) => write!(out, " + {body}").unwrap(),
            (_, true) => write!(out, " - {body}").unwrap(),
        }
    }
    out
}

fn index_list(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
}

pub fn print_spec(doc: &SpecDocument) -> String {
    let mut out = String::new();
    if let Some(q) = &doc.quiver {
        let vs: Vec<&str> = q.vertices.iter().map(|v| v.name.as_str()).collect();
        let arrows: Vec<String> = q
            .arrows
            .iter()
            .map(|a| format!("{}: {} -> {}", a.name.name, a.source.name, a.target.name))
            .collect();
        if arrows.is_empty() {
            writeln!(out, "quiver {{\n  vertices: {};\n}}", vs.join(" ")).unwrap();
        } else {
            writeln!(
                out,
                "quiver {{\n  vertices: {};\n  arrows: {}\n}}",
                vs.join(" "),
                arrows.join(", ")
            )
            .unwrap();
        }
    }
    if !doc.relations.is_empty() {
        let rels: Vec<String> = doc.relations.iter().map(|r| format!("  {}", print_expr(r))).collect();
        writeln!(out, "relations {{\n{}\n}}", rels.join(";\n")).unwrap();
    }
    for p in &doc.point_relations {
        writeln!(
            out,
            "point_relation {{\n  through: {};\n  by: {}\n}}",
            p.through.name,
            names(&p.by)
        )
        .unwrap();
    }
    if let Some(l) = &doc.length {
        let monoid = match l.monoid {
            MonoidDecl::Nat => "nat".to_string(),
            MonoidDecl::Rational => "rational".to_string(),
            MonoidDecl::Truncated(n) => format!("truncated({n})"),
            MonoidDecl::NatInf => "natinf".to_string(),
            MonoidDecl::RationalInf => "rationalinf".to_string(),
        };
        let mut items = vec![format!("monoid: {monoid}")];
        match &l.assign {
            None => {}
            Some(AssignDecl::All(v)) => items.push(format!("assign: all = {}", value(v))),
            Some(AssignDecl::Each(xs)) => {
                let parts: Vec<String> = xs.iter().map(|(a, v)| format!("{} = {}", a.name, value(v))).collect();
                items.push(format!("assign: {}", parts.join(", ")));
            }
        }
        if let Some(c) = &l.cut {
            items.push(format!("cut: {}", cut(c)));
        }
        writeln!(out, "length {{\n  {}\n}}", items.join(";\n  ")).unwrap();
    }
    if let Some(m) = &doc.model {
        let kind = match &m.kind {
            KindDecl::RealLine => "realline".to_string(),
            KindDecl::Crossing => "crossing".to_string(),
            KindDecl::Circle(c) => format!("circle({c})"),
            KindDecl::Chain(c0, q) => format!("chain({c0}, {q})"),
            KindDecl::Wedge(c, n) => format!("wedge({c}, {})", n.map_or("inf".to_string(), |n| n.to_string())),
            KindDecl::Plane => "plane".to_string(),
            KindDecl::SemiQ => "semicts(q)".to_string(),
            KindDecl::SemiQPlus => "semicts(qplus)".to_string(),
        };
        let mut items = vec![format!("kind: {kind}")];
        match &m.points {
            None => {}
            Some(PointsDecl::Finite(xs)) => {
                let xs: Vec<String> = xs.iter().map(Coeff::to_string).collect();
                items.push(format!("points: {{{}}}", xs.join(", ")));
            }
            Some(PointsDecl::Multiples(r)) if r.is_one() => items.push("points: Z".into()),
            Some(PointsDecl::Multiples(r)) => items.push(format!("points: {r}*Z")),
        }
        if let Some(c) = &m.cut {
            items.push(format!("cut: {}", cut(c)));
        }
        if let Some(k) = &m.kupisch {
            let op = if k.keeps_boundary { "" } else { "lt " };
            items.push(format!("kupisch: {op}{}", k.value));
        }
        match &m.wedge_points {
            None => {}
            Some(WedgeDecl::All) => items.push("wedge_points: all".into()),
            Some(WedgeDecl::None) => items.push("wedge_points: none".into()),
            Some(WedgeDecl::Only(xs)) => items.push(format!("wedge_points: only {{{}}}", index_list(xs))),
            Some(WedgeDecl::AllExcept(xs)) => items.push(format!("wedge_points: all_except {{{}}}", index_list(xs))),
        }
        if m.appendix {
            items.push("appendix: on".into());
        }
        writeln!(out, "model {{\n  {}\n}}", items.join(";\n  ")).unwrap();
    }
    out
}
