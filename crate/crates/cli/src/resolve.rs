//! Turns a parsed document into core objects.

use std::collections::BTreeSet;

use quivrel_core::continuous::{
    Circumferences, ContinuousModel, IndexSet, LengthCut, PointSet, RelationConfig, SemiVariant, WedgeRelations,
};
use quivrel_core::length::{Cut, Length, LengthAssignment, MonoidKind};
use quivrel_core::point::{point_relation, PointRelationSpec};
use quivrel_core::{Coeff, FiniteQuiver, LinComb, Path};

use crate::ast::*;
use crate::error::{ErrorKind, ParseError};
use crate::parser::RESERVED;

#[derive(Clone, Debug)]
pub struct ResolvedLength {
    pub monoid: MonoidKind,
    pub assignment: Option<LengthAssignment>,
    pub cut: Option<Cut>,
}

#[derive(Clone, Debug)]
pub struct FiniteSpec {
    pub quiver: FiniteQuiver,
    pub relations: Vec<LinComb>,
    pub points: Vec<PointRelationSpec>,
    pub length: Option<ResolvedLength>,
}

#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub model: ContinuousModel,
    pub config: RelationConfig,
}

#[derive(Clone, Debug)]
pub enum Resolved {
    Finite(FiniteSpec),
    Model(ModelSpec),
}

fn fail(span: Span, message: impl Into<String>) -> ParseError {
    ParseError::new(ErrorKind::Resolution, message, span, vec![])
}

pub fn resolve(doc: &SpecDocument) -> Result<Resolved, ParseError> {
    if let Some(q) = &doc.quiver {
        let quiver = resolve_quiver(q)?;
        let relations = resolve_relations(&quiver, &doc.relations)?;
        let points = resolve_points(&quiver, &doc.point_relations)?;
        let length = doc.length.as_ref().map(|l| resolve_length(&quiver, l)).transpose()?;
        return Ok(Resolved::Finite(FiniteSpec {
            quiver,
            relations,
            points,
            length,
        }));
    }
    let Some(m) = &doc.model else {
        return Err(fail(Span::default(), "missing `quiver` or `model` section"));
    };
    if let Some(r) = doc.relations.first() {
        return Err(fail(r.span, "relations need a `quiver` section"));
    }
    if let Some(p) = doc.point_relations.first() {
        return Err(fail(p.span, "point relations need a `quiver` section"));
    }
    if let Some(l) = &doc.length {
        return Err(fail(
            l.span,
            "a length section needs a `quiver` section; models take `cut` directly",
        ));
    }
    resolve_model(m).map(Resolved::Model)
}

/// Relations and point relations of a fragment, read on a given quiver.
pub fn resolve_fragment(quiver: &FiniteQuiver, doc: &SpecDocument) -> Result<Vec<LinComb>, ParseError> {
    if let Some(q) = &doc.quiver {
        let own = resolve_quiver(q)?;
        if own != *quiver {
            return Err(fail(q.span, "the quiver differs from the one being stacked on"));
        }
    }
    let mut gens = resolve_relations(quiver, &doc.relations)?;
    for p in resolve_points(quiver, &doc.point_relations)? {
        gens.extend(p.generators());
    }
    Ok(gens)
}

fn check_name(id: &Ident, what: &str) -> Result<(), ParseError> {
    if RESERVED.contains(&id.name.as_str()) {
        return Err(fail(
            id.span,
            format!("`{}` is a reserved word and cannot name a {what}", id.name),
        ));
    }
    Ok(())
}

fn resolve_quiver(q: &QuiverDecl) -> Result<FiniteQuiver, ParseError> {
    let mut seen = BTreeSet::new();
    for v in &q.vertices {
        check_name(v, "vertex")?;
        if !seen.insert(v.name.as_str()) {
            return Err(fail(v.span, format!("duplicate vertex `{}`", v.name)));
        }
    }
    let mut arrows = BTreeSet::new();
    for a in &q.arrows {
        check_name(&a.name, "arrow")?;
        if !arrows.insert(a.name.name.as_str()) {
            return Err(fail(a.name.span, format!("duplicate arrow `{}`", a.name.name)));
        }
        for end in [&a.source, &a.target] {
            if !seen.contains(end.name.as_str()) {
                return Err(fail(end.span, format!("unknown vertex `{}`", end.name)));
            }
        }
    }
    FiniteQuiver::new(
        q.vertices.iter().map(|v| v.name.clone()),
        q.arrows
            .iter()
            .map(|a| (a.name.name.clone(), a.source.name.clone(), a.target.name.clone())),
    )
    .map_err(|e| fail(q.span, e.to_string()))
}

fn resolve_path(q: &FiniteQuiver, names: &[Ident], span: Span) -> Result<Path, ParseError> {
    for id in names {
        if q.arrow(&id.name).is_none() {
            return Err(fail(id.span, format!("unknown arrow `{}`", id.name)));
        }
    }
    let refs: Vec<&str> = names.iter().map(|i| i.name.as_str()).collect();
    q.path_by_names(&refs).map_err(|e| fail(span, e.to_string()))
}

fn resolve_relations(q: &FiniteQuiver, rels: &[RelationExpr]) -> Result<Vec<LinComb>, ParseError> {
    let mut out = Vec::new();
    for r in rels {
        let mut terms = Vec::new();
        for t in &r.terms {
            terms.push((resolve_path(q, &t.path, t.span)?, t.coeff.clone()));
        }
        let (s, e) = (terms[0].0.source(), terms[0].0.target());
        if let Some((_, t)) = terms
            .iter()
            .zip(&r.terms)
            .find(|((p, _), _)| p.source() != s || p.target() != e)
        {
            return Err(fail(t.span, "terms of a relation must share source and target"));
        }
        let f = LinComb::from_terms(s, e, terms).map_err(|err| fail(r.span, err.to_string()))?;
        if f.is_zero() {
            return Err(fail(r.span, "relation is zero"));
        }
        out.push(f);
    }
    Ok(out)
}

fn resolve_points(q: &FiniteQuiver, decls: &[PointRelationDecl]) -> Result<Vec<PointRelationSpec>, ParseError> {
    decls
        .iter()
        .map(|d| {
            let z = q
                .vertex(&d.through.name)
                .ok_or_else(|| fail(d.through.span, format!("unknown vertex `{}`", d.through.name)))?;
            let f = resolve_path(q, &d.by, d.span)?;
            point_relation(q, &f, z).map_err(|e| fail(d.span, e.to_string()))
        })
        .collect()
}

fn length_value(v: &Value) -> Length {
    match v {
        Value::Finite(x) => Length::Finite(x.clone()),
        Value::Infinity => Length::Infinity,
    }
}

fn resolve_length(q: &FiniteQuiver, l: &LengthDecl) -> Result<ResolvedLength, ParseError> {
    let monoid = match l.monoid {
        MonoidDecl::Nat => MonoidKind::Nat,
        MonoidDecl::Rational => MonoidKind::NonNegRational,
        MonoidDecl::Truncated(n) => MonoidKind::TruncatedNat(n),
        MonoidDecl::NatInf => MonoidKind::NonSaturatingNatInf,
        MonoidDecl::RationalInf => MonoidKind::NonSaturatingRationalInf,
    };
    let assignment = match &l.assign {
        None => None,
        Some(AssignDecl::All(v)) => Some(
            LengthAssignment::constant(q.clone(), monoid.clone(), length_value(v))
                .map_err(|e| fail(l.span, e.to_string()))?,
        ),
        Some(AssignDecl::Each(items)) => {
            let mut lengths: Vec<Option<Length>> = vec![None; q.arrow_count()];
            for (id, v) in items {
                let a = q
                    .arrow(&id.name)
                    .ok_or_else(|| fail(id.span, format!("unknown arrow `{}`", id.name)))?;
                if lengths[a.0].replace(length_value(v)).is_some() {
                    return Err(fail(id.span, format!("arrow `{}` assigned twice", id.name)));
                }
            }
            let lengths = lengths
                .into_iter()
                .enumerate()
                .map(|(i, l)| l.ok_or(i))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|i| {
                    let name = &q.arrow_data(quivrel_core::ArrowId(i)).name;
                    fail(l.span, format!("arrow `{name}` has no length"))
                })?;
            Some(LengthAssignment::new(q.clone(), monoid.clone(), lengths).map_err(|e| fail(l.span, e.to_string()))?)
        }
    };
    let cut = match &l.cut {
        None => None,
        Some(c) => {
            if assignment.is_none() {
                return Err(fail(l.span, "a cut needs an `assign` item"));
            }
            Some(Cut::new(monoid.clone(), length_value(&c.value), c.strict).map_err(|e| fail(l.span, e.to_string()))?)
        }
    };
    Ok(ResolvedLength {
        monoid,
        assignment,
        cut,
    })
}

fn index_set(items: &[u64]) -> BTreeSet<usize> {
    items.iter().map(|&i| i as usize).collect()
}

fn resolve_model(m: &ModelDecl) -> Result<ModelSpec, ParseError> {
    let model = match &m.kind {
        KindDecl::RealLine => ContinuousModel::RealLine,
        KindDecl::Crossing => ContinuousModel::CrossingLines,
        KindDecl::Circle(c) => ContinuousModel::CyclicCircle { c: c.clone() },
        KindDecl::Chain(c0, q) => ContinuousModel::GluedCircleChain {
            c0: c0.clone(),
            q: q.clone(),
        },
        KindDecl::Wedge(c, n) => ContinuousModel::BigWedge {
            circumferences: Circumferences::Constant(c.clone()),
            index_set: n.map_or(IndexSet::Infinite, |n| IndexSet::Finite(n as usize)),
        },
        KindDecl::Plane => ContinuousModel::PlaneGrid,
        KindDecl::SemiQ => ContinuousModel::SemiContinuousInterval(SemiVariant::Q),
        KindDecl::SemiQPlus => ContinuousModel::SemiContinuousInterval(SemiVariant::QPlus),
    };
    let mut config = RelationConfig::empty();
    if let Some(p) = &m.points {
        config = config.with_points(match p {
            PointsDecl::Finite(xs) => PointSet::Finite(xs.iter().cloned().collect()),
            PointsDecl::Multiples(r) => PointSet::Progression(r.clone()),
        });
    }
    if let Some(c) = &m.cut {
        let Value::Finite(bound) = &c.value else {
            return Err(fail(m.span, "a model cut needs a finite length"));
        };
        config = config.with_cut(LengthCut::new(bound.clone(), c.strict).map_err(|e| fail(m.span, e.to_string()))?);
    }
    if let Some(k) = &m.kupisch {
        config = config.with_kupisch(k.value.clone());
        config.kupisch_keeps_boundary = k.keeps_boundary;
    }
    if let Some(w) = &m.wedge_points {
        config = config.with_wedge(match w {
            WedgeDecl::All => WedgeRelations::AllExcept(BTreeSet::new()),
            WedgeDecl::None => WedgeRelations::None,
            WedgeDecl::Only(s) => WedgeRelations::Only(index_set(s)),
            WedgeDecl::AllExcept(s) => WedgeRelations::AllExcept(index_set(s)),
        });
    }
    if m.appendix {
        config = config.with_appendix();
    }
    model.validate().map_err(|e| fail(m.span, e.to_string()))?;
    config.check_against(&model).map_err(|e| fail(m.span, e.to_string()))?;
    Ok(ModelSpec { model, config })
}

/// Parses a signed rational such as `-3/2`.
pub fn parse_signed(text: &str) -> Option<Coeff> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit() || c == '/') {
        return None;
    }
    let v: Coeff = body.parse().ok()?;
    Some(if neg { -v } else { v })
}
