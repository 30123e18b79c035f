//! Random documents for round-trip testing.
#![allow(dead_code)]

use proptest::collection::vec;
use proptest::prelude::*;
use quivrel_cli::ast::*;
use quivrel_cli::parser::RESERVED;
use quivrel_core::{rat, Coeff};

fn id(name: String) -> Ident {
    Ident {
        name,
        span: Span::default(),
    }
}

fn name() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,4}'?".prop_filter("reserved", |s| !RESERVED.contains(&s.as_str()))
}

fn vertex_name() -> impl Strategy<Value = String> {
    prop_oneof![name(), (0u32..50).prop_map(|n| n.to_string())]
}

fn positive() -> impl Strategy<Value = Coeff> {
    (1i64..40, 1i64..9).prop_map(|(p, q)| rat(p, q))
}

fn nonneg() -> impl Strategy<Value = Coeff> {
    (0i64..40, 1i64..9).prop_map(|(p, q)| rat(p, q))
}

fn signed() -> impl Strategy<Value = Coeff> {
    (-40i64..40, 1i64..9).prop_map(|(p, q)| rat(p, q))
}

fn value() -> impl Strategy<Value = Value> {
    prop_oneof![4 => nonneg().prop_map(Value::Finite), 1 => Just(Value::Infinity)]
}

fn cut() -> impl Strategy<Value = CutDecl> {
    (any::<bool>(), value()).prop_map(|(strict, value)| CutDecl { strict, value })
}

fn path() -> impl Strategy<Value = Vec<Ident>> {
    vec(name().prop_map(id), 1..4)
}

fn expr() -> impl Strategy<Value = RelationExpr> {
    vec((signed(), path()), 1..4).prop_map(|terms| RelationExpr {
        terms: terms
            .into_iter()
            .map(|(coeff, path)| Term {
                coeff,
                path,
                span: Span::default(),
            })
            .collect(),
        span: Span::default(),
    })
}

fn quiver() -> impl Strategy<Value = QuiverDecl> {
    (
        vec(vertex_name(), 1..5),
        vec((name(), vertex_name(), vertex_name()), 0..5),
    )
        .prop_map(|(vs, arrows)| QuiverDecl {
            vertices: vs.into_iter().map(id).collect(),
            arrows: arrows
                .into_iter()
                .map(|(n, s, t)| ArrowDecl {
                    name: id(n),
                    source: id(s),
                    target: id(t),
                })
                .collect(),
            span: Span::default(),
        })
}

fn length() -> impl Strategy<Value = LengthDecl> {
    let monoid = prop_oneof![
        Just(MonoidDecl::Nat),
        Just(MonoidDecl::Rational),
        (0u64..20).prop_map(MonoidDecl::Truncated),
        Just(MonoidDecl::NatInf),
        Just(MonoidDecl::RationalInf),
    ];
    let assign = prop_oneof![
        value().prop_map(AssignDecl::All),
        vec((name().prop_map(id), value()), 1..4).prop_map(AssignDecl::Each),
    ];
    (monoid, proptest::option::of(assign), proptest::option::of(cut())).prop_map(|(monoid, assign, cut)| LengthDecl {
        monoid,
        assign,
        cut,
        span: Span::default(),
    })
}

fn model() -> impl Strategy<Value = ModelDecl> {
    let kind = prop_oneof![
        Just(KindDecl::RealLine),
        Just(KindDecl::Crossing),
        positive().prop_map(KindDecl::Circle),
        (positive(), positive()).prop_map(|(a, b)| KindDecl::Chain(a, b)),
        (positive(), proptest::option::of(0u64..10)).prop_map(|(c, n)| KindDecl::Wedge(c, n)),
        Just(KindDecl::Plane),
        Just(KindDecl::SemiQ),
        Just(KindDecl::SemiQPlus),
    ];
    let points = prop_oneof![
        vec(signed(), 0..4).prop_map(PointsDecl::Finite),
        positive().prop_map(PointsDecl::Multiples)
    ];
    let kupisch = (positive(), any::<bool>()).prop_map(|(value, keeps_boundary)| KupischDecl { value, keeps_boundary });
    let wedge = prop_oneof![
        Just(WedgeDecl::All),
        Just(WedgeDecl::None),
        vec(0u64..20, 0..4).prop_map(WedgeDecl::Only),
        vec(0u64..20, 0..4).prop_map(WedgeDecl::AllExcept),
    ];
    (
        kind,
        proptest::option::of(points),
        proptest::option::of(cut()),
        proptest::option::of(kupisch),
        proptest::option::of(wedge),
        any::<bool>(),
    )
        .prop_map(|(kind, points, cut, kupisch, wedge_points, appendix)| ModelDecl {
            kind,
            points,
            cut,
            kupisch,
            wedge_points,
            appendix,
            span: Span::default(),
        })
}

fn point_relation() -> impl Strategy<Value = PointRelationDecl> {
    (vertex_name(), path()).prop_map(|(v, by)| PointRelationDecl {
        through: id(v),
        by,
        span: Span::default(),
    })
}

/// Syntactically valid documents with spans cleared; identifiers need not
/// resolve.
pub fn document() -> impl Strategy<Value = SpecDocument> {
    let finite = (
        quiver(),
        vec(expr(), 0..4),
        vec(point_relation(), 0..3),
        proptest::option::of(length()),
    )
        .prop_map(|(q, relations, point_relations, length)| SpecDocument {
            quiver: Some(q),
            relations,
            point_relations,
            length,
            model: None,
        });
    let continuous = model().prop_map(|m| SpecDocument {
        model: Some(m),
        ..SpecDocument::default()
    });
    prop_oneof![3 => finite, 1 => continuous]
}

/// (file name, line, column) of each malformed fixture's first error.
pub const MALFORMED: &[(&str, &str, usize, usize)] = &[
    ("missing_target.quiv", "syntax", 4, 1),
    ("zero_denominator.quiv", "lexical", 6, 3),
    ("stray_character.quiv", "lexical", 3, 21),
    ("unknown_arrow.quiv", "resolution", 6, 5),
    ("unknown_vertex.quiv", "resolution", 3, 19),
    ("duplicate_vertex.quiv", "resolution", 2, 17),
    ("reserved_name.quiv", "resolution", 2, 13),
    ("unknown_model.quiv", "syntax", 2, 9),
    ("not_composable.quiv", "resolution", 6, 3),
    ("missing_section.quiv", "syntax", 5, 1),
    ("term_without_arrow.quiv", "syntax", 6, 3),
    ("missing_semicolon.quiv", "syntax", 4, 3),
];
