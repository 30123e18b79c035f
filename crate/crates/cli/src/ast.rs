//! Syntax tree of a spec document.

use quivrel_core::Coeff;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Location {
    pub line: usize,
    pub column: usize,
    pub byte: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: Location,
    pub end: Location,
}

impl Span {
    pub fn to(self, other: Span) -> Span {
        Span {
            start: self.start,
            end: other.end,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: Ident,
    pub source: Ident,
    pub target: Ident,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverDecl {
    pub vertices: Vec<Ident>,
    pub arrows: Vec<ArrowDecl>,
    pub span: Span,
}

/// `coeff * names`, names read right to left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Coeff,
    pub path: Vec<Ident>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationExpr {
    pub terms: Vec<Term>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointRelationDecl {
    pub through: Ident,
    pub by: Vec<Ident>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidDecl {
    Nat,
    Rational,
    Truncated(u64),
    NatInf,
    RationalInf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Finite(Coeff),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssignDecl {
    All(Value),
    Each(Vec<(Ident, Value)>),
}

/// `gt v` puts `v` in the lower part; `ge v` puts it in the upper part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutDecl {
    pub strict: bool,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthDecl {
    pub monoid: MonoidDecl,
    pub assign: Option<AssignDecl>,
    pub cut: Option<CutDecl>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KindDecl {
    RealLine,
    Crossing,
    Circle(Coeff),
    Chain(Coeff, Coeff),
    /// Constant circumference and the number of circles, `None` for infinitely many.
    Wedge(Coeff, Option<u64>),
    Plane,
    SemiQ,
    SemiQPlus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointsDecl {
    Finite(Vec<Coeff>),
    Multiples(Coeff),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WedgeDecl {
    All,
    None,
    Only(Vec<u64>),
    AllExcept(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KupischDecl {
    pub value: Coeff,
    /// `lt a` kills paths of length exactly `a` as well.
    pub keeps_boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelDecl {
    pub kind: KindDecl,
    pub points: Option<PointsDecl>,
    pub cut: Option<CutDecl>,
    pub kupisch: Option<KupischDecl>,
    pub wedge_points: Option<WedgeDecl>,
    pub appendix: bool,
    pub span: Span,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecDocument {
    pub quiver: Option<QuiverDecl>,
    pub relations: Vec<RelationExpr>,
    pub point_relations: Vec<PointRelationDecl>,
    pub length: Option<LengthDecl>,
    pub model: Option<ModelDecl>,
}

impl SpecDocument {
    /// The same document with every span reset, for structural comparison.
    pub fn without_spans(&self) -> SpecDocument {
        let z = Span::default();
        let id = |i: &Ident| Ident {
            name: i.name.clone(),
            span: z,
        };
        SpecDocument {
            quiver: self.quiver.as_ref().map(|q| QuiverDecl {
                vertices: q.vertices.iter().map(id).collect(),
                arrows: q
                    .arrows
                    .iter()
                    .map(|a| ArrowDecl {
                        name: id(&a.name),
                        source: id(&a.source),
                        target: id(&a.target),
                    })
                    .collect(),
                span: z,
            }),
            relations: self
                .relations
                .iter()
                .map(|r| RelationExpr {
                    terms: r
                        .terms
                        .iter()
                        .map(|t| Term {
                            coeff: t.coeff.clone(),
                            path: t.path.iter().map(id).collect(),
                            span: z,
                        })
                        .collect(),
                    span: z,
                })
                .collect(),
            point_relations: self
                .point_relations
                .iter()
                .map(|p| PointRelationDecl {
                    through: id(&p.through),
                    by: p.by.iter().map(id).collect(),
                    span: z,
                })
                .collect(),
            length: self.length.as_ref().map(|l| LengthDecl {
                assign: l.assign.as_ref().map(|a| match a {
                    AssignDecl::All(v) => AssignDecl::All(v.clone()),
                    AssignDecl::Each(xs) => AssignDecl::Each(xs.iter().map(|(i, v)| (id(i), v.clone())).collect()),
                }),
                span: z,
                ..l.clone()
            }),
            model: self.model.as_ref().map(|m| ModelDecl { span: z, ..m.clone() }),
        }
    }
}
